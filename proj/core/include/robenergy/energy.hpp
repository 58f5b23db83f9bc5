#pragma once

#include <optional>
#include <string>
#include <vector>

#include "robenergy/dynamics.hpp"
#include "robenergy/trajectory.hpp"

namespace robenergy {

/// Per-motor constants of the detailed DC motor model. The inductance is
/// stored for completeness but unused: the simplified voltage equation drops
/// the L*di/dt transient.
struct MotorConstants {
  VecX kt;    // torque constants, N*m/A, > 0
  VecX kemf;  // back-EMF constants, V*s/rad
  VecX r;     // winding resistances, ohm, >= 0
  VecX l;     // inductances, H, >= 0
};

/// The two identified parameters of the simplified power model
///   p = tau'*qd + r_kt2 * tau'*tau + p_overhead,
/// with one lumped electrical scalar shared by every joint.
struct ElectricalParams {
  double r_kt2 = 0.0;       // W/(N*m)^2
  double p_overhead = 0.0;  // W
};

enum class IntegrationRule { left_riemann, trapezoid };

const char* to_string(IntegrationRule rule);
std::optional<IntegrationRule> integration_rule_from_string(const std::string& text);

/// Instantaneous power split into its three model terms. total is the exact
/// sum of the components by construction; mechanical may be negative while
/// the arm is back-driven.
struct PowerBreakdown {
  double t = 0.0;         // s
  double mechanical = 0.0;  // W, tau'*qd
  double joule = 0.0;       // W, r_kt2 * tau'*tau, >= 0
  double overhead = 0.0;    // W, >= 0
  double total = 0.0;       // W
};

struct EnergyReport {
  double total_energy = 0.0;       // J
  double mechanical_energy = 0.0;  // J
  double joule_energy = 0.0;       // J
  double overhead_energy = 0.0;    // J
  double duration = 0.0;           // s
  double overhead_fraction = 0.0;  // clamped into [0,1]; 0 when total <= 0
  IntegrationRule integration_rule = IntegrationRule::left_riemann;
};

/// i = tau / kt element-wise, A.
VecX motor_current(const VecX& tau, const MotorConstants& constants);

/// v = kemf*qd + r*tau/kt element-wise, V (inductance term dropped).
VecX motor_voltage(const VecX& tau, const VecX& qd, const MotorConstants& constants);

/// p = i'v, W.
double electrical_power(const VecX& current, const VecX& voltage);

/// Evaluates the simplified power model at one sample.
PowerBreakdown instantaneous_power(const VecX& tau, const VecX& qd,
                                   const ElectricalParams& params, double t = 0.0);

/// Runs inverse dynamics at every sample and evaluates the power model;
/// timestamps are preserved. Requires derivatives present (derive_missing
/// fills them) and a non-empty trajectory.
std::vector<PowerBreakdown> power_profile(const Trajectory& traj,
                                          const RobotModel& model,
                                          const ElectricalParams& params);

/// Integrates a power profile into energies. left_riemann weighs sample i by
/// t_{i+1} - t_i (the last sample carries no weight); trapezoid averages
/// neighbouring samples. Components are integrated with the same rule and
/// summation order is fixed, so results are deterministic.
EnergyReport trajectory_energy(const std::vector<PowerBreakdown>& profile,
                               IntegrationRule rule = IntegrationRule::left_riemann);

/// power_profile followed by trajectory_energy.
EnergyReport energy_of_trajectory(const Trajectory& traj, const RobotModel& model,
                                  const ElectricalParams& params,
                                  IntegrationRule rule = IntegrationRule::left_riemann);

/// CSV with header t,mechanical,joule,overhead,total (plot-ready power-over-
/// time data), 17 significant digits.
std::string power_profile_to_csv(const std::vector<PowerBreakdown>& profile);

std::string energy_report_to_json(const EnergyReport& report);

/// Central finite-difference estimate of dE/ds for the time-scaled
/// trajectory, evaluated at steps h = 1e-4*s and h/2. The two estimates must
/// agree within 1e-4 relative for the result to be flagged consistent.
struct ScaleGradient {
  double gradient = 0.0;  // the finer-step estimate
  double coarse = 0.0;    // step h
  double fine = 0.0;      // step h/2
  double rel_disagreement = 0.0;
  bool consistent = false;
};

ScaleGradient energy_gradient_wrt_scale(const Trajectory& traj, const RobotModel& model,
                                        const ElectricalParams& params, double scale,
                                        IntegrationRule rule = IntegrationRule::left_riemann);

struct TimeScaleOptimum {
  double scale = 1.0;
  EnergyReport report;
};

/// Golden-section search minimizing total trajectory energy over the scale
/// interval [s_min, s_max], interval tolerance 1e-4*(s_max - s_min). Returns
/// an endpoint when the objective is monotone.
TimeScaleOptimum optimal_time_scale(const Trajectory& traj, const RobotModel& model,
                                    const ElectricalParams& params, double s_min,
                                    double s_max,
                                    IntegrationRule rule = IntegrationRule::left_riemann);

}  // namespace robenergy
