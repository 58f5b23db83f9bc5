#include "robenergy/energy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <nlohmann/json.hpp>

#include "robenergy/errors.hpp"

namespace robenergy {

namespace {

using json = nlohmann::ordered_json;

std::string format_double(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

void check_motor_constants(const MotorConstants& constants, Eigen::Index n) {
  if (constants.kt.size() != n)
    throw InputError("motor constants cover " + std::to_string(constants.kt.size()) +
                     " motors, expected " + std::to_string(n));
  if ((constants.kt.array() <= 0.0).any())
    throw InputError("torque constants must be positive");
}

}  // namespace

const char* to_string(IntegrationRule rule) {
  return rule == IntegrationRule::left_riemann ? "left_riemann" : "trapezoid";
}

std::optional<IntegrationRule> integration_rule_from_string(const std::string& text) {
  if (text == "left_riemann" || text == "left-riemann") return IntegrationRule::left_riemann;
  if (text == "trapezoid") return IntegrationRule::trapezoid;
  return std::nullopt;
}

VecX motor_current(const VecX& tau, const MotorConstants& constants) {
  check_motor_constants(constants, tau.size());
  return tau.cwiseQuotient(constants.kt);
}

VecX motor_voltage(const VecX& tau, const VecX& qd, const MotorConstants& constants) {
  check_motor_constants(constants, tau.size());
  if (qd.size() != tau.size())
    throw InputError("motor_voltage: tau and qd dimensions differ");
  if (constants.kemf.size() != tau.size() || constants.r.size() != tau.size())
    throw InputError("motor_voltage: constants dimensions differ from tau");
  return constants.kemf.cwiseProduct(qd) + constants.r.cwiseProduct(tau.cwiseQuotient(constants.kt));
}

double electrical_power(const VecX& current, const VecX& voltage) {
  if (current.size() != voltage.size())
    throw InputError("electrical_power: current has " + std::to_string(current.size()) +
                     " entries, voltage has " + std::to_string(voltage.size()));
  return current.dot(voltage);
}

PowerBreakdown instantaneous_power(const VecX& tau, const VecX& qd,
                                   const ElectricalParams& params, double t) {
  if (tau.size() != qd.size())
    throw InputError("instantaneous_power: tau has " + std::to_string(tau.size()) +
                     " entries, qd has " + std::to_string(qd.size()));
  if (!tau.allFinite() || !qd.allFinite())
    throw InputError("instantaneous_power: non-finite input");

  PowerBreakdown p;
  p.t = t;
  p.mechanical = tau.dot(qd);
  p.joule = params.r_kt2 * tau.squaredNorm();
  p.overhead = params.p_overhead;
  p.total = p.mechanical + p.joule + p.overhead;
  return p;
}

std::vector<PowerBreakdown> power_profile(const Trajectory& traj, const RobotModel& model,
                                          const ElectricalParams& params) {
  if (traj.empty()) throw InputError("power_profile: empty trajectory");
  if (traj.dof() != model.dof())
    throw InputError("power_profile: trajectory has " + std::to_string(traj.dof()) +
                     " DOF, model has " + std::to_string(model.dof()));
  if (!traj.has_velocity() || !traj.has_acceleration())
    throw InputError("power_profile requires velocities and accelerations; "
                     "run derive_missing first");

  std::vector<PowerBreakdown> profile;
  profile.reserve(traj.size());
  for (const TrajectoryPoint& point : traj.points()) {
    const VecX tau = rnea(model, {point.q, point.qd, point.qdd});
    profile.push_back(instantaneous_power(tau, point.qd, params, point.t));
  }
  return profile;
}

EnergyReport trajectory_energy(const std::vector<PowerBreakdown>& profile,
                               IntegrationRule rule) {
  if (profile.empty()) throw InputError("trajectory_energy: empty power profile");
  for (std::size_t i = 1; i < profile.size(); ++i) {
    if (profile[i].t <= profile[i - 1].t)
      throw InputError("trajectory_energy: non-monotonic timestamp at sample " +
                       std::to_string(i));
  }

  EnergyReport report;
  report.integration_rule = rule;
  report.duration = profile.size() < 2 ? 0.0 : profile.back().t - profile.front().t;

  // fixed left-to-right summation order keeps results deterministic
  for (std::size_t i = 0; i + 1 < profile.size(); ++i) {
    const double dt = profile[i + 1].t - profile[i].t;
    if (rule == IntegrationRule::left_riemann) {
      report.mechanical_energy += profile[i].mechanical * dt;
      report.joule_energy += profile[i].joule * dt;
      report.overhead_energy += profile[i].overhead * dt;
    } else {
      report.mechanical_energy += 0.5 * (profile[i].mechanical + profile[i + 1].mechanical) * dt;
      report.joule_energy += 0.5 * (profile[i].joule + profile[i + 1].joule) * dt;
      report.overhead_energy += 0.5 * (profile[i].overhead + profile[i + 1].overhead) * dt;
    }
  }
  report.total_energy = report.mechanical_energy + report.joule_energy + report.overhead_energy;
  report.overhead_fraction =
      report.total_energy > 0.0
          ? std::clamp(report.overhead_energy / report.total_energy, 0.0, 1.0)
          : 0.0;
  return report;
}

EnergyReport energy_of_trajectory(const Trajectory& traj, const RobotModel& model,
                                  const ElectricalParams& params, IntegrationRule rule) {
  return trajectory_energy(power_profile(traj, model, params), rule);
}

std::string power_profile_to_csv(const std::vector<PowerBreakdown>& profile) {
  std::ostringstream out;
  out << "t,mechanical,joule,overhead,total\n";
  for (const PowerBreakdown& p : profile) {
    out << format_double(p.t) << "," << format_double(p.mechanical) << ","
        << format_double(p.joule) << "," << format_double(p.overhead) << ","
        << format_double(p.total) << "\n";
  }
  return out.str();
}

std::string energy_report_to_json(const EnergyReport& report) {
  json doc;
  doc["total_j"] = report.total_energy;
  doc["mechanical_j"] = report.mechanical_energy;
  doc["joule_j"] = report.joule_energy;
  doc["overhead_j"] = report.overhead_energy;
  doc["duration_s"] = report.duration;
  doc["overhead_fraction"] = report.overhead_fraction;
  doc["rule"] = to_string(report.integration_rule);
  return doc.dump(2) + "\n";
}

ScaleGradient energy_gradient_wrt_scale(const Trajectory& traj, const RobotModel& model,
                                        const ElectricalParams& params, double scale,
                                        IntegrationRule rule) {
  if (!(scale > 0.0)) throw InputError("scale must be positive");

  const auto energy_at = [&](double s) {
    return energy_of_trajectory(time_scale(traj, s), model, params, rule).total_energy;
  };

  ScaleGradient result;
  const double h = 1e-4 * scale;
  result.coarse = (energy_at(scale + h) - energy_at(scale - h)) / (2.0 * h);
  result.fine = (energy_at(scale + 0.5 * h) - energy_at(scale - 0.5 * h)) / h;
  result.gradient = result.fine;

  const double denom = std::max(std::abs(result.coarse), std::abs(result.fine));
  result.rel_disagreement = denom > 0.0 ? std::abs(result.coarse - result.fine) / denom : 0.0;
  result.consistent = result.rel_disagreement <= 1e-4;
  return result;
}

TimeScaleOptimum optimal_time_scale(const Trajectory& traj, const RobotModel& model,
                                    const ElectricalParams& params, double s_min, double s_max,
                                    IntegrationRule rule) {
  if (!(s_min > 0.0) || !(s_max > s_min))
    throw InputError("optimal_time_scale: require 0 < s_min < s_max");

  const auto energy_at = [&](double s) {
    return energy_of_trajectory(time_scale(traj, s), model, params, rule).total_energy;
  };

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  const double tol = 1e-4 * (s_max - s_min);
  double a = s_min, b = s_max;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = energy_at(x1), f2 = energy_at(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      b = x2, x2 = x1, f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = energy_at(x1);
    } else {
      a = x1, x1 = x2, f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = energy_at(x2);
    }
  }

  // compare against the interval endpoints so a monotone objective returns one
  double best = 0.5 * (a + b);
  double best_f = energy_at(best);
  for (double s : {s_min, s_max}) {
    const double f = energy_at(s);
    if (f < best_f) {
      best = s;
      best_f = f;
    }
  }
  return {best, energy_of_trajectory(time_scale(traj, best), model, params, rule)};
}

}  // namespace robenergy
