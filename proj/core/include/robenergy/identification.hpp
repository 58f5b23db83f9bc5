#pragma once

#include <optional>
#include <string>
#include <vector>

#include "robenergy/energy.hpp"
#include "robenergy/model.hpp"

namespace robenergy {

/// A joint pose held at rest plus the mean electrical power measured there.
struct StaticPoseMeasurement {
  VecX q;                      // rad
  double measured_power = 0.0;  // W, must be finite and > 0
  std::string label;            // optional free-text pose name
};

enum class IdentificationMethod { method1, method2 };

const char* to_string(IdentificationMethod method);

struct IdentificationResult {
  ElectricalParams params;
  IdentificationMethod method = IdentificationMethod::method1;
  VecX residuals;       // measured - predicted, W, one per pose
  double rms_residual = 0.0;  // W
  std::optional<double> r_squared;       // method2 only
  std::optional<double> regressor_ratio; // max/min of ||G(q)||^2, advisory, method2 only
  int n_poses = 0;
  std::vector<std::string> warnings;
};

/// Method 1: p_overhead is the mean of the measured powers, r_kt2 = 0.
IdentificationResult identify_method1(const std::vector<StaticPoseMeasurement>& measurements);

/// Method 2: ordinary least squares of measured power against
/// [||G(q)||^2, 1]; the slope is r_kt2 and the intercept p_overhead. The
/// regressor is the squared Euclidean norm of the gravity torque vector,
/// which is tau'tau of the power model at rest. Negative fitted parameters
/// are returned as-is with a warning, never clamped.
///
/// Throws InputError for fewer than 2 measurements and NumericalError when
/// all regressor values coincide (rank-deficient design matrix).
IdentificationResult identify_method2(const std::vector<StaticPoseMeasurement>& measurements,
                                      const RobotModel& model);

/// p_overhead + r_kt2 * ||G(q)||^2, W.
double predict_static_power(const VecX& q, const RobotModel& model,
                            const ElectricalParams& params);

/// Per-pose regression table as CSV: label,g_norm_sq,measured_w,predicted_w,
/// residual_w (data behind a scatter + fit-line plot). Empty labels become
/// pose_0..pose_{n-1}.
std::string identification_report_csv(const IdentificationResult& result,
                                      const std::vector<StaticPoseMeasurement>& measurements,
                                      const RobotModel& model);

// Measurement CSV: header label,q_1,...,q_n,power_w.
std::vector<StaticPoseMeasurement> parse_measurements_csv(
    const std::string& text, const std::string& source_name = "<string>");
std::vector<StaticPoseMeasurement> load_measurements_csv(const std::string& path);

// Parameter file (JSON): fields method, r_kt2, p_overhead and optionally
// rms_residual, r_squared, n_poses, warnings.
std::string params_to_json(const IdentificationResult& result);
ElectricalParams parse_params_json(const std::string& text,
                                   const std::string& source_name = "<string>");
ElectricalParams load_params_json(const std::string& path);

}  // namespace robenergy
