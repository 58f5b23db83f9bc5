#include "robenergy/identification.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
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

double rms(const VecX& v) { return v.size() ? std::sqrt(v.squaredNorm() / v.size()) : 0.0; }

std::string pose_label(const StaticPoseMeasurement& m, std::size_t index) {
  return m.label.empty() ? "pose_" + std::to_string(index) : m.label;
}

void check_measurements(const std::vector<StaticPoseMeasurement>& measurements) {
  for (std::size_t i = 0; i < measurements.size(); ++i) {
    const auto& m = measurements[i];
    if (!std::isfinite(m.measured_power) || m.measured_power <= 0.0)
      throw InputError("measurement '" + pose_label(m, i) +
                       "' has non-positive power (a powered-on robot draws positive power)");
  }
}

VecX regressor_values(const std::vector<StaticPoseMeasurement>& measurements,
                      const RobotModel& model) {
  VecX x(measurements.size());
  for (std::size_t i = 0; i < measurements.size(); ++i) {
    if (measurements[i].q.size() != model.dof())
      throw InputError("measurement '" + pose_label(measurements[i], i) + "' has " +
                       std::to_string(measurements[i].q.size()) + " joint values, model has " +
                       std::to_string(model.dof()) + " DOF");
    x[i] = gravity_torque(model, measurements[i].q).squaredNorm();
  }
  return x;
}

}  // namespace

const char* to_string(IdentificationMethod method) {
  return method == IdentificationMethod::method1 ? "method1" : "method2";
}

IdentificationResult identify_method1(const std::vector<StaticPoseMeasurement>& measurements) {
  if (measurements.empty()) throw InputError("identify_method1 needs at least one measurement");
  check_measurements(measurements);

  const std::size_t n = measurements.size();
  VecX power(n);
  for (std::size_t i = 0; i < n; ++i) power[i] = measurements[i].measured_power;

  // mean over a sorted copy, so shuffling the measurement list cannot change
  // the result even in the last bit
  std::vector<double> sorted(power.begin(), power.end());
  std::sort(sorted.begin(), sorted.end());
  double sum = 0.0;
  for (double value : sorted) sum += value;

  IdentificationResult result;
  result.method = IdentificationMethod::method1;
  result.n_poses = static_cast<int>(n);
  result.params = {0.0, sum / static_cast<double>(n)};
  result.residuals = power.array() - result.params.p_overhead;
  result.rms_residual = rms(result.residuals);
  return result;
}

IdentificationResult identify_method2(const std::vector<StaticPoseMeasurement>& measurements,
                                      const RobotModel& model) {
  if (measurements.size() < 2)
    throw NumericalError("degenerate regression: identify_method2 needs at least 2 "
                         "measurements, got " +
                         std::to_string(measurements.size()));
  check_measurements(measurements);

  const std::size_t n = measurements.size();
  const VecX x = regressor_values(measurements, model);
  VecX power(n);
  for (std::size_t i = 0; i < n; ++i) power[i] = measurements[i].measured_power;

  const double x_max = x.maxCoeff(), x_min = x.minCoeff();
  if (x_max - x_min <= 1e-9 * std::max(1.0, std::abs(x_max)))
    throw NumericalError(
        "degenerate regression: the gravity-torque regressor ||G(q)||^2 is constant (" +
        format_double(x_max) + " N^2m^2) across all poses; vary the poses");

  MatX design(n, 2);
  design.col(0) = x;
  design.col(1).setOnes();
  const Eigen::Vector2d beta = design.colPivHouseholderQr().solve(power);

  IdentificationResult result;
  result.method = IdentificationMethod::method2;
  result.n_poses = static_cast<int>(n);
  result.params = {beta[0], beta[1]};
  result.residuals = power - design * beta;
  result.rms_residual = rms(result.residuals);

  const double ss_res = result.residuals.squaredNorm();
  const double ss_tot = (power.array() - power.mean()).matrix().squaredNorm();
  result.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : (ss_res == 0.0 ? 1.0 : 0.0);
  result.regressor_ratio = x_min > 0.0 ? std::optional<double>(x_max / x_min) : std::nullopt;

  if (beta[0] < 0.0)
    result.warnings.push_back("fitted r_kt2 is negative (" + format_double(beta[0]) +
                              " W/(N*m)^2); reported as-is, not clamped");
  if (beta[1] < 0.0)
    result.warnings.push_back("fitted p_overhead is negative (" + format_double(beta[1]) +
                              " W); reported as-is, not clamped");
  return result;
}

double predict_static_power(const VecX& q, const RobotModel& model,
                            const ElectricalParams& params) {
  if (q.size() != model.dof())
    throw InputError("predict_static_power: q has " + std::to_string(q.size()) +
                     " entries, model has " + std::to_string(model.dof()) + " DOF");
  return params.p_overhead + params.r_kt2 * gravity_torque(model, q).squaredNorm();
}

std::string identification_report_csv(const IdentificationResult& result,
                                      const std::vector<StaticPoseMeasurement>& measurements,
                                      const RobotModel& model) {
  std::ostringstream out;
  out << "label,g_norm_sq,measured_w,predicted_w,residual_w\n";
  for (std::size_t i = 0; i < measurements.size(); ++i) {
    const auto& m = measurements[i];
    const double x = gravity_torque(model, m.q).squaredNorm();
    const double predicted = result.params.p_overhead + result.params.r_kt2 * x;
    out << pose_label(m, i) << "," << format_double(x) << ","
        << format_double(m.measured_power) << "," << format_double(predicted) << ","
        << format_double(m.measured_power - predicted) << "\n";
  }
  return out.str();
}

std::vector<StaticPoseMeasurement> parse_measurements_csv(const std::string& text,
                                                          const std::string& source_name) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw ParseError(source_name, 1, "empty measurement file");
  if (!line.empty() && line.back() == '\r') line.pop_back();

  std::vector<std::string> header;
  {
    std::istringstream hs(line);
    std::string cell;
    while (std::getline(hs, cell, ',')) header.push_back(cell);
  }
  if (header.size() < 3 || header.front() != "label" || header.back() != "power_w")
    throw ParseError(source_name, 1, "header must be label,q_1,...,q_n,power_w");
  const std::size_t dof = header.size() - 2;
  for (std::size_t i = 0; i < dof; ++i) {
    if (header[1 + i] != "q_" + std::to_string(i + 1))
      throw ParseError(source_name, 1, "unexpected header column \"" + header[1 + i] + "\"");
  }

  const auto parse_cell = [&](const std::string& cell, int line_no) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc() || ptr != cell.data() + cell.size())
      throw ParseError(source_name, line_no, "cannot parse number from \"" + cell + "\"");
    return value;
  };

  std::vector<StaticPoseMeasurement> measurements;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (line.back() == ',') cells.push_back("");
    if (cells.size() != header.size())
      throw ParseError(source_name, line_no,
                       "row has " + std::to_string(cells.size()) + " cells, expected " +
                           std::to_string(header.size()));

    StaticPoseMeasurement m;
    m.label = cells[0];
    m.q.resize(dof);
    for (std::size_t i = 0; i < dof; ++i) m.q[i] = parse_cell(cells[1 + i], line_no);
    m.measured_power = parse_cell(cells.back(), line_no);
    measurements.push_back(std::move(m));
  }
  if (measurements.empty()) throw ParseError(source_name, line_no, "no measurements");
  return measurements;
}

std::vector<StaticPoseMeasurement> load_measurements_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open measurement file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_measurements_csv(buffer.str(), path);
}

std::string params_to_json(const IdentificationResult& result) {
  json doc;
  doc["method"] = to_string(result.method);
  doc["r_kt2"] = result.params.r_kt2;
  doc["p_overhead"] = result.params.p_overhead;
  doc["rms_residual"] = result.rms_residual;
  if (result.r_squared) doc["r_squared"] = *result.r_squared;
  if (result.regressor_ratio) doc["regressor_ratio"] = *result.regressor_ratio;
  doc["n_poses"] = result.n_poses;
  if (!result.warnings.empty()) doc["warnings"] = result.warnings;
  return doc.dump(2) + "\n";
}

ElectricalParams parse_params_json(const std::string& text, const std::string& source_name) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(source_name, 0, std::string("malformed JSON: ") + e.what());
  }
  if (!doc.contains("r_kt2") || !doc.contains("p_overhead"))
    throw ParseError(source_name, 0, "parameter file needs fields r_kt2 and p_overhead");
  try {
    return {doc["r_kt2"].get<double>(), doc["p_overhead"].get<double>()};
  } catch (const json::exception& e) {
    throw ParseError(source_name, 0, e.what());
  }
}

ElectricalParams load_params_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open parameter file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_params_json(buffer.str(), path);
}

}  // namespace robenergy
