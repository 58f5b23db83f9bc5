// robenergy command-line front end: identify electrical parameters from
// static-pose measurements, estimate trajectory energy, compare parameter
// sets against measured energy, sweep execution speeds, and check energy
// gradients. Exit codes: 0 success, 1 input error, 2 numerical/degeneracy
// error.

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "robenergy/energy.hpp"
#include "robenergy/errors.hpp"
#include "robenergy/identification.hpp"
#include "robenergy/report.hpp"
#include "robenergy/trajectory.hpp"
#include "robenergy/urdf.hpp"
#include "robenergy/version.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace robenergy;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write file '" + path.string() + "'");
  out << content;
}

fs::path prepare_out_dir(const std::string& out) {
  fs::path dir(out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw InputError("cannot create output directory '" + out + "': " + ec.message());
  return dir;
}

IntegrationRule parse_rule(const std::string& text) {
  auto rule = integration_rule_from_string(text);
  if (!rule)
    throw InputError("unknown integration rule '" + text +
                     "' (expected left-riemann or trapezoid)");
  return *rule;
}

Trajectory load_trajectory(const std::string& path) {
  if (fs::path(path).extension() == ".json") return parse_trajectory_json(read_file(path));
  return parse_trajectory_csv(read_file(path), path);
}

// Loads, fills missing derivatives, and applies the time scale.
Trajectory load_prepared_trajectory(const std::string& path, const RobotModel& model,
                                    double scale) {
  Trajectory traj = load_trajectory(path);
  if (traj.dof() != model.dof())
    throw InputError("DOF mismatch: trajectory '" + path + "' has " +
                     std::to_string(traj.dof()) + " DOF, URDF model has " +
                     std::to_string(model.dof()) + " DOF");
  if (!traj.has_velocity() || !traj.has_acceleration()) traj = derive_missing(traj);
  if (scale != 1.0) traj = time_scale(traj, scale);
  return traj;
}

struct CommandContext {
  std::string urdf_path;
  std::string trajectory_path;
  std::string params_path;
  std::string rule_text = "left-riemann";
  double scale = 1.0;
  std::string out;
  bool json_only = false;
};

int cmd_identify(const std::string& urdf_path, const std::string& measurements_path, int method,
                 const std::string& out) {
  const RobotModel model = load_urdf_file(urdf_path);
  const auto measurements = load_measurements_csv(measurements_path);

  const IdentificationResult result = method == 1 ? identify_method1(measurements)
                                                  : identify_method2(measurements, model);
  const std::string params_json = params_to_json(result);
  const std::string regression_csv = identification_report_csv(result, measurements, model);

  std::cout << params_json;
  if (!out.empty()) {
    const fs::path dir = prepare_out_dir(out);
    write_file(dir / "params.json", params_json);
    write_file(dir / "identification_report.csv", regression_csv);
  }
  return 0;
}

int cmd_estimate(const CommandContext& ctx, std::optional<double> measured) {
  const IntegrationRule rule = parse_rule(ctx.rule_text);
  const RobotModel model = load_urdf_file(ctx.urdf_path);
  const ElectricalParams params = load_params_json(ctx.params_path);
  const Trajectory traj = load_prepared_trajectory(ctx.trajectory_path, model, ctx.scale);

  const auto profile = power_profile(traj, model, params);
  RunReport report;
  report.command = "estimate";
  report.inputs = {hash_file(ctx.urdf_path), hash_file(ctx.trajectory_path),
                   hash_file(ctx.params_path)};
  report.params = params;
  report.rule = rule;
  report.scale = ctx.scale;
  report.energy = trajectory_energy(profile, rule);
  if (measured) {
    if (*measured <= 0.0) throw InputError("--measured energy must be positive");
    report.comparison =
        Comparison{*measured, deviation_pct(report.energy->total_energy, *measured)};
  }

  std::cout << run_report_to_json(report);
  if (!ctx.out.empty()) {
    const fs::path dir = prepare_out_dir(ctx.out);
    write_file(dir / "report.json", run_report_to_json(report));
    write_file(dir / "power_profile.csv", power_profile_to_csv(profile));
  }
  return 0;
}

int cmd_compare(const CommandContext& ctx, const std::string& params2_path,
                std::optional<double> measured, std::optional<double> measured_duration,
                std::string label) {
  const IntegrationRule rule = parse_rule(ctx.rule_text);
  const RobotModel model = load_urdf_file(ctx.urdf_path);
  const Trajectory traj = load_prepared_trajectory(ctx.trajectory_path, model, ctx.scale);
  if (measured && *measured <= 0.0) throw InputError("--measured energy must be positive");
  if (label.empty()) label = fs::path(ctx.trajectory_path).stem().string();

  CompareReport report;
  report.label = label;
  report.inputs = {hash_file(ctx.urdf_path), hash_file(ctx.trajectory_path),
                   hash_file(ctx.params_path), hash_file(params2_path)};
  report.rule = rule;
  report.scale = ctx.scale;
  report.measured_j = measured;
  for (const std::string& path : {ctx.params_path, params2_path}) {
    CompareRow row;
    row.params = load_params_json(path);
    row.energy = energy_of_trajectory(traj, model, row.params, rule);
    if (measured) row.deviation_pct = deviation_pct(row.energy.total_energy, *measured);
    report.rows.push_back(std::move(row));
  }
  if (measured_duration) {
    if (*measured_duration <= 0.0) throw InputError("--measured-duration must be positive");
    report.measured_duration_s = measured_duration;
    report.duration_deviation_pct =
        deviation_pct(report.rows[0].energy.duration, *measured_duration);
  }

  if (!ctx.json_only) std::cout << compare_report_to_table(report) << "\n";
  std::cout << compare_report_to_json(report);
  if (!ctx.out.empty()) {
    const fs::path dir = prepare_out_dir(ctx.out);
    write_file(dir / "compare.json", compare_report_to_json(report));
    write_file(dir / "compare_table.txt", compare_report_to_table(report));
  }
  return 0;
}

int cmd_speed_sweep(const CommandContext& ctx, std::vector<double> scales) {
  const IntegrationRule rule = parse_rule(ctx.rule_text);
  const RobotModel model = load_urdf_file(ctx.urdf_path);
  const ElectricalParams params = load_params_json(ctx.params_path);
  const Trajectory traj = load_prepared_trajectory(ctx.trajectory_path, model, 1.0);

  for (double s : scales) {
    if (!(s > 0.0)) throw InputError("--scales entries must be positive");
  }
  std::sort(scales.begin(), scales.end());

  const auto format = [](double v) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.17g", v);
    return std::string(buffer);
  };

  std::ostringstream csv;
  csv << "scale,duration_s,total_j,mechanical_j,joule_j,overhead_j,overhead_fraction\n";
  ordered_json rows = ordered_json::array();
  for (double s : scales) {
    const EnergyReport e = energy_of_trajectory(time_scale(traj, s), model, params, rule);
    csv << format(s) << "," << format(e.duration) << "," << format(e.total_energy) << ","
        << format(e.mechanical_energy) << "," << format(e.joule_energy) << ","
        << format(e.overhead_energy) << "," << format(e.overhead_fraction) << "\n";
    rows.push_back({{"scale", s},
                    {"duration_s", e.duration},
                    {"total_j", e.total_energy},
                    {"mechanical_j", e.mechanical_energy},
                    {"joule_j", e.joule_energy},
                    {"overhead_j", e.overhead_energy},
                    {"overhead_fraction", e.overhead_fraction}});
  }

  if (ctx.json_only) {
    ordered_json doc;
    doc["report_version"] = kReportVersion;
    doc["toolkit_version"] = kToolkitVersion;
    doc["command"] = "speed-sweep";
    doc["rule"] = to_string(rule);
    doc["rows"] = std::move(rows);
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << csv.str();
  }
  if (!ctx.out.empty()) {
    const fs::path dir = prepare_out_dir(ctx.out);
    write_file(dir / "speed_sweep.csv", csv.str());
  }
  return 0;
}

int cmd_gradcheck(const CommandContext& ctx) {
  const IntegrationRule rule = parse_rule(ctx.rule_text);
  const RobotModel model = load_urdf_file(ctx.urdf_path);
  const ElectricalParams params = load_params_json(ctx.params_path);
  const Trajectory traj = load_prepared_trajectory(ctx.trajectory_path, model, 1.0);
  if (!(ctx.scale > 0.0)) throw InputError("--scale must be positive");

  const ScaleGradient g = energy_gradient_wrt_scale(traj, model, params, ctx.scale, rule);

  ordered_json doc;
  doc["report_version"] = kReportVersion;
  doc["toolkit_version"] = kToolkitVersion;
  doc["command"] = "gradcheck";
  doc["inputs"] = ordered_json::array();
  for (const std::string& path : {ctx.urdf_path, ctx.trajectory_path, ctx.params_path}) {
    const InputFile f = hash_file(path);
    doc["inputs"].push_back({{"path", f.path}, {"fnv1a64", f.fnv1a64}});
  }
  doc["rule"] = to_string(rule);
  doc["scale"] = ctx.scale;
  doc["gradient_j"] = g.gradient;
  doc["coarse_j"] = g.coarse;
  doc["fine_j"] = g.fine;
  doc["rel_disagreement"] = g.rel_disagreement;
  doc["consistent"] = g.consistent;
  std::cout << doc.dump(2) << "\n";
  if (!ctx.out.empty()) {
    const fs::path dir = prepare_out_dir(ctx.out);
    write_file(dir / "gradcheck.json", doc.dump(2) + "\n");
  }

  if (!g.consistent) {
    std::cerr << "error: finite-difference estimates disagree by " << g.rel_disagreement
              << " relative (limit 1e-4); the energy objective is not smooth here\n";
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"robot trajectory energy estimation toolkit"};
  app.set_version_flag("--version", kToolkitVersion);
  app.require_subcommand(1);

  CommandContext ctx;
  std::string measurements_path, params2_path, label;
  int method = 2;
  std::optional<double> measured, measured_duration;
  std::vector<double> scales;

  auto add_common = [&](CLI::App* cmd, bool needs_trajectory, bool needs_params) {
    cmd->add_option("--urdf", ctx.urdf_path, "robot description (URDF)")->required();
    if (needs_trajectory)
      cmd->add_option("--trajectory", ctx.trajectory_path, "trajectory CSV (or .json mirror)")
          ->required();
    if (needs_params)
      cmd->add_option("--params", ctx.params_path, "electrical parameter JSON")->required();
    cmd->add_option("--rule", ctx.rule_text, "integration rule: left-riemann|trapezoid")
        ->default_val("left-riemann");
    cmd->add_option("--out", ctx.out, "directory for report files");
    cmd->add_flag("--json", ctx.json_only, "machine-readable output only");
  };

  CLI::App* identify = app.add_subcommand("identify", "fit electrical parameters from static poses");
  identify->add_option("--urdf", ctx.urdf_path, "robot description (URDF)")->required();
  identify->add_option("--measurements", measurements_path, "static pose measurement CSV")
      ->required();
  identify->add_option("--method", method, "1 = mean overhead, 2 = least squares")
      ->required()
      ->check(CLI::IsMember({1, 2}));
  identify->add_option("--out", ctx.out, "directory for report files");
  identify->add_flag("--json", ctx.json_only, "machine-readable output only");

  CLI::App* estimate = app.add_subcommand("estimate", "energy of a trajectory");
  add_common(estimate, true, true);
  estimate->add_option("--scale", ctx.scale, "time-scale factor applied before estimation")
      ->default_val(1.0);
  estimate->add_option("--measured", measured, "measured energy in J for deviation reporting");

  CLI::App* compare = app.add_subcommand("compare", "two parameter sets side by side");
  add_common(compare, true, true);
  compare->add_option("--params2", params2_path, "second electrical parameter JSON")->required();
  compare->add_option("--measured", measured, "measured energy in J");
  compare->add_option("--measured-duration", measured_duration,
                      "externally measured duration in s (reported, never corrected)");
  compare->add_option("--label", label, "movement label for the table row");
  compare->add_option("--scale", ctx.scale, "time-scale factor")->default_val(1.0);

  CLI::App* sweep = app.add_subcommand("speed-sweep", "energy across execution speeds");
  add_common(sweep, true, true);
  sweep->add_option("--scales", scales, "time-scale factors")->required()->expected(1, -1);

  CLI::App* gradcheck = app.add_subcommand("gradcheck", "finite-difference dE/ds consistency");
  add_common(gradcheck, true, true);
  gradcheck->add_option("--scale", ctx.scale, "expansion point")->default_val(1.0);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (identify->parsed()) return cmd_identify(ctx.urdf_path, measurements_path, method, ctx.out);
    if (estimate->parsed()) return cmd_estimate(ctx, measured);
    if (compare->parsed())
      return cmd_compare(ctx, params2_path, measured, measured_duration, label);
    if (sweep->parsed()) return cmd_speed_sweep(ctx, scales);
    if (gradcheck->parsed()) return cmd_gradcheck(ctx);
  } catch (const NumericalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
