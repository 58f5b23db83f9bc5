// Acceptance suite: exercises the toolkit's exit criteria end to end and
// prints one pass/fail line per criterion. Returns non-zero if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "oracle/pendulum_oracle.hpp"
#include "robenergy/dynamics.hpp"
#include "robenergy/energy.hpp"
#include "robenergy/identification.hpp"
#include "robenergy/trajectory.hpp"
#include "robenergy/urdf.hpp"
#include "support/test_support.hpp"

using namespace robenergy;
using nlohmann::json;
using oracle::PendulumParams;
using testsupport::data_path;
using testsupport::run_cli;

namespace {

int failures = 0;

void report(int number, const std::string& description, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %d: %s%s%s\n", pass ? "PASS" : "FAIL", number, description.c_str(),
              detail.empty() ? "" : " -- ", detail.c_str());
  if (!pass) ++failures;
}

void criterion(int number, const std::string& description,
               const std::function<bool(std::string&)>& body) {
  std::string detail;
  bool pass = false;
  try {
    pass = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  report(number, description, pass, detail);
}

VecX random_vec(std::mt19937& rng, int n, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  VecX v(n);
  for (int i = 0; i < n; ++i) v[i] = dist(rng);
  return v;
}

double seconds_since(const std::chrono::steady_clock::time_point& start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.6g", v);
  return buffer;
}

// ---------------------------------------------------------------------------

bool dynamics_oracle_equivalence(std::string& detail) {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937 rng(20240601);

  double max_err = 0.0;
  for (const PendulumParams& p : {PendulumParams::one_link(),
                                  PendulumParams::two_link(1.0, 1.0, 0.8, 0.7)}) {
    const RobotModel model = oracle::build_model(p);
    for (int trial = 0; trial < 1000; ++trial) {
      const VecX q = random_vec(rng, p.dof, -M_PI, M_PI);
      const VecX qd = random_vec(rng, p.dof, -3.0, 3.0);
      const VecX qdd = random_vec(rng, p.dof, -3.0, 3.0);
      const double err =
          (rnea(model, {q, qd, qdd}) - oracle::tau(p, q, qd, qdd)).cwiseAbs().maxCoeff();
      max_err = std::max(max_err, err);
    }
  }

  // decomposition identity tau == M qdd + C + G
  double max_decomp = 0.0;
  {
    const PendulumParams p = PendulumParams::two_link(1.6, 0.45, 0.5, 0.9, 0.05, 0.02);
    const RobotModel model = oracle::build_model(p);
    for (int trial = 0; trial < 200; ++trial) {
      const VecX q = random_vec(rng, 2, -M_PI, M_PI);
      const VecX qd = random_vec(rng, 2, -3.0, 3.0);
      const VecX qdd = random_vec(rng, 2, -3.0, 3.0);
      const VecX assembled = mass_matrix(model, q) * qdd + coriolis_torque(model, q, qd) +
                             gravity_torque(model, q);
      max_decomp =
          std::max(max_decomp, (rnea(model, {q, qd, qdd}) - assembled).cwiseAbs().maxCoeff());
    }
  }

  const double elapsed = seconds_since(start);
  detail = "max oracle error " + fmt(max_err) + ", max decomposition error " + fmt(max_decomp) +
           ", " + fmt(elapsed) + " s";
  return max_err < 1e-9 && max_decomp < 1e-9 && elapsed < 5.0;
}

bool power_balance(std::string& detail) {
  const auto start = std::chrono::steady_clock::now();
  const PendulumParams p = PendulumParams::two_link(1.0, 1.0, 0.8, 0.7);
  const RobotModel model = oracle::build_model(p);

  const auto state_at = [](double t) {
    VecX q(2), qd(2), qdd(2);
    q << 0.8 * std::sin(2.0 * t), 0.5 * std::sin(3.0 * t + 0.4);
    qd << 1.6 * std::cos(2.0 * t), 1.5 * std::cos(3.0 * t + 0.4);
    qdd << -3.2 * std::sin(2.0 * t), -4.5 * std::sin(3.0 * t + 0.4);
    return std::tuple{q, qd, qdd};
  };
  const auto energy_at = [&](double t) {
    const auto [q, qd, qdd] = state_at(t);
    return oracle::kinetic_energy(p, q, qd) + oracle::potential_energy(p, q);
  };

  const double h = 1e-6;
  double worst = 0.0;
  for (int i = 0; i <= 2000; ++i) {  // 1 kHz over 2 s
    const double t = i * 1e-3;
    const auto [q, qd, qdd] = state_at(t);
    const double power = rnea(model, {q, qd, qdd}).dot(qd);
    const double rate = (energy_at(t + h) - energy_at(t - h)) / (2.0 * h);
    worst = std::max(worst, std::abs(power - rate) / std::max(1.0, std::abs(rate)));
  }

  const double elapsed = seconds_since(start);
  detail = "worst relative mismatch " + fmt(worst) + ", " + fmt(elapsed) + " s";
  return worst < 1e-4 && elapsed < 1.0;
}

bool identification_recovery(std::string& detail) {
  const auto start = std::chrono::steady_clock::now();
  const RobotModel model = oracle::build_model(PendulumParams::two_link(1.0, 1.0, 0.8, 0.7));
  std::mt19937 rng(555);
  std::uniform_real_distribution<double> angle(-1.4, 1.4);
  std::uniform_real_distribution<double> a_dist(0.0005, 0.02), b_dist(40.0, 140.0);
  std::normal_distribution<double> noise(0.0, 1.0);

  const auto poses_for = [&](int n) {
    std::vector<VecX> poses;
    for (int i = 0; i < n; ++i) {
      VecX q(2);
      q << angle(rng), angle(rng);
      poses.push_back(q);
    }
    return poses;
  };

  double worst_rel = 0.0;
  for (int seed = 0; seed < 100; ++seed) {
    const double a = a_dist(rng), b = b_dist(rng);
    std::vector<StaticPoseMeasurement> ms;
    for (const VecX& q : poses_for(8))
      ms.push_back({q, a * gravity_torque(model, q).squaredNorm() + b, ""});
    const auto result = identify_method2(ms, model);
    worst_rel = std::max(worst_rel, std::abs(result.params.r_kt2 - a) / a);
    worst_rel = std::max(worst_rel, std::abs(result.params.p_overhead - b) / b);
  }

  std::vector<double> intercept_errors;
  for (int seed = 0; seed < 100; ++seed) {
    std::vector<StaticPoseMeasurement> ms;
    for (const VecX& q : poses_for(8)) {
      ms.push_back(
          {q, 0.0036 * gravity_torque(model, q).squaredNorm() + 88.04 + noise(rng), ""});
    }
    intercept_errors.push_back(
        std::abs(identify_method2(ms, model).params.p_overhead - 88.04));
  }
  std::sort(intercept_errors.begin(), intercept_errors.end());
  const double median = intercept_errors[50];

  const double elapsed = seconds_since(start);
  detail = "noise-free worst rel error " + fmt(worst_rel) + ", noisy median intercept error " +
           fmt(median) + " W, " + fmt(elapsed) + " s";
  return worst_rel < 1e-8 && median < 1.5 && elapsed < 5.0;
}

bool parameter_fixtures(std::string& detail) {
  const RobotModel model = load_urdf_file(data_path("urdf/pendulum1.urdf"));
  const Trajectory hold =
      derive_missing(load_trajectory_csv(data_path("trajectories/static_hold_1dof.csv")));
  const double duration = hold.duration();
  const double g_sq = 9.81 * 9.81;  // ||G(pi/2)||^2 of the unit pendulum

  const ElectricalParams m1 = load_params_json(data_path("params/franka_method1.json"));
  const ElectricalParams m2 = load_params_json(data_path("params/franka_method2.json"));
  if (m1.r_kt2 != 0.0 || m1.p_overhead != 92.3) {
    detail = "method 1 fixture does not carry (0, 92.3)";
    return false;
  }
  if (m2.r_kt2 != 0.0036 || m2.p_overhead != 88.04) {
    detail = "method 2 fixture does not carry (0.0036, 88.04)";
    return false;
  }

  double worst = 0.0;
  for (const ElectricalParams& params : {m1, m2}) {
    const double expected = (params.p_overhead + params.r_kt2 * g_sq) * duration;
    const double actual = energy_of_trajectory(hold, model, params).total_energy;
    worst = std::max(worst, std::abs(actual - expected) / expected);
  }
  detail = "worst relative error " + fmt(worst);
  return worst < 1e-9;
}

bool overhead_dominance(std::string& detail) {
  const RobotModel model = load_urdf_file(data_path("urdf/pendulum1.urdf"));
  const Trajectory swing = load_trajectory_csv(data_path("trajectories/pendulum_swing.csv"));
  const ElectricalParams params = load_params_json(data_path("params/franka_method2.json"));

  const auto profile = power_profile(swing, model, params);
  double mean_other = 0.0;
  for (const PowerBreakdown& p : profile) mean_other += p.mechanical + p.joule;
  mean_other /= static_cast<double>(profile.size());
  if (!(mean_other <= 5.0)) {
    detail = "fixture violates the regime precondition: mean non-overhead power " +
             fmt(mean_other) + " W";
    return false;
  }
  const EnergyReport report = trajectory_energy(profile);
  const bool fraction_ok = report.overhead_fraction >= 0.9;

  // internal consistency of the published reference runs: total energy minus
  // overhead at 92.3 W must leave a small positive mechanical remainder
  struct Row {
    const char* label;
    double energy_j;
    double time_s;
  };
  const Row rows[] = {
      {"Horizontal, vel. 1", 794.96, 8.58}, {"Horizontal, vel. 5", 395.88, 4.26},
      {"Horizontal, vel. 10", 299.89, 3.22}, {"Diagonal, vel. 1", 902.74, 9.66},
      {"Diagonal, vel. 5", 455.88, 4.82},    {"Diagonal, vel. 10", 341.33, 3.58},
      {"Vertical, vel. 1", 1024.09, 10.92},  {"Vertical, vel. 5", 527.26, 5.54},
      {"Vertical, vel. 10", 377.62, 3.92},
  };
  bool rows_ok = true;
  for (const Row& row : rows) {
    const double remainder = row.energy_j - 92.3 * row.time_s;
    if (remainder < 0.0 || remainder > 40.0) {
      rows_ok = false;
      detail += std::string(row.label) + " remainder " + fmt(remainder) + " J out of [0,40]; ";
    }
  }
  detail += "overhead fraction " + fmt(report.overhead_fraction) + ", mean non-overhead power " +
            fmt(mean_other) + " W";
  return fraction_ok && rows_ok;
}

bool comparison_closure(std::string& detail) {
  const auto estimate =
      run_cli("estimate --urdf " + data_path("urdf/panda.urdf") + " --trajectory " +
              data_path("trajectories/panda_move.csv") + " --params " +
              data_path("params/franka_method2.json"));
  if (estimate.exit_code != 0) {
    detail = "estimate failed: " + estimate.err;
    return false;
  }
  const double measured = json::parse(estimate.out)["energy"]["total_j"].get<double>();
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", measured);

  const auto compare =
      run_cli("compare --urdf " + data_path("urdf/panda.urdf") + " --trajectory " +
              data_path("trajectories/panda_move.csv") + " --params " +
              data_path("params/franka_method1.json") + " --params2 " +
              data_path("params/franka_method2.json") + " --measured " + buffer + " --json");
  if (compare.exit_code != 0) {
    detail = "compare failed: " + compare.err;
    return false;
  }
  const json doc = json::parse(compare.out);
  const double deviation = doc["rows"][1]["deviation_pct"].get<double>();
  detail = "self-measured deviation " + fmt(deviation) + " %";
  return deviation == 0.0;
}

bool integration_convergence(std::string& detail) {
  const auto ramp_profile = [](double dt) {
    std::vector<PowerBreakdown> profile;
    const long n = std::llround(10.0 / dt);
    profile.reserve(n + 1);
    for (long i = 0; i <= n; ++i) {
      const double t = static_cast<double>(i) * dt;
      profile.push_back({t, 10.0 * t, 0.0, 0.0, 10.0 * t});
    }
    return profile;
  };

  const double trapezoid_err =
      std::abs(trajectory_energy(ramp_profile(1e-3), IntegrationRule::trapezoid).total_energy -
               500.0);
  std::vector<double> lr_errors;
  for (double dt : {1e-2, 1e-3, 1e-4}) {
    lr_errors.push_back(std::abs(
        trajectory_energy(ramp_profile(dt), IntegrationRule::left_riemann).total_energy - 500.0));
  }
  const double ratio1 = lr_errors[0] / lr_errors[1];
  const double ratio2 = lr_errors[1] / lr_errors[2];

  detail = "trapezoid error " + fmt(trapezoid_err) + " J, left-Riemann errors " +
           fmt(lr_errors[0]) + "/" + fmt(lr_errors[1]) + "/" + fmt(lr_errors[2]) +
           " J (ratios " + fmt(ratio1) + ", " + fmt(ratio2) + ")";
  const bool ratios_ok = ratio1 > 8.0 && ratio1 < 12.0 && ratio2 > 8.0 && ratio2 < 12.0;
  return trapezoid_err < 1e-9 * 500.0 && ratios_ok;
}

bool gradient_consistency(std::string& detail) {
  const RobotModel pendulum = load_urdf_file(data_path("urdf/pendulum1.urdf"));
  const ElectricalParams params = load_params_json(data_path("params/franka_method2.json"));

  const Trajectory swing = load_trajectory_csv(data_path("trajectories/pendulum_swing.csv"));
  const ScaleGradient smooth = energy_gradient_wrt_scale(swing, pendulum, params, 1.0);

  const Trajectory hold =
      derive_missing(load_trajectory_csv(data_path("trajectories/static_hold_1dof.csv")));
  const ScaleGradient hold_grad = energy_gradient_wrt_scale(hold, pendulum, params, 1.0);
  const double expected = (params.p_overhead + params.r_kt2 * 9.81 * 9.81) * hold.duration();
  const double hold_err = std::abs(hold_grad.gradient - expected) / expected;

  detail = "swing disagreement " + fmt(smooth.rel_disagreement) + ", hold gradient error " +
           fmt(hold_err) + " relative";
  return smooth.consistent && smooth.rel_disagreement < 1e-4 && hold_err < 1e-6;
}

bool cli_determinism(std::string& detail) {
  const std::vector<std::string> commands = {
      "identify --urdf " + data_path("urdf/panda.urdf") + " --measurements " +
          data_path("measurements/static_poses.csv") + " --method 1",
      "identify --urdf " + data_path("urdf/panda.urdf") + " --measurements " +
          data_path("measurements/static_poses.csv") + " --method 2",
      "estimate --urdf " + data_path("urdf/pendulum1.urdf") + " --trajectory " +
          data_path("trajectories/static_hold_1dof.csv") + " --params " +
          data_path("params/franka_method2.json"),
      "estimate --urdf " + data_path("urdf/panda.urdf") + " --trajectory " +
          data_path("trajectories/panda_move.csv") + " --params " +
          data_path("params/franka_method2.json") + " --rule trapezoid",
      "compare --urdf " + data_path("urdf/panda.urdf") + " --trajectory " +
          data_path("trajectories/panda_move.csv") + " --params " +
          data_path("params/franka_method1.json") + " --params2 " +
          data_path("params/franka_method2.json") + " --measured 900 --label move",
      "speed-sweep --urdf " + data_path("urdf/pendulum1.urdf") + " --trajectory " +
          data_path("trajectories/pendulum_swing.csv") + " --params " +
          data_path("params/franka_method2.json") + " --scales 0.5 1 2",
      "gradcheck --urdf " + data_path("urdf/pendulum1.urdf") + " --trajectory " +
          data_path("trajectories/pendulum_swing.csv") + " --params " +
          data_path("params/franka_method2.json"),
  };

  for (std::size_t i = 0; i < commands.size(); ++i) {
    const auto first = run_cli(commands[i]);
    const auto second = run_cli(commands[i]);
    if (first.exit_code != 0 || second.exit_code != 0) {
      detail = "command " + std::to_string(i) + " failed: " + first.err;
      return false;
    }
    if (first.out != second.out) {
      detail = "command " + std::to_string(i) + " produced differing bytes";
      return false;
    }
  }
  detail = std::to_string(commands.size()) + " commands rerun byte-identically";
  return true;
}

}  // namespace

int main() {
  criterion(1, "RNEA matches the Lagrangian oracle (1000 random states, 1e-9)",
            dynamics_oracle_equivalence);
  criterion(2, "power balance tau'qd == d/dt(T+U) within 1e-4 at 1 kHz", power_balance);
  criterion(3, "least-squares identification recovery (noise-free 1e-8, noisy median < 1.5 W)",
            identification_recovery);
  criterion(4, "bundled parameter fixtures reproduce the static-hold closed form to 1e-9",
            parameter_fixtures);
  criterion(5, "overhead dominates low-power trajectories; reference runs are consistent",
            overhead_dominance);
  criterion(6, "compare closes to 0.00% deviation on a model-generated measurement",
            comparison_closure);
  criterion(7, "integration: trapezoid exact on a ramp, left Riemann O(dt)",
            integration_convergence);
  criterion(8, "dE/ds Richardson agreement and static-hold closed form", gradient_consistency);
  criterion(9, "CLI commands are byte-identical across reruns", cli_determinism);

  if (failures > 0) {
    std::printf("%d criteria FAILED\n", failures);
    return 1;
  }
  std::printf("all 9 criteria passed\n");
  return 0;
}
