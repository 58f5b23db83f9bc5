#include <benchmark/benchmark.h>

#include <cmath>

#include "robenergy/energy.hpp"
#include "robenergy/identification.hpp"
#include "robenergy/trajectory.hpp"
#include "robenergy/urdf.hpp"

using namespace robenergy;

namespace {

#ifndef ROBENERGY_DATA_DIR
#define ROBENERGY_DATA_DIR "data"
#endif

std::string data_path(const std::string& rel) {
  return std::string(ROBENERGY_DATA_DIR) + "/" + rel;
}

Trajectory swing(int samples) {
  std::vector<TrajectoryPoint> points;
  for (int i = 0; i < samples; ++i) {
    const double t = 4.0 * i / (samples - 1);
    TrajectoryPoint p;
    p.t = t;
    p.q = VecX::Constant(1, 0.5 * std::sin(2.0 * t));
    p.qd = VecX::Constant(1, std::cos(2.0 * t));
    p.qdd = VecX::Constant(1, -2.0 * std::sin(2.0 * t));
    points.push_back(std::move(p));
  }
  return Trajectory(1, std::move(points));
}

}  // namespace

static void BM_PowerProfile1k(benchmark::State& state) {
  const RobotModel model = load_urdf_file(data_path("urdf/pendulum1.urdf"));
  const Trajectory traj = swing(1000);
  const ElectricalParams params{0.0036, 88.04};
  for (auto _ : state) {
    benchmark::DoNotOptimize(power_profile(traj, model, params));
  }
}
BENCHMARK(BM_PowerProfile1k);

static void BM_EnergyOfTrajectory7Dof(benchmark::State& state) {
  const RobotModel model = load_urdf_file(data_path("urdf/panda.urdf"));
  const Trajectory traj = load_trajectory_csv(data_path("trajectories/panda_move.csv"));
  const ElectricalParams params{0.0036, 88.04};
  for (auto _ : state) {
    benchmark::DoNotOptimize(energy_of_trajectory(traj, model, params));
  }
}
BENCHMARK(BM_EnergyOfTrajectory7Dof);

static void BM_DeriveMissing(benchmark::State& state) {
  const Trajectory bare = [] {
    std::vector<TrajectoryPoint> points;
    for (int i = 0; i < 2000; ++i) {
      TrajectoryPoint p;
      p.t = i * 1e-3;
      p.q = VecX::Constant(3, std::sin(p.t));
      points.push_back(std::move(p));
    }
    return Trajectory(3, std::move(points));
  }();
  for (auto _ : state) {
    benchmark::DoNotOptimize(derive_missing(bare));
  }
}
BENCHMARK(BM_DeriveMissing);

static void BM_IdentifyMethod2(benchmark::State& state) {
  const RobotModel model = load_urdf_file(data_path("urdf/pendulum2.urdf"));
  std::vector<StaticPoseMeasurement> ms;
  for (int i = 0; i < 8; ++i) {
    VecX q(2);
    q << 0.3 * i - 1.0, 0.2 * i - 0.7;
    ms.push_back({q, 88.04 + 0.0036 * gravity_torque(model, q).squaredNorm(), ""});
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(identify_method2(ms, model));
  }
}
BENCHMARK(BM_IdentifyMethod2);
