#include <benchmark/benchmark.h>

#include <random>

#include "robenergy/dynamics.hpp"
#include "robenergy/urdf.hpp"

using namespace robenergy;

namespace {

#ifndef ROBENERGY_DATA_DIR
#define ROBENERGY_DATA_DIR "data"
#endif

RobotModel& panda() {
  static RobotModel model = load_urdf_file(std::string(ROBENERGY_DATA_DIR) + "/urdf/panda.urdf");
  return model;
}

JointState random_state(int dof, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-1.5, 1.5);
  JointState state = JointState::zero(dof);
  for (int i = 0; i < dof; ++i) {
    state.q[i] = dist(rng);
    state.qd[i] = dist(rng);
    state.qdd[i] = dist(rng);
  }
  return state;
}

}  // namespace

static void BM_Rnea7Dof(benchmark::State& state) {
  const RobotModel& model = panda();
  const JointState js = random_state(model.dof(), 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rnea(model, js));
  }
}
BENCHMARK(BM_Rnea7Dof);

static void BM_GravityTorque7Dof(benchmark::State& state) {
  const RobotModel& model = panda();
  const JointState js = random_state(model.dof(), 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gravity_torque(model, js.q));
  }
}
BENCHMARK(BM_GravityTorque7Dof);

static void BM_MassMatrix7Dof(benchmark::State& state) {
  const RobotModel& model = panda();
  const JointState js = random_state(model.dof(), 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mass_matrix(model, js.q));
  }
}
BENCHMARK(BM_MassMatrix7Dof);

static void BM_ForwardKinematics7Dof(benchmark::State& state) {
  const RobotModel& model = panda();
  const JointState js = random_state(model.dof(), 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(forward_kinematics(model, js.q));
  }
}
BENCHMARK(BM_ForwardKinematics7Dof);

BENCHMARK_MAIN();
