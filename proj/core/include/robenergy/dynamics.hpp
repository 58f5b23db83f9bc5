#pragma once

#include "robenergy/model.hpp"

namespace robenergy {

/// Joint-space state; each vector has length model.dof().
struct JointState {
  VecX q;    // rad or m
  VecX qd;   // rad/s or m/s
  VecX qdd;  // rad/s^2 or m/s^2

  static JointState zero(int dof) {
    return {VecX::Zero(dof), VecX::Zero(dof), VecX::Zero(dof)};
  }
};

// Inverse dynamics via the recursive Newton-Euler algorithm, O(n) in the
// number of links. Spatial quantities use 6-vectors with the angular block
// before the linear block; transforms are rotation + translation pairs.
//
// The returned torque tau satisfies
//   M(q) qdd + C(q, qd) + G(q) = tau
// for the model's inertial parameters under its gravity vector. Friction is
// not modeled.

/// Joint torques for the given state under the model's gravity vector.
VecX rnea(const RobotModel& model, const JointState& state);

/// Same, with an explicit gravity vector (m/s^2, world frame).
VecX rnea(const RobotModel& model, const JointState& state, const Vec3& gravity);

/// G(q): torques that hold a static pose; equals rnea(model, {q, 0, 0}).
VecX gravity_torque(const RobotModel& model, const VecX& q);

/// C(q, qd): velocity-dependent torques; rnea(q, qd, 0) - G(q).
VecX coriolis_torque(const RobotModel& model, const VecX& q, const VecX& qd);

/// M(q): joint-space inertia matrix, built column-wise from RNEA with gravity
/// disabled and qdd = e_j. The result is symmetrized; asymmetry above 1e-8
/// relative throws NumericalError.
MatX mass_matrix(const RobotModel& model, const VecX& q);

/// Total kinetic energy 1/2 sum_i v_i' I_i v_i, J.
double kinetic_energy(const RobotModel& model, const VecX& q, const VecX& qd);

/// Gravitational potential energy -sum_i m_i g . c_i(world), J. Zero level at
/// the world origin.
double potential_energy(const RobotModel& model, const VecX& q);

}  // namespace robenergy
