#include "robenergy/dynamics.hpp"

#include <cmath>
#include <vector>

#include "robenergy/errors.hpp"

namespace robenergy {

namespace {

// Spatial 6-vectors, angular block first. A motion vector (w; v) holds the
// angular velocity and the linear velocity of the body-fixed point at the
// frame origin; a force vector (n; f) holds the moment about the origin and
// the force.

Vec6 motion_cross(const Vec6& a, const Vec6& b) {
  Vec6 out;
  out.head<3>() = a.head<3>().cross(b.head<3>());
  out.tail<3>() = a.head<3>().cross(b.tail<3>()) + a.tail<3>().cross(b.head<3>());
  return out;
}

Vec6 force_cross(const Vec6& a, const Vec6& f) {
  Vec6 out;
  out.head<3>() = a.head<3>().cross(f.head<3>()) + a.tail<3>().cross(f.tail<3>());
  out.tail<3>() = a.head<3>().cross(f.tail<3>());
  return out;
}

// Momentum of a rigid body: h_lin = m * v_com, h_ang = I_c w + c x h_lin.
Vec6 apply_inertia(const LinkInertia& body, const Vec6& motion) {
  const Vec3 w = motion.head<3>();
  const Vec3 v_com = motion.tail<3>() + w.cross(body.com);
  Vec6 h;
  h.tail<3>() = body.mass * v_com;
  h.head<3>() = body.inertia * w + body.com.cross(Vec3(h.tail<3>()));
  return h;
}

// Coordinate change of a motion vector from parent to child coordinates,
// where (R, p) is the child pose in the parent frame.
Vec6 motion_to_child(const Transform& pose, const Vec6& m) {
  const Mat3 rt = pose.rotation.transpose();
  Vec6 out;
  out.head<3>() = rt * m.head<3>();
  out.tail<3>() = rt * (m.tail<3>() + m.head<3>().cross(pose.translation));
  return out;
}

// Dual transform of a force vector from child to parent coordinates.
Vec6 force_to_parent(const Transform& pose, const Vec6& f) {
  Vec6 out;
  out.tail<3>() = pose.rotation * f.tail<3>();
  out.head<3>() = pose.rotation * f.head<3>() + pose.translation.cross(Vec3(out.tail<3>()));
  return out;
}

Transform joint_motion(const JointSpec& joint, double position) {
  switch (joint.kind) {
    case JointKind::revolute:
    case JointKind::continuous:
      return {Eigen::AngleAxisd(position, joint.axis).toRotationMatrix(), Vec3::Zero()};
    case JointKind::prismatic:
      return {Mat3::Identity(), position * joint.axis};
    case JointKind::fixed:
      return {};
  }
  return {};
}

Vec6 motion_subspace(const JointSpec& joint) {
  Vec6 s = Vec6::Zero();
  if (joint.kind == JointKind::prismatic)
    s.tail<3>() = joint.axis;
  else
    s.head<3>() = joint.axis;
  return s;
}

void check_state(const RobotModel& model, const JointState& state) {
  const int n = model.dof();
  if (state.q.size() != n || state.qd.size() != n || state.qdd.size() != n)
    throw InputError("rnea: state dimensions (" + std::to_string(state.q.size()) + ", " +
                     std::to_string(state.qd.size()) + ", " + std::to_string(state.qdd.size()) +
                     ") do not match model DOF " + std::to_string(n));
  if (!state.q.allFinite() || !state.qd.allFinite() || !state.qdd.allFinite())
    throw InputError("rnea: non-finite joint state");
}

}  // namespace

VecX rnea(const RobotModel& model, const JointState& state, const Vec3& gravity) {
  check_state(model, state);

  const int n_links = static_cast<int>(model.links().size());
  std::vector<Vec6> velocity(n_links, Vec6::Zero());
  std::vector<Vec6> acceleration(n_links, Vec6::Zero());
  std::vector<Vec6> force(n_links, Vec6::Zero());
  std::vector<Transform> child_pose(model.joints().size());  // in the parent frame

  // gravity enters as a fictitious base acceleration
  acceleration[model.root_link()].tail<3>() = -gravity;

  for (int j : model.joint_traversal()) {
    const JointSpec& joint = model.joints()[j];
    const int parent = model.joint_parent_link(j);
    const int child = model.joint_child_link(j);
    const int dof = model.joint_dof_index(j);

    const double q = dof >= 0 ? state.q[dof] : 0.0;
    child_pose[j] = joint.origin * joint_motion(joint, q);

    Vec6 v = motion_to_child(child_pose[j], velocity[parent]);
    Vec6 a = motion_to_child(child_pose[j], acceleration[parent]);
    if (dof >= 0) {
      const Vec6 s = motion_subspace(joint);
      const Vec6 vj = s * state.qd[dof];
      a += s * state.qdd[dof] + motion_cross(v + vj, vj);  // == motion_cross(v_child, vj)
      v += vj;
    }
    velocity[child] = v;
    acceleration[child] = a;

    const LinkInertia& body = model.links()[child].inertia;
    force[child] = apply_inertia(body, a) + force_cross(v, apply_inertia(body, v));
  }

  VecX tau = VecX::Zero(model.dof());
  const auto& order = model.joint_traversal();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int j = *it;
    const int dof = model.joint_dof_index(j);
    if (dof >= 0) tau[dof] = motion_subspace(model.joints()[j]).dot(force[model.joint_child_link(j)]);
    force[model.joint_parent_link(j)] += force_to_parent(child_pose[j], force[model.joint_child_link(j)]);
  }
  return tau;
}

VecX rnea(const RobotModel& model, const JointState& state) {
  return rnea(model, state, model.gravity());
}

VecX gravity_torque(const RobotModel& model, const VecX& q) {
  const int n = model.dof();
  if (q.size() != n)
    throw InputError("gravity_torque: q has " + std::to_string(q.size()) +
                     " entries, model has " + std::to_string(n) + " DOF");
  return rnea(model, {q, VecX::Zero(n), VecX::Zero(n)});
}

VecX coriolis_torque(const RobotModel& model, const VecX& q, const VecX& qd) {
  const int n = model.dof();
  if (q.size() != n || qd.size() != n)
    throw InputError("coriolis_torque: dimension mismatch with model DOF " + std::to_string(n));
  return rnea(model, {q, qd, VecX::Zero(n)}) - gravity_torque(model, q);
}

MatX mass_matrix(const RobotModel& model, const VecX& q) {
  const int n = model.dof();
  if (q.size() != n)
    throw InputError("mass_matrix: q has " + std::to_string(q.size()) + " entries, model has " +
                     std::to_string(n) + " DOF");

  MatX m(n, n);
  const VecX zero = VecX::Zero(n);
  for (int j = 0; j < n; ++j) {
    VecX unit = VecX::Zero(n);
    unit[j] = 1.0;
    m.col(j) = rnea(model, {q, zero, unit}, Vec3::Zero());
  }

  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double asymmetry = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asymmetry > 1e-8 * scale)
    throw NumericalError("mass matrix asymmetry " + std::to_string(asymmetry / scale) +
                         " exceeds 1e-8 relative");
  return 0.5 * (m + m.transpose());
}

double kinetic_energy(const RobotModel& model, const VecX& q, const VecX& qd) {
  const int n = model.dof();
  if (q.size() != n || qd.size() != n)
    throw InputError("kinetic_energy: dimension mismatch with model DOF " + std::to_string(n));

  const int n_links = static_cast<int>(model.links().size());
  std::vector<Vec6> velocity(n_links, Vec6::Zero());
  double energy = 0.0;
  for (int j : model.joint_traversal()) {
    const JointSpec& joint = model.joints()[j];
    const int dof = model.joint_dof_index(j);
    const Transform pose = joint.origin * joint_motion(joint, dof >= 0 ? q[dof] : 0.0);

    Vec6 v = motion_to_child(pose, velocity[model.joint_parent_link(j)]);
    if (dof >= 0) v += motion_subspace(joint) * qd[dof];
    const int child = model.joint_child_link(j);
    velocity[child] = v;
    energy += 0.5 * v.dot(apply_inertia(model.links()[child].inertia, v));
  }
  return energy;
}

double potential_energy(const RobotModel& model, const VecX& q) {
  const auto world = forward_kinematics(model, q);
  double energy = 0.0;
  for (std::size_t i = 0; i < model.links().size(); ++i) {
    const LinkInertia& body = model.links()[i].inertia;
    energy -= body.mass * model.gravity().dot(world[i].apply(body.com));
  }
  return energy;
}

}  // namespace robenergy
