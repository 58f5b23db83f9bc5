#pragma once

// Closed-form Lagrangian dynamics for planar 1- and 2-link pendulums,
// derived by hand from the kinetic and potential energies. Deliberately
// independent of the recursive Newton-Euler implementation it checks.
//
// Conventions match the pendulum URDF fixtures: revolute joints about +y,
// angles measured from the downward vertical, the elbow angle relative to
// the upper arm; mass m_i at distance l_i from joint i with rotational
// inertia i_i about the in-plane axis through the com.

#include <Eigen/Dense>
#include <cmath>

#include "robenergy/model.hpp"

namespace oracle {

struct PendulumParams {
  int dof = 1;
  double gravity = 9.81;  // magnitude
  double m1 = 1.0, l1 = 1.0, i1 = 0.0;
  double m2 = 0.0, l2 = 0.0, i2 = 0.0;

  static PendulumParams one_link(double m = 1.0, double l = 1.0, double i = 0.0,
                                 double g = 9.81) {
    PendulumParams p;
    p.dof = 1;
    p.m1 = m, p.l1 = l, p.i1 = i, p.gravity = g;
    return p;
  }
  static PendulumParams two_link(double m1, double l1, double m2, double l2, double i1 = 0.0,
                                 double i2 = 0.0, double g = 9.81) {
    PendulumParams p;
    p.dof = 2;
    p.m1 = m1, p.l1 = l1, p.i1 = i1;
    p.m2 = m2, p.l2 = l2, p.i2 = i2;
    p.gravity = g;
    return p;
  }
};

inline Eigen::MatrixXd mass_matrix(const PendulumParams& p, const Eigen::VectorXd& q) {
  Eigen::MatrixXd m(p.dof, p.dof);
  if (p.dof == 1) {
    m(0, 0) = p.i1 + p.m1 * p.l1 * p.l1;
    return m;
  }
  const double c2 = std::cos(q[1]);
  m(0, 0) = p.i1 + p.i2 + p.m1 * p.l1 * p.l1 +
            p.m2 * (p.l1 * p.l1 + p.l2 * p.l2 + 2.0 * p.l1 * p.l2 * c2);
  m(0, 1) = m(1, 0) = p.i2 + p.m2 * (p.l2 * p.l2 + p.l1 * p.l2 * c2);
  m(1, 1) = p.i2 + p.m2 * p.l2 * p.l2;
  return m;
}

inline Eigen::VectorXd coriolis(const PendulumParams& p, const Eigen::VectorXd& q,
                                const Eigen::VectorXd& qd) {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(p.dof);
  if (p.dof == 1) return c;  // one revolute joint has no velocity coupling
  const double h = -p.m2 * p.l1 * p.l2 * std::sin(q[1]);
  c[0] = h * (2.0 * qd[0] * qd[1] + qd[1] * qd[1]);
  c[1] = -h * qd[0] * qd[0];
  return c;
}

inline Eigen::VectorXd gravity(const PendulumParams& p, const Eigen::VectorXd& q) {
  Eigen::VectorXd g(p.dof);
  if (p.dof == 1) {
    g[0] = p.m1 * p.gravity * p.l1 * std::sin(q[0]);
    return g;
  }
  const double s1 = std::sin(q[0]), s12 = std::sin(q[0] + q[1]);
  g[0] = (p.m1 + p.m2) * p.gravity * p.l1 * s1 + p.m2 * p.gravity * p.l2 * s12;
  g[1] = p.m2 * p.gravity * p.l2 * s12;
  return g;
}

inline Eigen::VectorXd tau(const PendulumParams& p, const Eigen::VectorXd& q,
                           const Eigen::VectorXd& qd, const Eigen::VectorXd& qdd) {
  return mass_matrix(p, q) * qdd + coriolis(p, q, qd) + gravity(p, q);
}

inline double kinetic_energy(const PendulumParams& p, const Eigen::VectorXd& q,
                             const Eigen::VectorXd& qd) {
  if (p.dof == 1) return 0.5 * (p.i1 + p.m1 * p.l1 * p.l1) * qd[0] * qd[0];
  const double w1 = qd[0], w2 = qd[0] + qd[1];
  const double c2 = std::cos(q[1]);
  const double point =
      0.5 * p.m1 * p.l1 * p.l1 * w1 * w1 +
      0.5 * p.m2 *
          (p.l1 * p.l1 * w1 * w1 + p.l2 * p.l2 * w2 * w2 + 2.0 * p.l1 * p.l2 * w1 * w2 * c2);
  return point + 0.5 * p.i1 * w1 * w1 + 0.5 * p.i2 * w2 * w2;
}

// Zero level at the pivot height (differs from the toolkit's world-origin
// zero by a constant; only derivatives and differences are comparable).
inline double potential_energy(const PendulumParams& p, const Eigen::VectorXd& q) {
  if (p.dof == 1) return -p.m1 * p.gravity * p.l1 * std::cos(q[0]);
  return -(p.m1 + p.m2) * p.gravity * p.l1 * std::cos(q[0]) -
         p.m2 * p.gravity * p.l2 * std::cos(q[0] + q[1]);
}

/// RobotModel with the same parameters, built through the public factory.
inline robenergy::RobotModel build_model(const PendulumParams& p) {
  using namespace robenergy;
  std::vector<Link> links;
  std::vector<JointSpec> joints;

  Link base;
  base.name = "base";
  base.has_inertia = true;
  base.inertia.mass = 1.0;
  base.inertia.inertia = 0.01 * Mat3::Identity();
  links.push_back(base);

  Link arm;
  arm.name = "arm";
  arm.has_inertia = true;
  arm.inertia.mass = p.m1;
  arm.inertia.com = Vec3(0, 0, -p.l1);
  arm.inertia.inertia = p.i1 * Mat3::Identity();
  links.push_back(arm);

  JointSpec shoulder;
  shoulder.name = "shoulder";
  shoulder.kind = JointKind::revolute;
  shoulder.parent_link = "base";
  shoulder.child_link = "arm";
  shoulder.axis = Vec3::UnitY();
  joints.push_back(shoulder);

  if (p.dof == 2) {
    Link forearm;
    forearm.name = "forearm";
    forearm.has_inertia = true;
    forearm.inertia.mass = p.m2;
    forearm.inertia.com = Vec3(0, 0, -p.l2);
    forearm.inertia.inertia = p.i2 * Mat3::Identity();
    links.push_back(forearm);

    JointSpec elbow;
    elbow.name = "elbow";
    elbow.kind = JointKind::revolute;
    elbow.parent_link = "arm";
    elbow.child_link = "forearm";
    elbow.axis = Vec3::UnitY();
    elbow.origin.translation = Vec3(0, 0, -p.l1);
    joints.push_back(elbow);
  }

  return RobotModel::make("pendulum_oracle", std::move(links), std::move(joints),
                          Vec3(0, 0, -p.gravity));
}

}  // namespace oracle
