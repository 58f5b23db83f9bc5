#pragma once

#include <Eigen/Dense>

namespace robenergy {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using VecX = Eigen::VectorXd;
using MatX = Eigen::MatrixXd;

/// Rigid transform storing the pose of a child frame in its parent frame.
/// Points map as x_parent = rotation * x_child + translation.
struct Transform {
  Mat3 rotation = Mat3::Identity();
  Vec3 translation = Vec3::Zero();

  Transform operator*(const Transform& other) const {
    return {rotation * other.rotation, rotation * other.translation + translation};
  }

  Vec3 apply(const Vec3& point) const { return rotation * point + translation; }

  Transform inverse() const {
    Mat3 rt = rotation.transpose();
    return {rt, -(rt * translation)};
  }
};

/// Rotation from roll-pitch-yaw, extrinsic x-y-z (the URDF convention):
/// R = Rz(yaw) * Ry(pitch) * Rx(roll).
Mat3 rpy_to_rotation(double roll, double pitch, double yaw);

/// Cross-product matrix: skew(a) * b == a x b.
Mat3 skew(const Vec3& v);

}  // namespace robenergy
