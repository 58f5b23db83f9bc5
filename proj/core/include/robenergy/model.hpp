#pragma once

#include <optional>
#include <string>
#include <vector>

#include "robenergy/transform.hpp"

namespace robenergy {

enum class JointKind { revolute, continuous, prismatic, fixed };

const char* to_string(JointKind kind);
std::optional<JointKind> joint_kind_from_string(const std::string& text);

/// One joint of the kinematic tree. The axis is a unit vector expressed in
/// the joint frame; origin places the joint frame in the parent-link frame.
struct JointSpec {
  std::string name;
  JointKind kind = JointKind::fixed;
  std::string parent_link;
  std::string child_link;
  Vec3 axis = Vec3::UnitX();
  Transform origin;
  std::optional<double> velocity_limit;  // rad/s or m/s
  std::optional<double> effort_limit;    // N*m or N

  bool moves() const { return kind != JointKind::fixed; }
};

/// Mass, center of mass (link frame, meters) and rotational inertia about
/// the com (kg*m^2).
struct LinkInertia {
  double mass = 0.0;
  Vec3 com = Vec3::Zero();
  Mat3 inertia = Mat3::Zero();
};

struct Link {
  std::string name;
  LinkInertia inertia;
  bool has_inertia = false;  // terminal links may omit the inertial block
};

enum class Severity { note, warning, error };

struct Diagnostic {
  Severity severity = Severity::note;
  std::string element;  // offending link or joint
  std::string message;
};

/// Kinematic tree with inertial parameters. Immutable after construction and
/// safe to share across concurrent readers.
///
/// DOF indices are assigned to non-fixed joints in depth-first traversal
/// order, visiting children in document order; for serial chains this equals
/// the order the joints appear in the file.
class RobotModel {
 public:
  /// Builds and structurally validates a model. Throws InputError when the
  /// joints do not form a single tree rooted at a unique base link.
  static RobotModel make(std::string name, std::vector<Link> links,
                         std::vector<JointSpec> joints,
                         const Vec3& gravity = Vec3(0.0, 0.0, -9.81));

  const std::string& name() const { return name_; }
  const std::vector<Link>& links() const { return links_; }
  const std::vector<JointSpec>& joints() const { return joints_; }
  const Vec3& gravity() const { return gravity_; }
  int dof() const { return dof_; }
  int root_link() const { return root_; }

  /// Joint indices in depth-first preorder; parents precede children.
  const std::vector<int>& joint_traversal() const { return traversal_; }
  int joint_parent_link(int joint) const { return parent_link_[joint]; }
  int joint_child_link(int joint) const { return child_link_[joint]; }
  /// DOF index of a joint, -1 for fixed joints.
  int joint_dof_index(int joint) const { return dof_index_[joint]; }
  int link_index(const std::string& link_name) const;

 private:
  RobotModel() = default;

  std::string name_;
  std::vector<Link> links_;
  std::vector<JointSpec> joints_;
  Vec3 gravity_ = Vec3(0.0, 0.0, -9.81);
  int dof_ = 0;
  int root_ = -1;
  std::vector<int> traversal_;
  std::vector<int> dof_index_;
  std::vector<int> parent_link_;
  std::vector<int> child_link_;
};

/// World pose of every link (document order). The base link pose is the
/// identity; each child pose is parent * origin * joint motion.
std::vector<Transform> forward_kinematics(const RobotModel& model, const VecX& q);

/// Checks the numeric invariants (inertia symmetry, nonnegative principal
/// moments, triangle inequality, unit axes). Returns an empty list iff all
/// invariants hold; zero-mass intermediate links yield warnings only.
std::vector<Diagnostic> validate_model(const RobotModel& model);

}  // namespace robenergy
