#include "robenergy/model.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <unordered_map>

#include "robenergy/errors.hpp"

namespace robenergy {

const char* to_string(JointKind kind) {
  switch (kind) {
    case JointKind::revolute: return "revolute";
    case JointKind::continuous: return "continuous";
    case JointKind::prismatic: return "prismatic";
    case JointKind::fixed: return "fixed";
  }
  return "?";
}

std::optional<JointKind> joint_kind_from_string(const std::string& text) {
  if (text == "revolute") return JointKind::revolute;
  if (text == "continuous") return JointKind::continuous;
  if (text == "prismatic") return JointKind::prismatic;
  if (text == "fixed") return JointKind::fixed;
  return std::nullopt;
}

RobotModel RobotModel::make(std::string name, std::vector<Link> links,
                            std::vector<JointSpec> joints, const Vec3& gravity) {
  if (links.empty()) throw InputError("model has no links");

  std::unordered_map<std::string, int> index;
  for (int i = 0; i < static_cast<int>(links.size()); ++i) {
    if (!index.emplace(links[i].name, i).second)
      throw InputError("duplicate link name '" + links[i].name + "'");
  }

  RobotModel m;
  m.name_ = std::move(name);
  m.links_ = std::move(links);
  m.joints_ = std::move(joints);
  m.gravity_ = gravity;

  const int n_links = static_cast<int>(m.links_.size());
  const int n_joints = static_cast<int>(m.joints_.size());
  m.parent_link_.resize(n_joints);
  m.child_link_.resize(n_joints);
  m.dof_index_.assign(n_joints, -1);

  // joints entering each link; a link may be the child of at most one joint
  std::vector<int> parent_joint(n_links, -1);
  std::vector<std::vector<int>> children(n_links);  // outgoing joints, document order
  for (int j = 0; j < n_joints; ++j) {
    const JointSpec& joint = m.joints_[j];
    auto p = index.find(joint.parent_link);
    auto c = index.find(joint.child_link);
    if (p == index.end())
      throw InputError("joint '" + joint.name + "' references unknown parent link '" +
                       joint.parent_link + "'");
    if (c == index.end())
      throw InputError("joint '" + joint.name + "' references unknown child link '" +
                       joint.child_link + "'");
    if (p->second == c->second)
      throw InputError("joint '" + joint.name + "' connects link '" + joint.parent_link +
                       "' to itself");
    if (parent_joint[c->second] != -1)
      throw InputError("link '" + joint.child_link +
                       "' has more than one parent joint (not a tree)");
    m.parent_link_[j] = p->second;
    m.child_link_[j] = c->second;
    parent_joint[c->second] = j;
    children[p->second].push_back(j);
  }

  for (int i = 0; i < n_links; ++i) {
    if (parent_joint[i] == -1) {
      if (m.root_ != -1)
        throw InputError("tree has multiple roots: '" + m.links_[m.root_].name + "' and '" +
                         m.links_[i].name + "'");
      m.root_ = i;
    }
  }
  if (m.root_ == -1) throw InputError("tree has no root (joint cycle)");

  // depth-first preorder, children in document order; assigns DOF indices
  std::vector<int> stack = {m.root_};
  std::vector<bool> visited(n_links, false);
  while (!stack.empty()) {
    int link = stack.back();
    stack.pop_back();
    if (visited[link]) throw InputError("joint cycle through link '" + m.links_[link].name + "'");
    visited[link] = true;
    for (auto it = children[link].rbegin(); it != children[link].rend(); ++it)
      stack.push_back(m.child_link_[*it]);
    // record traversal when entering via the parent joint
    if (parent_joint[link] != -1) m.traversal_.push_back(parent_joint[link]);
  }
  for (int i = 0; i < n_links; ++i) {
    if (!visited[i])
      throw InputError("link '" + m.links_[i].name + "' is disconnected from the root");
  }
  for (int j : m.traversal_) {
    if (m.joints_[j].moves()) m.dof_index_[j] = m.dof_++;
  }
  return m;
}

int RobotModel::link_index(const std::string& link_name) const {
  for (int i = 0; i < static_cast<int>(links_.size()); ++i) {
    if (links_[i].name == link_name) return i;
  }
  return -1;
}

namespace {

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

}  // namespace

std::vector<Transform> forward_kinematics(const RobotModel& model, const VecX& q) {
  if (q.size() != model.dof())
    throw InputError("forward_kinematics: q has " + std::to_string(q.size()) +
                     " entries, model has " + std::to_string(model.dof()) + " DOF");

  std::vector<Transform> world(model.links().size());
  world[model.root_link()] = Transform{};
  for (int j : model.joint_traversal()) {
    const JointSpec& joint = model.joints()[j];
    const int dof = model.joint_dof_index(j);
    const double position = dof >= 0 ? q[dof] : 0.0;
    world[model.joint_child_link(j)] =
        world[model.joint_parent_link(j)] * joint.origin * joint_motion(joint, position);
  }
  return world;
}

std::vector<Diagnostic> validate_model(const RobotModel& model) {
  std::vector<Diagnostic> diags;

  std::vector<bool> terminal(model.links().size(), true);
  for (std::size_t j = 0; j < model.joints().size(); ++j)
    terminal[model.joint_parent_link(static_cast<int>(j))] = false;

  for (std::size_t i = 0; i < model.links().size(); ++i) {
    const Link& link = model.links()[i];
    const Mat3& inertia = link.inertia.inertia;

    if (link.inertia.mass < 0.0)
      diags.push_back({Severity::error, link.name, "negative mass"});
    else if (link.inertia.mass == 0.0 && !terminal[i] && static_cast<int>(i) != model.root_link())
      diags.push_back({Severity::warning, link.name, "zero-mass intermediate link"});

    const double asym = (inertia - inertia.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-12) {
      diags.push_back({Severity::error, link.name, "inertia tensor is not symmetric"});
      continue;  // principal moments are meaningless for an asymmetric tensor
    }

    Eigen::SelfAdjointEigenSolver<Mat3> eig(inertia);
    const Vec3 moments = eig.eigenvalues();  // ascending
    if (moments.minCoeff() < -1e-9)
      diags.push_back({Severity::error, link.name, "inertia has a negative principal moment"});
    else if (moments[0] + moments[1] < moments[2] - 1e-9)
      diags.push_back(
          {Severity::error, link.name, "principal moments violate the triangle inequality"});
  }

  for (const JointSpec& joint : model.joints()) {
    if (joint.moves() && std::abs(joint.axis.norm() - 1.0) > 1e-9)
      diags.push_back({Severity::error, joint.name, "joint axis is not a unit vector"});
  }
  return diags;
}

}  // namespace robenergy
