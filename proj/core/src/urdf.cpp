#include "robenergy/urdf.hpp"

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "robenergy/errors.hpp"

namespace robenergy {

namespace {

namespace pt = boost::property_tree;

Vec3 parse_vec3(const std::string& text, const std::string& source, const std::string& what) {
  std::istringstream in(text);
  Vec3 v;
  if (!(in >> v.x() >> v.y() >> v.z()))
    throw ParseError(source, 0, "cannot parse " + what + " from \"" + text + "\"");
  std::string rest;
  if (in >> rest) throw ParseError(source, 0, what + " has more than three components");
  return v;
}

Transform parse_origin(const pt::ptree& element, const std::string& source) {
  Transform origin;
  if (auto node = element.get_child_optional("origin")) {
    const Vec3 xyz = parse_vec3(node->get<std::string>("<xmlattr>.xyz", "0 0 0"), source, "xyz");
    const Vec3 rpy = parse_vec3(node->get<std::string>("<xmlattr>.rpy", "0 0 0"), source, "rpy");
    origin.translation = xyz;
    origin.rotation = rpy_to_rotation(rpy.x(), rpy.y(), rpy.z());
  }
  return origin;
}

Link parse_link(const pt::ptree& element, const std::string& source) {
  Link link;
  link.name = element.get<std::string>("<xmlattr>.name", "");
  if (link.name.empty()) throw ParseError(source, 0, "link without a name attribute");

  if (auto inertial = element.get_child_optional("inertial")) {
    link.has_inertia = true;
    link.inertia.mass = inertial->get<double>("mass.<xmlattr>.value", 0.0);
    if (link.inertia.mass < 0.0)
      throw ParseError(source, 0, "link '" + link.name + "' has negative mass");
    link.inertia.com = parse_origin(*inertial, source).translation;
    if (auto inertia = inertial->get_child_optional("inertia")) {
      const double ixx = inertia->get<double>("<xmlattr>.ixx", 0.0);
      const double ixy = inertia->get<double>("<xmlattr>.ixy", 0.0);
      const double ixz = inertia->get<double>("<xmlattr>.ixz", 0.0);
      const double iyy = inertia->get<double>("<xmlattr>.iyy", 0.0);
      const double iyz = inertia->get<double>("<xmlattr>.iyz", 0.0);
      const double izz = inertia->get<double>("<xmlattr>.izz", 0.0);
      link.inertia.inertia << ixx, ixy, ixz, ixy, iyy, iyz, ixz, iyz, izz;
    }
  }
  return link;
}

JointSpec parse_joint(const pt::ptree& element, const std::string& source,
                      std::vector<Diagnostic>* diagnostics) {
  JointSpec joint;
  joint.name = element.get<std::string>("<xmlattr>.name", "");
  if (joint.name.empty()) throw ParseError(source, 0, "joint without a name attribute");

  const std::string type = element.get<std::string>("<xmlattr>.type", "");
  auto kind = joint_kind_from_string(type);
  if (!kind)
    throw ParseError(source, 0, "unknown joint kind '" + type + "' on joint '" + joint.name + "'");
  joint.kind = *kind;

  if (element.get_child_optional("mimic"))
    throw ParseError(source, 0, "joint '" + joint.name + "' uses unsupported mimic");

  joint.parent_link = element.get<std::string>("parent.<xmlattr>.link", "");
  joint.child_link = element.get<std::string>("child.<xmlattr>.link", "");
  if (joint.parent_link.empty() || joint.child_link.empty())
    throw ParseError(source, 0, "joint '" + joint.name + "' lacks parent or child link");

  joint.origin = parse_origin(element, source);

  if (auto axis = element.get_child_optional("axis"))
    joint.axis = parse_vec3(axis->get<std::string>("<xmlattr>.xyz", "1 0 0"), source, "axis");

  if (joint.moves()) {
    const double norm = joint.axis.norm();
    if (norm < 1e-12)
      throw ParseError(source, 0, "joint '" + joint.name + "' has a zero axis");
    if (std::abs(norm - 1.0) > 1e-9 && diagnostics)
      diagnostics->push_back({Severity::note, joint.name, "non-unit axis normalized"});
    joint.axis /= norm;
  }

  if (auto limit = element.get_child_optional("limit")) {
    if (auto v = limit->get_optional<double>("<xmlattr>.velocity")) joint.velocity_limit = *v;
    if (auto e = limit->get_optional<double>("<xmlattr>.effort")) joint.effort_limit = *e;
  }
  return joint;
}

}  // namespace

RobotModel parse_urdf(const std::string& xml_text, std::vector<Diagnostic>* diagnostics,
                      const std::string& source_name) {
  pt::ptree tree;
  try {
    std::istringstream in(xml_text);
    pt::read_xml(in, tree, pt::xml_parser::trim_whitespace);
  } catch (const pt::xml_parser_error& e) {
    throw ParseError(source_name, static_cast<int>(e.line()), "malformed XML: " + e.message());
  }

  auto robot = tree.get_child_optional("robot");
  if (!robot) throw ParseError(source_name, 0, "no <robot> root element");

  std::vector<Link> links;
  std::vector<JointSpec> joints;
  for (const auto& [key, element] : *robot) {
    if (key == "link") {
      links.push_back(parse_link(element, source_name));
    } else if (key == "joint") {
      joints.push_back(parse_joint(element, source_name, diagnostics));
    }
    // visual, collision, transmission, material, gazebo, ... are ignored
  }

  // a terminal link may omit its inertial block (e.g. a tool flange frame)
  std::unordered_set<std::string> parents;
  for (const JointSpec& joint : joints) parents.insert(joint.parent_link);
  for (const Link& link : links) {
    if (!link.has_inertia && parents.count(link.name))
      throw ParseError(source_name, 0,
                       "non-terminal link '" + link.name + "' has no inertial block");
  }

  try {
    return RobotModel::make(robot->get<std::string>("<xmlattr>.name", "robot"),
                            std::move(links), std::move(joints));
  } catch (const ParseError&) {
    throw;
  } catch (const InputError& e) {
    throw ParseError(source_name, 0, e.what());
  }
}

RobotModel load_urdf_file(const std::string& path, std::vector<Diagnostic>* diagnostics) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open URDF file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_urdf(buffer.str(), diagnostics, path);
}

}  // namespace robenergy
