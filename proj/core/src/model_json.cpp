#include "robenergy/model_json.hpp"

#include <nlohmann/json.hpp>

#include "robenergy/errors.hpp"

namespace robenergy {

namespace {

using json = nlohmann::ordered_json;

json vec3_to_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

Vec3 vec3_from_json(const json& node) {
  if (!node.is_array() || node.size() != 3) throw ParseError("expected a 3-vector");
  return {node[0].get<double>(), node[1].get<double>(), node[2].get<double>()};
}

json mat3_to_json(const Mat3& m) {
  json rows = json::array();
  for (int r = 0; r < 3; ++r) rows.push_back(json::array({m(r, 0), m(r, 1), m(r, 2)}));
  return rows;
}

Mat3 mat3_from_json(const json& node) {
  if (!node.is_array() || node.size() != 3) throw ParseError("expected a 3x3 matrix");
  Mat3 m;
  for (int r = 0; r < 3; ++r) {
    if (!node[r].is_array() || node[r].size() != 3) throw ParseError("expected a 3x3 matrix");
    for (int c = 0; c < 3; ++c) m(r, c) = node[r][c].get<double>();
  }
  return m;
}

}  // namespace

std::string model_to_json(const RobotModel& model) {
  json doc;
  doc["name"] = model.name();
  doc["gravity"] = vec3_to_json(model.gravity());

  json links = json::array();
  for (const Link& link : model.links()) {
    json node;
    node["name"] = link.name;
    if (link.has_inertia) {
      node["inertial"] = {{"mass", link.inertia.mass},
                          {"com", vec3_to_json(link.inertia.com)},
                          {"inertia", mat3_to_json(link.inertia.inertia)}};
    }
    links.push_back(std::move(node));
  }
  doc["links"] = std::move(links);

  json joints = json::array();
  for (const JointSpec& joint : model.joints()) {
    json node;
    node["name"] = joint.name;
    node["kind"] = to_string(joint.kind);
    node["parent"] = joint.parent_link;
    node["child"] = joint.child_link;
    node["origin"] = {{"rotation", mat3_to_json(joint.origin.rotation)},
                      {"translation", vec3_to_json(joint.origin.translation)}};
    node["axis"] = vec3_to_json(joint.axis);
    if (joint.velocity_limit) node["velocity_limit"] = *joint.velocity_limit;
    if (joint.effort_limit) node["effort_limit"] = *joint.effort_limit;
    joints.push_back(std::move(node));
  }
  doc["joints"] = std::move(joints);
  return doc.dump(2) + "\n";
}

RobotModel model_from_json(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("model JSON: ") + e.what());
  }

  try {
    std::vector<Link> links;
    for (const auto& node : doc.at("links")) {
      Link link;
      link.name = node.at("name").get<std::string>();
      if (node.contains("inertial")) {
        link.has_inertia = true;
        const auto& inertial = node["inertial"];
        link.inertia.mass = inertial.at("mass").get<double>();
        link.inertia.com = vec3_from_json(inertial.at("com"));
        link.inertia.inertia = mat3_from_json(inertial.at("inertia"));
      }
      links.push_back(std::move(link));
    }

    std::vector<JointSpec> joints;
    for (const auto& node : doc.at("joints")) {
      JointSpec joint;
      joint.name = node.at("name").get<std::string>();
      const auto kind = joint_kind_from_string(node.at("kind").get<std::string>());
      if (!kind) throw ParseError("unknown joint kind '" + node["kind"].get<std::string>() + "'");
      joint.kind = *kind;
      joint.parent_link = node.at("parent").get<std::string>();
      joint.child_link = node.at("child").get<std::string>();
      joint.origin.rotation = mat3_from_json(node.at("origin").at("rotation"));
      joint.origin.translation = vec3_from_json(node.at("origin").at("translation"));
      joint.axis = vec3_from_json(node.at("axis"));
      if (node.contains("velocity_limit")) joint.velocity_limit = node["velocity_limit"].get<double>();
      if (node.contains("effort_limit")) joint.effort_limit = node["effort_limit"].get<double>();
      joints.push_back(std::move(joint));
    }

    return RobotModel::make(doc.at("name").get<std::string>(), std::move(links),
                            std::move(joints), vec3_from_json(doc.at("gravity")));
  } catch (const json::exception& e) {
    throw ParseError(std::string("model JSON: ") + e.what());
  }
}

}  // namespace robenergy
