#pragma once

#include <string>
#include <vector>

#include "robenergy/model.hpp"

namespace robenergy {

/// Parses the URDF subset: revolute, continuous, prismatic and fixed joints;
/// visual, collision and transmission elements are ignored. Joint axes are
/// normalized at parse time (a note diagnostic is emitted for non-unit axes).
///
/// Throws ParseError on malformed XML, unknown joint kinds, mimic joints,
/// negative masses, missing inertial blocks on non-terminal links, and
/// disconnected or cyclic trees.
RobotModel parse_urdf(const std::string& xml_text,
                      std::vector<Diagnostic>* diagnostics = nullptr,
                      const std::string& source_name = "<string>");

RobotModel load_urdf_file(const std::string& path,
                          std::vector<Diagnostic>* diagnostics = nullptr);

}  // namespace robenergy
