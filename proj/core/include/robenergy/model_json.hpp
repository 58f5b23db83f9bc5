#pragma once

#include <string>

#include "robenergy/model.hpp"

namespace robenergy {

// Canonical JSON serialization of a robot model (see docs/formats.md).
// Rotations are stored as row-major 3x3 matrices so that a serialize/parse
// round trip reproduces every field bit-exactly.

std::string model_to_json(const RobotModel& model);
RobotModel model_from_json(const std::string& json_text);

}  // namespace robenergy
