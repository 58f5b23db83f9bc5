#pragma once

namespace robenergy {

inline constexpr const char* kToolkitVersion = "1.0.0";
inline constexpr int kReportVersion = 1;

}  // namespace robenergy
