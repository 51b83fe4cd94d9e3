#pragma once

namespace polyent {

inline constexpr const char* kToolName = "polyent";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace polyent
