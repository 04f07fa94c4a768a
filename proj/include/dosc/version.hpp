#pragma once

namespace dosc {

inline constexpr const char* kToolName = "dosc";
inline constexpr const char* kVersion = "0.1.0";

} // namespace dosc
