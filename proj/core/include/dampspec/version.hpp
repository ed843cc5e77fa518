#pragma once

namespace dampspec {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kGeneratedBy = "dampspec 0.1.0";

} // namespace dampspec
