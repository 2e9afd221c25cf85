#pragma once

namespace nlexp {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace nlexp
