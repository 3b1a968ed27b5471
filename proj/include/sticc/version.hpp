#pragma once

namespace sticc {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace sticc
