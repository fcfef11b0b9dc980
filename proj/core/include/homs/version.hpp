#pragma once

namespace homs {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace homs
