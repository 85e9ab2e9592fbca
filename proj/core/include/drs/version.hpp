#pragma once

namespace drs {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace drs
