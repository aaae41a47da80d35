#pragma once

namespace nct {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace nct
