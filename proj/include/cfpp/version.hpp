#pragma once

namespace cfpp {

inline constexpr const char* version = "0.1.0";

}  // namespace cfpp
