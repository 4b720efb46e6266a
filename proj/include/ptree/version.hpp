#pragma once

namespace ptree {

inline constexpr const char* version = "0.1.0";

}  // namespace ptree
