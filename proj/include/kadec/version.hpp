#pragma once

namespace kadec {

inline constexpr const char* version = "0.1.0";

} // namespace kadec
