#pragma once

namespace helmscat {

inline constexpr const char* kVersion = "0.1.0";

} // namespace helmscat
