#pragma once

namespace polsim {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace polsim
