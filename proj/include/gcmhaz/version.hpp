#pragma once

namespace gcmhaz {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace gcmhaz
