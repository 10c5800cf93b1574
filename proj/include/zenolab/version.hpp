#pragma once

namespace zenolab {
inline constexpr const char* version = "0.1.0";
}
