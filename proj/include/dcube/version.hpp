#pragma once

namespace dcube {
inline constexpr const char* kVersion = "1.0.0";
}
