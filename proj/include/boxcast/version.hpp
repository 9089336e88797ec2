#pragma once

namespace boxcast {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace boxcast
