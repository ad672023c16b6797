#pragma once

namespace tfs {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace tfs
