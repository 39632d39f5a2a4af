#pragma once

namespace asgld {

inline constexpr const char* kLibraryName = "asgld";
inline constexpr const char* kLibraryVersion = "0.1.0";

}  // namespace asgld
