#pragma once

namespace rotorsim {
inline constexpr const char* kToolName = "rotorsim";
inline constexpr const char* kVersion = "1.0.0";
}  // namespace rotorsim
