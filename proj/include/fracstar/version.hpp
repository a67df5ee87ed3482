#pragma once

namespace fracstar {

inline constexpr const char* kVersion = "0.1.0";

// Per-module schema/behavior versions, emitted in table metadata so output
// files can be traced back to the code that produced them.
inline constexpr int kGammaModuleVersion = 1;
inline constexpr int kSeriesModuleVersion = 1;
inline constexpr int kWrightModuleVersion = 1;
inline constexpr int kEvolutionModuleVersion = 1;
inline constexpr int kCliModuleVersion = 1;

} // namespace fracstar
