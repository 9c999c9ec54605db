#pragma once

namespace geoplan::cli {

inline constexpr int kExitFeasible = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitInfeasible = 2;

/// Entry point for `geoplan solve | bench | oracle | gen`.
int run(int argc, const char *const *argv);

} // namespace geoplan::cli
