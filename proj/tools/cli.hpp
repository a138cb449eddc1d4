#pragma once

#include <iosfwd>

namespace cocycle::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitFailure = 2;

// Runs one subcommand (barycentric, exponent, spectrum, certify, slice,
// butterfly, furstenberg). Returns 0 on success, 1 on a usage error (bad
// flag, bad value, unknown config key) and 2 when the computation or its
// output failed.
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cocycle::cli
