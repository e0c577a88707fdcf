#pragma once

#include <iosfwd>

namespace trunca::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitRuntime = 3;

/// Runs the command line in-process; output goes to out unless --out is given.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace trunca::cli
