#pragma once

#include <iosfwd>

namespace osar {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

/// Entry point of the `osar` tool. Subcommands: run, sweep, compare-bp,
/// dict-gallery, memory-table. Returns 0 on success, 1 on runtime failure,
/// 2 on usage or configuration errors.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace osar
