#pragma once

#include <iosfwd>

#include "osar/solver.hpp"

namespace osar {

// Text checkpoint of (A, b, L, c_hat, t, n). Floats are written as C99 hex
// literals so a save/load round trip is bit-exact.
//
//   osar-checkpoint 1
//   atoms <M>
//   pulse_count <n>
//   fallbacks <k>
//   started <0|1>
//   momentum_t <hex>
//   lipschitz <hex>
//   c_hat            followed by M lines: <hex>
//   b                followed by M lines: <re> <im>
//   A                followed by M lines of M pairs: <re> <im> ...
void save_checkpoint(std::ostream& out, const SolverState& state);

/// Throws ConfigError on malformed input.
SolverState load_checkpoint(std::istream& in);

}  // namespace osar
