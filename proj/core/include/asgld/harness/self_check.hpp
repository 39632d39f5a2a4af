#pragma once

#include <iosfwd>

namespace asgld::harness {

/// Fast invariant self-tests (accumulator laws, method reductions, oracle
/// sanity, determinism, spec round-trip). Prints one line per check and
/// returns 0 when everything passes; intended for the CLI `check` command.
int run_self_check(std::ostream& out);

}  // namespace asgld::harness
