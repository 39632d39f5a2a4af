#pragma once

#include "asgld/problem.hpp"

namespace asgld {

/// Central finite differences of problem.objective() against
/// problem.full_gradient() at x. Returns the maximum over coordinates of
///
///   |fd_i - g_i| / max(1, |fd_i|, |g_i|).
///
/// x must be interior to the feasible region by at least h per coordinate;
/// evaluations outside the domain surface as DomainError.
double fd_gradient_check(const Problem& problem, const Vec& x, double h);

}  // namespace asgld
