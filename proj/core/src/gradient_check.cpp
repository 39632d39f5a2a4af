#include "asgld/gradient_check.hpp"

#include <algorithm>
#include <cmath>

#include "asgld/errors.hpp"

namespace asgld {

double fd_gradient_check(const Problem& problem, const Vec& x, double h) {
  if (!(h > 0.0)) throw ConfigError("fd_gradient_check: h must be positive");
  if (static_cast<int>(x.size()) != problem.dimension()) {
    throw ContractError("fd_gradient_check: point dimension mismatch");
  }
  const Vec g = problem.full_gradient(x);
  Vec xx = x;
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    xx[i] = x[i] + h;
    const double fp = problem.objective(xx);
    xx[i] = x[i] - h;
    const double fm = problem.objective(xx);
    xx[i] = x[i];
    const double fd = (fp - fm) / (2.0 * h);
    const double scale = std::max({1.0, std::abs(fd), std::abs(g[i])});
    worst = std::max(worst, std::abs(fd - g[i]) / scale);
  }
  return worst;
}

}  // namespace asgld
