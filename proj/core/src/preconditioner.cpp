#include "asgld/preconditioner.hpp"

#include <cmath>
#include <string>

#include "asgld/errors.hpp"

namespace asgld {

Preconditioner::Preconditioner(int dim, double delta) : delta_(delta) {
  if (dim < 1) throw ConfigError("Preconditioner: dimension must be >= 1, got " + std::to_string(dim));
  if (!(delta > 0.0)) throw ConfigError("Preconditioner: delta must be positive, got " + std::to_string(delta));
  diag_.assign(static_cast<std::size_t>(dim), delta);
}

void Preconditioner::update(std::span<const double> g) {
  if (g.size() != diag_.size()) {
    throw ContractError("Preconditioner::update: gradient has dimension " + std::to_string(g.size()) +
                        ", expected " + std::to_string(diag_.size()));
  }
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!std::isfinite(g[i])) {
      throw NumericError("Preconditioner::update: non-finite gradient entry at coordinate " + std::to_string(i));
    }
  }
  for (std::size_t i = 0; i < g.size(); ++i) {
    diag_[i] += g[i] * g[i] + delta_;
    if (!std::isfinite(diag_[i])) {
      throw NumericError("Preconditioner::update: accumulator overflow at coordinate " + std::to_string(i));
    }
  }
  ++step_count_;
}

std::vector<double> Preconditioner::power(double phi) const {
  std::vector<double> out(diag_.size());
  power_into(phi, out);
  return out;
}

void Preconditioner::power_into(double phi, std::span<double> out) const {
  if (out.size() != diag_.size()) {
    throw ContractError("Preconditioner::power_into: output has dimension " + std::to_string(out.size()) +
                        ", expected " + std::to_string(diag_.size()));
  }
  if (phi == 0.0) {
    for (double& x : out) x = 1.0;
  } else if (phi == 0.5) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = 1.0 / std::sqrt(diag_[i]);
  } else if (phi == 1.0) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = 1.0 / diag_[i];
  } else {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::pow(diag_[i], -phi);
  }
}

}  // namespace asgld
