#include "asgld/problems/quadratic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "asgld/errors.hpp"

namespace asgld::problems {

Rotation Rotation::random(int dim, std::uint64_t seed) {
  if (dim < 1) throw ConfigError("Rotation: dimension must be >= 1");
  Rotation rot;
  Rng rng(derive_seed(seed, /*tag=*/0x0907));
  rot.reflectors_.reserve(static_cast<std::size_t>(dim));
  for (int r = 0; r < dim; ++r) {
    Vec v(static_cast<std::size_t>(dim));
    double nrm = 0.0;
    do {
      rng.fill_normal(v);
      nrm = norm2(v);
    } while (nrm < 1e-12);
    for (double& x : v) x /= nrm;
    rot.reflectors_.push_back(std::move(v));
  }
  return rot;
}

static Vec reflect_chain(const std::vector<Vec>& vs, const Vec& x, bool forward) {
  Vec y = x;
  const auto reflect = [&y](const Vec& v) {
    const double p = 2.0 * dot(v, y);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] -= p * v[i];
  };
  if (forward) {
    for (auto it = vs.rbegin(); it != vs.rend(); ++it) reflect(*it);
  } else {
    for (const auto& v : vs) reflect(v);
  }
  return y;
}

Vec Rotation::apply(const Vec& x) const {
  if (is_identity()) return x;
  return reflect_chain(reflectors_, x, /*forward=*/true);
}

Vec Rotation::apply_transpose(const Vec& x) const {
  if (is_identity()) return x;
  return reflect_chain(reflectors_, x, /*forward=*/false);
}

QuadraticProblem::QuadraticProblem(Vec spectrum, double noise_std, Rotation rotation, Vec start)
    : spectrum_(std::move(spectrum)), noise_std_(noise_std), rotation_(std::move(rotation)), start_(std::move(start)) {
  if (spectrum_.empty()) throw ConfigError("QuadraticProblem: empty spectrum");
  if (!(noise_std_ >= 0.0)) throw ConfigError("QuadraticProblem: noise_std must be >= 0");
  if (start_.empty()) start_ = zeros(spectrum_.size());
  if (start_.size() != spectrum_.size()) throw ConfigError("QuadraticProblem: start dimension mismatch");

  double lam_min = spectrum_[0], lam_abs_max = 0.0;
  for (double lam : spectrum_) {
    lam_min = std::min(lam_min, lam);
    lam_abs_max = std::max(lam_abs_max, std::abs(lam));
  }
  convex_ = lam_min > 0.0;
  metadata_.lipschitz_M = lam_abs_max;
  metadata_.grad_var_C = noise_std_ * noise_std_ * static_cast<double>(spectrum_.size());
  if (convex_) {
    metadata_.optimum = zeros(spectrum_.size());
    metadata_.optimum_value = 0.0;
  } else if (lam_min < 0.0) {
    metadata_.saddle_gamma = -lam_min;
  }
}

QuadraticProblem QuadraticProblem::saddle(int dim, double gamma, double positive_eig, double noise_std,
                                          std::optional<std::uint64_t> rotation_seed, double eig_decay) {
  if (dim < 2) throw ConfigError("QuadraticProblem::saddle: need dim >= 2");
  if (!(gamma > 0.0)) throw ConfigError("QuadraticProblem::saddle: gamma must be positive");
  if (!(positive_eig > 0.0)) throw ConfigError("QuadraticProblem::saddle: positive_eig must be positive");
  if (!(eig_decay >= 0.0)) throw ConfigError("QuadraticProblem::saddle: eig_decay must be >= 0");
  Vec spec(static_cast<std::size_t>(dim));
  spec[0] = -gamma;
  for (int j = 1; j < dim; ++j) {
    spec[static_cast<std::size_t>(j)] = positive_eig * std::pow(static_cast<double>(j), -eig_decay);
  }
  Rotation rot;
  if (rotation_seed) rot = Rotation::random(dim, *rotation_seed);
  QuadraticProblem p(std::move(spec), noise_std, std::move(rot));
  p.seed_ = rotation_seed;
  return p;
}

QuadraticProblem QuadraticProblem::bowl(int dim, double eig_min, double eig_max, double noise_std,
                                        double start_radius, std::uint64_t seed,
                                        std::optional<std::uint64_t> rotation_seed) {
  if (dim < 1) throw ConfigError("QuadraticProblem::bowl: need dim >= 1");
  if (!(eig_min > 0.0) || !(eig_max >= eig_min)) {
    throw ConfigError("QuadraticProblem::bowl: need 0 < eig_min <= eig_max");
  }
  Vec spec(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) {
    const double t = dim == 1 ? 1.0 : static_cast<double>(i) / static_cast<double>(dim - 1);
    spec[static_cast<std::size_t>(i)] = std::exp(std::log(eig_min) + t * (std::log(eig_max) - std::log(eig_min)));
  }
  Rng rng(derive_seed(seed, /*tag=*/0xB0A7));
  Vec start(static_cast<std::size_t>(dim));
  double nrm = 0.0;
  do {
    rng.fill_normal(start);
    nrm = norm2(start);
  } while (nrm < 1e-12);
  for (double& x : start) x *= start_radius / nrm;
  Rotation rot;
  if (rotation_seed) rot = Rotation::random(dim, *rotation_seed);
  QuadraticProblem p(std::move(spec), noise_std, std::move(rot), std::move(start));
  p.seed_ = seed;
  return p;
}

double QuadraticProblem::objective(const Vec& x) const {
  if (x.size() != spectrum_.size()) throw ContractError("QuadraticProblem: dimension mismatch");
  const Vec y = rotation_.apply(x);
  double s = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) s += spectrum_[i] * y[i] * y[i];
  return 0.5 * s;
}

Vec QuadraticProblem::full_gradient(const Vec& x) const {
  if (x.size() != spectrum_.size()) throw ContractError("QuadraticProblem: dimension mismatch");
  Vec y = rotation_.apply(x);
  for (std::size_t i = 0; i < y.size(); ++i) y[i] *= spectrum_[i];
  return rotation_.apply_transpose(y);
}

Vec QuadraticProblem::stochastic_gradient(const Vec& x, long batch, Rng& rng) const {
  if (batch < 1) throw ConfigError("QuadraticProblem: batch must be >= 1");
  Vec g = full_gradient(x);
  if (noise_std_ > 0.0) {
    const double scale = noise_std_ / std::sqrt(static_cast<double>(batch));
    for (double& v : g) v += scale * rng.normal();
  }
  return g;
}

std::optional<double> QuadraticProblem::error_metric(const Vec& x) const {
  if (!convex_) return std::nullopt;
  return norm2_sq(x);
}

}  // namespace asgld::problems
