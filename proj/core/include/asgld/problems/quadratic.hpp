#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "asgld/problem.hpp"

namespace asgld::problems {

/// Orthogonal map represented as a product of Householder reflectors,
/// orthogonal by construction. Identity when empty.
class Rotation {
 public:
  Rotation() = default;

  /// Seeded random rotation in d dimensions (d reflectors from random unit
  /// normals).
  static Rotation random(int dim, std::uint64_t seed);

  bool is_identity() const { return reflectors_.empty(); }

  Vec apply(const Vec& x) const;
  Vec apply_transpose(const Vec& x) const;

 private:
  std::vector<Vec> reflectors_;
};

/// Quadratic form f(x) = 0.5 * x' R' diag(spectrum) R x with an additive
/// Gaussian stochastic-gradient oracle:
///
///   G(x) = grad f(x) + (noise_std / sqrt(B)) * z,  z ~ N(0, I).
///
/// A spectrum with one negative eigenvalue -gamma makes the origin a
/// gamma-strict saddle; an all-positive spectrum is a convex bowl with its
/// minimum at the origin.
class QuadraticProblem final : public Problem {
 public:
  QuadraticProblem(Vec spectrum, double noise_std, Rotation rotation = {}, Vec start = {});

  /// Saddle with eigenvalues (-gamma, l_1, ..., l_{d-1}) where
  /// l_j = positive_eig * j^(-eig_decay), and the start pinned to the saddle
  /// point itself. eig_decay = 0 gives a flat positive spectrum.
  static QuadraticProblem saddle(int dim, double gamma, double positive_eig, double noise_std,
                                 std::optional<std::uint64_t> rotation_seed = std::nullopt,
                                 double eig_decay = 0.0);

  /// Convex bowl with log-spaced eigenvalues in [eig_min, eig_max] and a
  /// seeded random start of the given radius.
  static QuadraticProblem bowl(int dim, double eig_min, double eig_max, double noise_std,
                               double start_radius, std::uint64_t seed,
                               std::optional<std::uint64_t> rotation_seed = std::nullopt);

  int dimension() const override { return static_cast<int>(spectrum_.size()); }
  double objective(const Vec& x) const override;
  Vec full_gradient(const Vec& x) const override;
  Vec stochastic_gradient(const Vec& x, long batch, Rng& rng) const override;
  const ProblemMetadata& metadata() const override { return metadata_; }
  std::optional<std::uint64_t> dataset_seed() const override { return seed_; }
  std::optional<double> error_metric(const Vec& x) const override;
  Vec default_start() const override { return start_; }

  const Vec& spectrum() const { return spectrum_; }
  double noise_std() const { return noise_std_; }
  bool is_convex() const { return convex_; }

 private:
  Vec spectrum_;
  double noise_std_;
  Rotation rotation_;
  Vec start_;
  bool convex_ = true;
  std::optional<std::uint64_t> seed_;
  ProblemMetadata metadata_;
};

}  // namespace asgld::problems
