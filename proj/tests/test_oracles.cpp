#include <algorithm>
#include <cmath>
#include <doctest.h>

#include "asgld/errors.hpp"
#include "asgld/gradient_check.hpp"
#include "asgld/problems/gaussian_variance_mle.hpp"
#include "asgld/problems/quadratic.hpp"
#include "test_problems.hpp"

using namespace asgld;
using problems::GaussianVarianceMle;
using problems::QuadraticProblem;
using problems::Rotation;

TEST_SUITE_BEGIN("oracles");

TEST_CASE("mle objective on single-sample datasets") {
  const GaussianVarianceMle one_one({{1.0, 1.0}});
  CHECK(one_one.objective({1.0, 1.0}) == doctest::Approx(2.0).epsilon(1e-15));

  const GaussianVarianceMle zeros({{0.0, 0.0}});
  const double e = std::exp(1.0);
  CHECK(zeros.objective({e, e}) == doctest::Approx(2.0).epsilon(1e-14));

  CHECK_THROWS_AS(one_one.objective({-1.0, 1.0}), DomainError);
}

TEST_CASE("mle gradient vanishes at the sample moments") {
  const GaussianVarianceMle mle(10000, 1);
  const Vec opt = mle.sample_moments();
  CHECK(opt[0] == doctest::Approx(0.1).epsilon(0.1));
  CHECK(opt[1] == doctest::Approx(10.0).epsilon(0.1));
  CHECK(norm2(mle.full_gradient(opt)) < 1e-8);
}

TEST_CASE("mle per-sample stochastic gradient") {
  const GaussianVarianceMle mle({{2.0, 0.0}});
  Rng rng(1);
  const Vec g = mle.stochastic_gradient({1.0, 1.0}, 1, rng);
  CHECK(g[0] == doctest::Approx(-3.0).epsilon(1e-15));
  CHECK(g[1] == doctest::Approx(1.0).epsilon(1e-15));

  CHECK_THROWS_AS(mle.stochastic_gradient({1.0, 1.0}, 2, rng), ConfigError);
  CHECK_THROWS_AS(mle.stochastic_gradient({1.0, 1.0}, 0, rng), ConfigError);
}

TEST_CASE("mle full batch degenerates to the exact gradient") {
  const GaussianVarianceMle mle(500, 3);
  Rng rng(9);
  const Vec x{0.4, 7.0};
  const Vec g = mle.stochastic_gradient(x, 500, rng);
  const Vec full = mle.full_gradient(x);
  CHECK(g == full);
}

TEST_CASE("stochastic gradients are unbiased (3 sigma at N = 10^4)") {
  const GaussianVarianceMle mle(10000, 5);
  const Vec x{0.5, 5.0};
  const Vec full = mle.full_gradient(x);
  Rng rng(17);
  const int n_draws = 10000;
  Vec mean(2, 0.0), m2(2, 0.0);
  for (int i = 0; i < n_draws; ++i) {
    const Vec g = mle.stochastic_gradient(x, 1, rng);
    for (int c = 0; c < 2; ++c) {
      const double d = g[c] - mean[c];
      mean[c] += d / (i + 1);
      m2[c] += d * (g[c] - mean[c]);
    }
  }
  for (int c = 0; c < 2; ++c) {
    const double se = std::sqrt(m2[c] / (n_draws - 1)) / std::sqrt(static_cast<double>(n_draws));
    CHECK(std::abs(mean[c] - full[c]) <= 3.0 * se);
  }

  // Same law for the additive-noise quadratic oracle.
  const auto saddle = QuadraticProblem::saddle(3, 1.0, 1.0, 0.7);
  const Vec xs{0.2, -0.1, 0.4};
  const Vec fs = saddle.full_gradient(xs);
  Rng rng2(23);
  Vec smean(3, 0.0);
  for (int i = 0; i < n_draws; ++i) {
    const Vec g = saddle.stochastic_gradient(xs, 1, rng2);
    for (int c = 0; c < 3; ++c) smean[c] += g[c];
  }
  for (int c = 0; c < 3; ++c) {
    smean[c] /= n_draws;
    const double se = 0.7 / std::sqrt(static_cast<double>(n_draws));
    CHECK(std::abs(smean[c] - fs[c]) <= 3.0 * se);
  }
}

TEST_CASE("variance shrinks like 1/B (within 30%, with the finite-population correction)") {
  const long n = 10000;
  const GaussianVarianceMle mle(n, 7);
  const Vec x{0.3, 8.0};
  Rng rng(31);
  const int n_draws = 20000;
  const long batches[] = {1, 10, 100};
  double var1[2] = {0, 0};
  for (const long B : batches) {
    Vec mean(2, 0.0), m2(2, 0.0);
    for (int i = 0; i < n_draws; ++i) {
      const Vec g = mle.stochastic_gradient(x, B, rng);
      for (int c = 0; c < 2; ++c) {
        const double d = g[c] - mean[c];
        mean[c] += d / (i + 1);
        m2[c] += d * (g[c] - mean[c]);
      }
    }
    for (int c = 0; c < 2; ++c) {
      const double var = m2[c] / (n_draws - 1);
      const double correction = static_cast<double>(n - B) / static_cast<double>(n - 1);
      if (B == 1) {
        var1[c] = var;
      } else {
        const double expected = var1[c] / static_cast<double>(B) * correction;
        CHECK(var / expected > 0.7);
        CHECK(var / expected < 1.3);
      }
    }
  }
}

TEST_CASE("gradient stream is deterministic in the seeds") {
  const GaussianVarianceMle a(300, 12), b(300, 12);
  Rng ra(5), rb(5);
  const Vec x{0.7, 2.0};
  for (int i = 0; i < 50; ++i) {
    CHECK(a.stochastic_gradient(x, 7, ra) == b.stochastic_gradient(x, 7, rb));
  }
}

TEST_CASE("saddle gradients") {
  const auto saddle = QuadraticProblem::saddle(2, 1.0, 1.0, 0.0);
  CHECK(saddle.full_gradient({0.0, 0.0}) == Vec{0.0, 0.0});
  const Vec g = saddle.full_gradient({1.0, 1.0});
  CHECK(g[0] == doctest::Approx(-1.0));
  CHECK(g[1] == doctest::Approx(1.0));
  CHECK(saddle.metadata().saddle_gamma == 1.0);
  CHECK(saddle.objective({0.0, 0.0}) == 0.0);
}

TEST_CASE("rotations are orthogonal and rotated gradients match finite differences") {
  const Rotation rot = Rotation::random(6, 99);
  Rng rng(3);
  Vec x(6);
  rng.fill_normal(x);
  const Vec y = rot.apply(x);
  CHECK(norm2(y) == doctest::Approx(norm2(x)).epsilon(1e-12));
  const Vec back = rot.apply_transpose(y);
  for (int i = 0; i < 6; ++i) CHECK(back[i] == doctest::Approx(x[i]).epsilon(1e-12));

  const auto rotated = QuadraticProblem::saddle(6, 1.5, 0.8, 0.0, /*rotation_seed=*/4);
  Vec p(6);
  rng.fill_normal(p);
  CHECK(fd_gradient_check(rotated, p, 1e-5) < 1e-6);
}

TEST_CASE("finite-difference checker") {
  const auto saddle = QuadraticProblem::saddle(4, 2.0, 1.0, 0.0);
  CHECK(fd_gradient_check(saddle, {0.5, -0.3, 0.2, 0.8}, 1e-5) < 1e-6);

  const GaussianVarianceMle mle(2000, 21);
  CHECK(fd_gradient_check(mle, {1.0, 5.0}, 1e-6) < 1e-4);

  const asgld_test::ConstantProblem flat(3);
  CHECK(fd_gradient_check(flat, {0.1, 0.2, 0.3}, 1e-5) == 0.0);
}

TEST_CASE("mle projection clamps to the floor") {
  const GaussianVarianceMle mle(10, 2, /*floor=*/1e-6);
  const Vec p = mle.project({-3.0, 0.5});
  CHECK(p[0] == 1e-6);
  CHECK(p[1] == 0.5);
}

TEST_CASE("bowl spectrum, start and metadata") {
  const auto bowl = QuadraticProblem::bowl(8, 0.1, 1.0, 0.5, 3.0, 7);
  CHECK(bowl.is_convex());
  CHECK(bowl.metadata().lipschitz_M == doctest::Approx(1.0));
  CHECK(norm2(bowl.default_start()) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(*bowl.error_metric(bowl.default_start()) == doctest::Approx(9.0).epsilon(1e-12));
  const auto spec = bowl.spectrum();
  CHECK(spec.front() == doctest::Approx(0.1));
  CHECK(spec.back() == doctest::Approx(1.0));
  CHECK(std::is_sorted(spec.begin(), spec.end()));
}

TEST_SUITE_END();
