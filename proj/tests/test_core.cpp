#include <algorithm>
#include <cmath>
#include <doctest.h>

#include "asgld/batch_schedule.hpp"
#include "asgld/vec.hpp"
#include "asgld/errors.hpp"
#include "asgld/method_config.hpp"
#include "asgld/preconditioner.hpp"
#include "asgld/rng.hpp"

using namespace asgld;

TEST_SUITE_BEGIN("core");

TEST_CASE("preconditioner initialization") {
  Preconditioner p(3, 0.1);
  CHECK(p.diag() == std::vector<double>{0.1, 0.1, 0.1});
  CHECK(p.step_count() == 0);

  Preconditioner q(1, 1.0);
  CHECK(q.diag() == std::vector<double>{1.0});

  CHECK_THROWS_AS(Preconditioner(2, 0.0), ConfigError);
  CHECK_THROWS_AS(Preconditioner(0, 0.5), ConfigError);
}

TEST_CASE("preconditioner update rule") {
  Preconditioner p(2, 0.1);
  p.update(Vec{1.0, 2.0});
  CHECK(p.diag()[0] == doctest::Approx(1.2).epsilon(1e-15));
  CHECK(p.diag()[1] == doctest::Approx(4.2).epsilon(1e-15));
  CHECK(p.step_count() == 1);

  Preconditioner q(2, 0.5);
  q.update(Vec{3.0, 3.0});  // bring diag to 10, 10
  q.update(Vec{0.0, 0.0});
  CHECK(q.diag()[0] == doctest::Approx(10.5));

  Preconditioner r(1, 1.0);
  CHECK_THROWS_AS(r.update(Vec{std::nan("")}), NumericError);
  CHECK_THROWS_AS(r.update(Vec{1.0, 2.0}), ContractError);
}

TEST_CASE("preconditioner powers") {
  Preconditioner q(2, 1.0);
  // delta 1 + g^2 + 1 per entry: diag = (4, 9)
  q.update(Vec{std::sqrt(2.0), std::sqrt(7.0)});  // diag = (4, 9)
  const auto half = q.power(0.5);
  CHECK(half[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(half[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  const auto zero = q.power(0.0);
  CHECK(zero == std::vector<double>{1.0, 1.0});

  Preconditioner r(2, 2.0);
  r.update(Vec{0.0, 2.0});  // diag = (4, 8)... adjust: 2 + 0 + 2 = 4; 2 + 4 + 2 = 8
  const auto inv = r.power(1.0);
  CHECK(inv[0] == doctest::Approx(0.25));
  CHECK(inv[1] == doctest::Approx(0.125));
}

TEST_CASE("preconditioner monotone conditioning and lower bound") {
  const double delta = 0.3;
  Preconditioner p(4, delta);
  Rng rng(99);
  Vec prev = p.power(0.7);
  for (int k = 1; k <= 200; ++k) {
    Vec g(4);
    rng.fill_normal(g);
    for (double& v : g) v *= 3.0;
    p.update(g);
    // Lower-bound law: diag >= delta * (k + 1) after k updates.
    for (const double d : p.diag()) CHECK(d >= delta * (k + 1) - 1e-12);
    // Monotone conditioning: positive powers are non-increasing in k.
    const Vec cur = p.power(0.7);
    for (int i = 0; i < 4; ++i) CHECK(cur[i] <= prev[i] + 1e-15);
    prev = cur;
    // Matching cap on the power: diag^-phi <= (delta (k+1))^-phi.
    for (const double v : p.power(1.3)) CHECK(v <= std::pow(delta * (k + 1), -1.3) + 1e-15);
  }
}

TEST_CASE("preconditioner power algebra") {
  Preconditioner p(3, 0.2);
  Rng rng(5);
  for (int k = 0; k < 50; ++k) {
    Vec g(3);
    rng.fill_normal(g);
    p.update(g);
  }
  const double phis[] = {0.0, 0.25, 0.5, 1.0, 1.5};
  for (const double a : phis) {
    for (const double b : phis) {
      const auto pa = p.power(a);
      const auto pb = p.power(b);
      const auto pab = p.power(a + b);
      for (int i = 0; i < 3; ++i) {
        CHECK(pa[i] * pb[i] == doctest::Approx(pab[i]).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("batch schedules") {
  CHECK(BatchSchedule::constant(10).size_at(0) == 10);
  CHECK(BatchSchedule::constant(10).size_at(999) == 10);
  CHECK(BatchSchedule::linear(1.0).size_at(7) == 8);
  CHECK(BatchSchedule::power_law(1.0, 0.5).size_at(99) == 10);
  // Positive integer for all k.
  const BatchSchedule s = BatchSchedule::power_law(0.3, 0.7);
  for (long k = 0; k < 1000; ++k) CHECK(s.size_at(k) >= 1);
  CHECK_THROWS_AS(BatchSchedule::constant(0).validate(), ConfigError);
  CHECK_THROWS_AS(BatchSchedule::power_law(-1.0, 0.5).validate(), ConfigError);
}

TEST_CASE("method config validation and region flags") {
  MethodConfig c;
  c.method = Method::Asgld;
  c.alpha = 1.0;
  c.beta = 1.0;
  c.validate();
  CHECK(c.in_convergence_region());

  c.beta = 0.4;  // below alpha/2
  CHECK_FALSE(c.in_convergence_region());
  c.validate();  // out-of-region stays legal

  c.alpha = 0.0;
  c.beta = 1.0;
  CHECK_FALSE(c.in_convergence_region());  // ASGLD needs alpha > 0

  MethodConfig agld;
  agld.method = Method::Agld;
  agld.alpha = 0.0;
  agld.beta = 1.0;
  CHECK(agld.in_convergence_region());  // AGLD admits alpha = 0

  MethodConfig asg;
  asg.method = Method::Asg;
  asg.alpha = 1.0;
  asg.beta.reset();
  asg.validate();
  CHECK(asg.in_convergence_region());
  asg.beta = 1.0;
  CHECK_THROWS_AS(asg.validate(), ConfigError);

  MethodConfig sgld;
  sgld.method = Method::Sgld;
  sgld.alpha = 0.0;
  sgld.beta.reset();
  sgld.temperature_u = 2.0;
  sgld.validate();
  CHECK_FALSE(sgld.in_convergence_region());
  sgld.alpha = 1.0;
  CHECK_THROWS_AS(sgld.validate(), ConfigError);

  MethodConfig bad;
  bad.method = Method::Asgld;
  bad.beta.reset();
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("rng streams are deterministic and seed-separated") {
  Rng a(42), b(42), c(43);
  for (int i = 0; i < 100; ++i) {
    CHECK(a.next_u64() == b.next_u64());
  }
  bool differs = false;
  Rng a2(42);
  for (int i = 0; i < 100; ++i) {
    if (a2.next_u64() != c.next_u64()) differs = true;
  }
  CHECK(differs);

  // Normal draws have roughly the right first two moments.
  Rng n(7);
  double sum = 0.0, sum2 = 0.0;
  const int rounds = 200000;
  for (int i = 0; i < rounds; ++i) {
    const double x = n.normal();
    sum += x;
    sum2 += x * x;
  }
  CHECK(std::abs(sum / rounds) < 0.01);
  CHECK(sum2 / rounds == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("sampling without replacement") {
  Rng rng(11);
  auto idx = sample_without_replacement(50, 20, rng);
  CHECK(idx.size() == 20);
  std::sort(idx.begin(), idx.end());
  CHECK(std::unique(idx.begin(), idx.end()) == idx.end());
  CHECK(idx.back() < 50);

  Rng r2(11);
  CHECK(sample_without_replacement(50, 50, r2).size() == 50);
  CHECK_THROWS_AS(sample_without_replacement(5, 6, r2), ConfigError);
}

TEST_SUITE_END();
