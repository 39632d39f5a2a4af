#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace asgld {

/// Deterministic pseudo-random stream (xoshiro256++ seeded via splitmix64).
///
/// The standard library distributions are implementation-defined, so the
/// library provides its own draws: every output is a pure function of the
/// seed and the call sequence, which is what makes trace CSVs byte-stable.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();

  /// Uniform in [0, 1) with 53 random bits.
  double uniform01();

  /// Uniform integer in [0, bound) by rejection; bound must be > 0.
  std::uint64_t uniform_below(std::uint64_t bound);

  /// Standard normal via Box-Muller; the second draw of each pair is cached.
  double normal();

  void fill_normal(std::span<double> out);

 private:
  std::uint64_t s_[4];
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// splitmix64 step; also used to derive independent stream seeds.
std::uint64_t splitmix64(std::uint64_t& state);

/// One-shot mix of (seed, tag) into a stream seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag);

/// Floyd's algorithm: k distinct indices uniformly drawn from [0, n).
/// Output order is the insertion order of the algorithm, deterministic for a
/// given rng state. Requires 1 <= k <= n.
std::vector<std::uint64_t> sample_without_replacement(std::uint64_t n, std::uint64_t k, Rng& rng);

}  // namespace asgld
