#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace asgld {

/// Parameter vector in problem units. Dimension is fixed for the lifetime of
/// a run; the run loop guarantees all entries stay finite on accepted steps.
using Vec = std::vector<double>;

inline bool all_finite(std::span<const double> v) {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2_sq(std::span<const double> v) { return dot(v, v); }

inline double norm2(std::span<const double> v) { return std::sqrt(norm2_sq(v)); }

inline Vec zeros(std::size_t d) { return Vec(d, 0.0); }

inline Vec ones(std::size_t d) { return Vec(d, 1.0); }

}  // namespace asgld
