#pragma once

#include <compare>
#include <cstdint>

namespace asgld {

/// Mini-batch size as a function of the step index k (k >= 0).
///
///   Constant(B)     -> B
///   PowerLaw(c, th) -> ceil(c * (k+1)^th)
///   Linear(c)       -> ceil(c * (k+1))
struct BatchSchedule {
  enum class Kind { Constant, PowerLaw, Linear };

  Kind kind = Kind::Constant;
  double c = 1.0;      // B for Constant, coefficient otherwise
  double theta = 1.0;  // PowerLaw exponent

  static BatchSchedule constant(long b);
  static BatchSchedule power_law(double c, double theta);
  static BatchSchedule linear(double c);

  /// Batch size at step k; always a positive integer.
  long size_at(long k) const;

  /// Throws ConfigError if the parameters cannot yield positive batches.
  void validate() const;

  bool operator==(const BatchSchedule&) const = default;
};

}  // namespace asgld
