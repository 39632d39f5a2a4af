#pragma once

#include <span>
#include <vector>

namespace asgld {

/// Diagonal accumulator of element-wise squared gradients.
///
/// Every update adds g*g + delta per coordinate, so after k updates each
/// entry is at least delta * (k + 1) counting the initialization. Entries are
/// positive and non-decreasing, which keeps all negative powers well defined.
class Preconditioner {
 public:
  /// Initializes all d diagonal entries to delta with step_count 0.
  Preconditioner(int dim, double delta);

  /// Accumulates one gradient: diag[i] += g[i]^2 + delta, step_count += 1.
  /// Throws ContractError on dimension mismatch, NumericError if g is not
  /// finite or an entry overflows.
  void update(std::span<const double> g);

  /// Element-wise diag^(-phi). phi == 0 yields all ones.
  std::vector<double> power(double phi) const;

  /// Allocation-free variant; out.size() must equal dim().
  void power_into(double phi, std::span<double> out) const;

  const std::vector<double>& diag() const { return diag_; }
  int dim() const { return static_cast<int>(diag_.size()); }
  long step_count() const { return step_count_; }
  double delta() const { return delta_; }

 private:
  std::vector<double> diag_;
  double delta_;
  long step_count_ = 0;
};

}  // namespace asgld
