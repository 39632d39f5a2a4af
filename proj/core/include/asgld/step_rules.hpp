#pragma once

#include <span>

#include "asgld/method_config.hpp"
#include "asgld/preconditioner.hpp"
#include "asgld/rng.hpp"
#include "asgld/vec.hpp"

namespace asgld {

/// One update of any method in the family:
///
///   x' = x - eta * D^(-alpha/2) .* G + nc * D^(-beta/2) .* z
///
/// where z are standard-normal draws and nc = noise_coefficient(eta, sigma2,
/// u) folds every scalar factor of the Langevin term (sqrt(2 eta), sigma and
/// the SGLD temperature). All five methods go through this one kernel so the
/// family's exact reductions (ASGLD -> ASG -> SGD, ASGLD -> SGLD, AGLD)
/// hold bit-for-bit, not just approximately.
namespace detail {
void step_kernel(std::span<double> out, std::span<const double> x, std::span<const double> grad_pow,
                 std::span<const double> grad, double eta, std::span<const double> noise_pow,
                 std::span<const double> z, double noise_coeff, bool noisy);
}

/// Per-run stepper owning the preconditioner-power and noise scratch buffers.
class Stepper {
 public:
  Stepper(const MethodConfig& config, int dim);

  /// Writes the next iterate into out. Draws d standard normals from
  /// noise_rng when the method's noise term is active (noise_rng may be null
  /// otherwise). k is the step index, used by decaying step-size schedules.
  void apply(std::span<double> out, std::span<const double> x, const Preconditioner& precond,
             std::span<const double> grad, Rng* noise_rng, long k);

 private:
  const MethodConfig config_;
  Vec grad_pow_;
  Vec noise_pow_;
  Vec z_;
};

/// Single-step functions for the five update rules. The noise argument holds
/// raw standard-normal draws (the realized e_k is noise scaled by sigma,
/// which these functions fold into the noise coefficient). They validate
/// inputs and throw NumericError if the produced iterate is not finite.
Vec asgld_step(const Vec& x, const Preconditioner& precond, const Vec& stochastic_grad, const Vec& noise,
               const MethodConfig& config);
Vec agld_step(const Vec& x, const Preconditioner& precond, const Vec& full_grad, const Vec& noise,
              const MethodConfig& config);
Vec asg_step(const Vec& x, const Preconditioner& precond, const Vec& stochastic_grad, const MethodConfig& config);
Vec sgld_step(const Vec& x, const Vec& stochastic_grad, const Vec& noise, const MethodConfig& config);

}  // namespace asgld
