#pragma once

#include <optional>
#include <string>

#include "asgld/batch_schedule.hpp"

namespace asgld {

enum class Method { Asgld, Agld, Asg, Sgld, Sgd };

const char* method_name(Method m);
std::optional<Method> method_from_name(const std::string& name);

/// Step-size schedule. InverseT decays both the gradient step and the noise
/// scale consistently: eta_k = eta / (1 + k).
enum class StepDecay { None, InverseT };

/// Full specification of one optimizer.
///
/// beta == nullopt is the no-noise sentinel: the Langevin term is skipped
/// entirely instead of evaluating a -inf/2 power. ASG and SGD always run in
/// that mode. SGLD uses the identity preconditioner on both terms (alpha and
/// beta pinned to 0) and scales its noise by the temperature u.
struct MethodConfig {
  Method method = Method::Asgld;
  double eta = 0.01;
  double alpha = 1.0;
  std::optional<double> beta = 1.0;
  double delta = 0.1;
  double sigma2 = 1.0;
  double temperature_u = 1.0;  // SGLD only
  BatchSchedule batch{};
  StepDecay decay = StepDecay::None;

  /// Step size at step k under the decay schedule.
  double eta_at(long k) const;

  /// True when the method ever adds injected noise (sigma2 may still be 0).
  bool has_noise_term() const;

  /// True for methods driven by the mini-batch oracle (all but AGLD).
  bool uses_stochastic_oracle() const;

  /// Exponent applied to the preconditioner on the gradient term (alpha/2;
  /// 0 for SGLD/SGD) and on the noise term (beta/2; 0 for SGLD).
  double gradient_power() const;
  double noise_power() const;

  /// Convergence-region flag per the rate theory. Informational only;
  /// out-of-region configs are legitimate experiments.
  bool in_convergence_region() const;

  /// Throws ConfigError when parameters are incoherent for the method.
  void validate() const;

  bool operator==(const MethodConfig&) const = default;
};

/// Scale multiplying the preconditioned standard-normal draws: all methods
/// share this one formula so that matched-noise configurations produce
/// bit-identical noise terms. u is the SGLD temperature (1 otherwise).
double noise_coefficient(double eta, double sigma2, double u);

}  // namespace asgld
