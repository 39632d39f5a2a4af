#include "asgld/method_config.hpp"

#include <cmath>

#include "asgld/errors.hpp"

namespace asgld {

const char* method_name(Method m) {
  switch (m) {
    case Method::Asgld: return "ASGLD";
    case Method::Agld: return "AGLD";
    case Method::Asg: return "ASG";
    case Method::Sgld: return "SGLD";
    case Method::Sgd: return "SGD";
  }
  return "?";
}

std::optional<Method> method_from_name(const std::string& name) {
  if (name == "ASGLD") return Method::Asgld;
  if (name == "AGLD") return Method::Agld;
  if (name == "ASG") return Method::Asg;
  if (name == "SGLD") return Method::Sgld;
  if (name == "SGD") return Method::Sgd;
  return std::nullopt;
}

double MethodConfig::eta_at(long k) const {
  if (decay == StepDecay::InverseT) return eta / static_cast<double>(1 + k);
  return eta;
}

bool MethodConfig::has_noise_term() const {
  switch (method) {
    case Method::Asgld:
    case Method::Agld:
      return beta.has_value();
    case Method::Sgld:
      return true;
    case Method::Asg:
    case Method::Sgd:
      return false;
  }
  return false;
}

bool MethodConfig::uses_stochastic_oracle() const { return method != Method::Agld; }

double MethodConfig::gradient_power() const {
  switch (method) {
    case Method::Asgld:
    case Method::Agld:
    case Method::Asg:
      return alpha / 2.0;
    case Method::Sgld:
    case Method::Sgd:
      return 0.0;
  }
  return 0.0;
}

double MethodConfig::noise_power() const {
  if (method == Method::Sgld) return 0.0;
  return beta.has_value() ? *beta / 2.0 : 0.0;
}

bool MethodConfig::in_convergence_region() const {
  switch (method) {
    case Method::Asgld:
      return alpha > 0.0 && alpha <= 2.0 && beta.has_value() && *beta > alpha / 2.0;
    case Method::Agld:
      return alpha >= 0.0 && alpha <= 2.0 && beta.has_value() && *beta > alpha / 2.0;
    case Method::Asg:
      return alpha > 0.0 && alpha <= 2.0;
    case Method::Sgld:
    case Method::Sgd:
      return false;
  }
  return false;
}

void MethodConfig::validate() const {
  if (!(eta > 0.0)) throw ConfigError("config: eta must be positive");
  if (!(delta > 0.0)) throw ConfigError("config: delta must be positive");
  if (!(sigma2 >= 0.0)) throw ConfigError("config: sigma2 must be non-negative");
  if (std::isnan(alpha) || alpha < 0.0 || alpha > 2.0) {
    throw ConfigError("config: alpha must lie in [0, 2]");
  }
  // beta = 0 is accepted: it selects the identity preconditioner on the
  // noise term, which is how SGLD embeds in the ASGLD family.
  if (beta.has_value() && (std::isnan(*beta) || *beta < 0.0)) {
    throw ConfigError("config: beta must be >= 0 when present");
  }
  switch (method) {
    case Method::Asgld:
    case Method::Agld:
      if (!beta.has_value()) throw ConfigError(std::string(method_name(method)) + " requires beta");
      break;
    case Method::Asg:
    case Method::Sgd:
      if (beta.has_value()) throw ConfigError(std::string(method_name(method)) + " has no noise term; beta must be unset");
      if (method == Method::Sgd && alpha != 0.0) throw ConfigError("SGD: alpha is fixed at 0");
      break;
    case Method::Sgld:
      if (!(temperature_u > 0.0)) throw ConfigError("SGLD: temperature u must be positive");
      if (alpha != 0.0) throw ConfigError("SGLD: alpha is fixed at 0");
      if (beta.has_value() && *beta != 0.0) throw ConfigError("SGLD: beta is fixed at 0");
      break;
  }
  if (method != Method::Sgld && temperature_u != 1.0) {
    throw ConfigError("config: temperature u applies to SGLD only");
  }
  if (method == Method::Agld && batch != BatchSchedule{}) {
    throw ConfigError("AGLD evaluates the full gradient; batch schedule must be left at default");
  }
  batch.validate();
}

double noise_coefficient(double eta, double sigma2, double u) {
  return std::sqrt(2.0 * eta) * std::sqrt(sigma2 / u);
}

}  // namespace asgld
