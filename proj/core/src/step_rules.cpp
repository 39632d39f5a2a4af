#include "asgld/step_rules.hpp"

#include <string>

#include "asgld/errors.hpp"

namespace asgld {

namespace detail {

void step_kernel(std::span<double> out, std::span<const double> x, std::span<const double> grad_pow,
                 std::span<const double> grad, double eta, std::span<const double> noise_pow,
                 std::span<const double> z, double noise_coeff, bool noisy) {
  const std::size_t d = x.size();
  if (noisy) {
    for (std::size_t i = 0; i < d; ++i) {
      out[i] = x[i] - eta * (grad_pow[i] * grad[i]) + noise_coeff * (noise_pow[i] * z[i]);
    }
  } else {
    for (std::size_t i = 0; i < d; ++i) {
      out[i] = x[i] - eta * (grad_pow[i] * grad[i]);
    }
  }
}

}  // namespace detail

Stepper::Stepper(const MethodConfig& config, int dim)
    : config_(config),
      grad_pow_(static_cast<std::size_t>(dim)),
      noise_pow_(static_cast<std::size_t>(dim)),
      z_(static_cast<std::size_t>(dim)) {}

void Stepper::apply(std::span<double> out, std::span<const double> x, const Preconditioner& precond,
                    std::span<const double> grad, Rng* noise_rng, long k) {
  const double eta_k = config_.eta_at(k);
  precond.power_into(config_.gradient_power(), grad_pow_);
  const bool noisy = config_.has_noise_term() && config_.sigma2 > 0.0;
  double nc = 0.0;
  if (noisy) {
    const double u = config_.method == Method::Sgld ? config_.temperature_u : 1.0;
    nc = noise_coefficient(eta_k, config_.sigma2, u);
    precond.power_into(config_.noise_power(), noise_pow_);
    noise_rng->fill_normal(z_);
  }
  detail::step_kernel(out, x, grad_pow_, grad, eta_k, noise_pow_, z_, nc, noisy);
}

namespace {

Vec one_step(const Vec& x, const Preconditioner* precond, const Vec& grad, const Vec* noise,
             const MethodConfig& config, const char* who) {
  config.validate();
  const std::size_t d = x.size();
  if (grad.size() != d) throw ContractError(std::string(who) + ": gradient dimension mismatch");
  if (precond != nullptr && static_cast<std::size_t>(precond->dim()) != d) {
    throw ContractError(std::string(who) + ": preconditioner dimension mismatch");
  }
  if (!all_finite(grad)) throw NumericError(std::string(who) + ": non-finite gradient");

  Vec grad_pow;
  Vec noise_pow;
  if (precond != nullptr) {
    grad_pow = precond->power(config.gradient_power());
  } else {
    grad_pow = ones(d);
  }
  const bool noisy = config.has_noise_term() && config.sigma2 > 0.0;
  double nc = 0.0;
  if (noisy) {
    if (noise == nullptr || noise->size() != d) throw ContractError(std::string(who) + ": noise dimension mismatch");
    const double u = config.method == Method::Sgld ? config.temperature_u : 1.0;
    nc = noise_coefficient(config.eta, config.sigma2, u);
    noise_pow = precond != nullptr ? precond->power(config.noise_power()) : ones(d);
  } else {
    noise_pow = Vec(d, 0.0);
  }
  Vec out(d);
  detail::step_kernel(out, x, grad_pow, grad, config.eta, noise_pow, noise != nullptr ? *noise : out, nc, noisy);
  if (!all_finite(out)) throw NumericError(std::string(who) + ": step produced a non-finite iterate");
  return out;
}

}  // namespace

Vec asgld_step(const Vec& x, const Preconditioner& precond, const Vec& stochastic_grad, const Vec& noise,
               const MethodConfig& config) {
  if (config.method != Method::Asgld) throw ContractError("asgld_step: config.method must be ASGLD");
  return one_step(x, &precond, stochastic_grad, &noise, config, "asgld_step");
}

Vec agld_step(const Vec& x, const Preconditioner& precond, const Vec& full_grad, const Vec& noise,
              const MethodConfig& config) {
  if (config.method != Method::Agld) throw ContractError("agld_step: config.method must be AGLD");
  return one_step(x, &precond, full_grad, &noise, config, "agld_step");
}

Vec asg_step(const Vec& x, const Preconditioner& precond, const Vec& stochastic_grad, const MethodConfig& config) {
  if (config.method != Method::Asg) throw ContractError("asg_step: config.method must be ASG");
  return one_step(x, &precond, stochastic_grad, nullptr, config, "asg_step");
}

Vec sgld_step(const Vec& x, const Vec& stochastic_grad, const Vec& noise, const MethodConfig& config) {
  if (config.method != Method::Sgld) throw ContractError("sgld_step: config.method must be SGLD");
  return one_step(x, nullptr, stochastic_grad, &noise, config, "sgld_step");
}

}  // namespace asgld
