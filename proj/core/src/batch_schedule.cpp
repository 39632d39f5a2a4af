#include "asgld/batch_schedule.hpp"

#include <cmath>
#include <string>

#include "asgld/errors.hpp"

namespace asgld {

BatchSchedule BatchSchedule::constant(long b) {
  return BatchSchedule{Kind::Constant, static_cast<double>(b), 1.0};
}

BatchSchedule BatchSchedule::power_law(double c, double theta) {
  return BatchSchedule{Kind::PowerLaw, c, theta};
}

BatchSchedule BatchSchedule::linear(double c) { return BatchSchedule{Kind::Linear, c, 1.0}; }

void BatchSchedule::validate() const {
  if (!(c > 0.0)) throw ConfigError("batch schedule: coefficient must be positive, got " + std::to_string(c));
  if (kind == Kind::Constant && c != std::floor(c)) {
    throw ConfigError("batch schedule: constant batch size must be an integer, got " + std::to_string(c));
  }
  if (kind == Kind::PowerLaw && !(theta > 0.0)) {
    throw ConfigError("batch schedule: power-law exponent must be positive, got " + std::to_string(theta));
  }
}

long BatchSchedule::size_at(long k) const {
  switch (kind) {
    case Kind::Constant:
      return static_cast<long>(c);
    case Kind::PowerLaw:
      return static_cast<long>(std::ceil(c * std::pow(static_cast<double>(k + 1), theta)));
    case Kind::Linear:
      return static_cast<long>(std::ceil(c * static_cast<double>(k + 1)));
  }
  return 1;
}

}  // namespace asgld
