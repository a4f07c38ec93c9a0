#include "gme/numkit/sgd.hpp"

#include <cmath>
#include <stdexcept>

namespace gme::numkit {

void SgdSchedule::validate() const {
  if (!(initial_rate > 0.0)) throw std::invalid_argument("sgd: initial rate must be positive");
  if (!(decay_factor > 0.0 && decay_factor <= 1.0)) {
    throw std::invalid_argument("sgd: decay factor must be in (0, 1]");
  }
  if (decay_every == 0) throw std::invalid_argument("sgd: decay_every must be positive");
}

double SgdSchedule::rate(std::uint64_t step) const {
  const auto periods = static_cast<double>(step / decay_every);
  return initial_rate * std::pow(decay_factor, periods);
}

void sgd_step(std::span<Parameter* const> params, const SgdSchedule& schedule, std::uint64_t step) {
  for (const Parameter* p : params) {
    if (!p->grad.all_finite()) throw NumericError("sgd: non-finite gradient in parameter " + p->name);
  }
  const double lr = schedule.rate(step);
  for (Parameter* p : params) {
    auto w = p->value.values();
    auto g = p->grad.values();
    for (std::size_t i = 0; i < w.size(); ++i) w[i] -= lr * g[i];
    p->zero_grad();
  }
}

}  // namespace gme::numkit
