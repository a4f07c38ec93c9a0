#pragma once

#include <cstdint>
#include <span>

#include "gme/numkit/tape.hpp"

namespace gme::numkit {

/// Exponentially decayed learning rate: initial_rate * decay_factor^floor(step / decay_every).
struct SgdSchedule {
  double initial_rate = 0.02;
  double decay_factor = 0.96;
  std::uint64_t decay_every = 1;

  double rate(std::uint64_t step) const;
  void validate() const;
};

/// Plain SGD update. All gradients are checked for finiteness before any entry changes;
/// gradients are zeroed afterwards.
void sgd_step(std::span<Parameter* const> params, const SgdSchedule& schedule, std::uint64_t step);

}  // namespace gme::numkit
