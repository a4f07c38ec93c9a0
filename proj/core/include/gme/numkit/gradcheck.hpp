#pragma once

#include <functional>
#include <span>
#include <string>

#include "gme/numkit/tape.hpp"

namespace gme::numkit {

struct GradCheckResult {
  double max_relative_error = 0.0;
  std::string worst_parameter;
  std::size_t checked_entries = 0;
};

/// Builds the scalar loss on a fresh tape. Must be deterministic.
using LossClosure = std::function<Var(Tape&)>;

/// Compares reverse-mode gradients with central differences.
///
/// The error for one parameter tensor is ||analytic - numeric|| / max(||analytic||, ||numeric||, 1e-6)
/// (Euclidean norms over its entries); the result is the maximum over parameters. Parameter
/// gradients are left zeroed.
GradCheckResult grad_check(const LossClosure& loss, std::span<Parameter* const> params,
                           double epsilon = 1e-5);

}  // namespace gme::numkit
