#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gme/trainer/config.hpp"
#include "gme/trainer/context.hpp"
#include "gme/trainer/metrics.hpp"

namespace gme::trainer {

enum class BaselineKind { Linear, Mlp, Mean };

std::string to_string(BaselineKind kind);
/// "lr" | "mlp" | "mean"
BaselineKind parse_baseline(std::string_view text);

struct LinearFit {
  std::vector<double> weights;
  double intercept = 0.0;
  bool ridge_fallback = false;
  double ridge_lambda = 0.0;

  double predict(std::span<const double> x) const;
};

/// Least squares with an unpenalized intercept, solved on centered normal equations. A singular or
/// ill-conditioned system is re-solved with ridge lambda = 1e-3 * mean diagonal.
LinearFit fit_linear(const std::vector<std::vector<double>>& x, std::span<const double> y);

/// Static baselines on x_g → y, same split and encodings as the graph model.
EvalReport run_baseline(BaselineKind kind, const PreparedMarket& prepared, std::span<const TargetContext> contexts,
                        const TrainConfig& config);

}  // namespace gme::trainer
