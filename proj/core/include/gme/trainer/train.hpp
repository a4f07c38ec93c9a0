#pragma once

#include <functional>
#include <span>
#include <vector>

#include "gme/trainer/config.hpp"
#include "gme/trainer/context.hpp"
#include "gme/trainer/metrics.hpp"
#include "gme/trainer/model.hpp"

namespace gme::trainer {

struct EpochRecord {
  int epoch = 0;
  double loss_p = 0.0;  ///< mean over training sets
  double loss_l = 0.0;  ///< mean over sets with quantified rivals
  double seconds = 0.0;
};

struct TrainHistory {
  /// Row 0 is the untrained model in evaluation mode; rows 1.. are means recorded during each pass.
  std::vector<EpochRecord> epochs;
  std::uint64_t steps = 0;
  std::uint64_t auxiliary_empty_steps = 0;
};

using EpochCallback = std::function<void(const EpochRecord&)>;

/// One SGD step per training target set, chronological, epoch after epoch.
TrainHistory train(GmeModel& model, const PreparedMarket& prepared, std::span<const TargetContext> contexts,
                   const TrainConfig& config, const EpochCallback& on_epoch = {});

/// Metrics over the test target sets, dropout disabled.
EvalReport evaluate(const GmeModel& model, const PreparedMarket& prepared, std::span<const TargetContext> contexts);

/// CSV with header epoch,loss_p,loss_l,seconds.
std::string history_csv(const TrainHistory& history);

/// Name used in reports: GME, GME-C or GME-H.
std::string model_label(const ModelConfig& config);

std::vector<SetMetrics> set_info(const PreparedMarket& prepared);

}  // namespace gme::trainer
