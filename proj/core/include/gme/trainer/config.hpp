#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <nlohmann/json_fwd.hpp>

#include "gme/dataset/records.hpp"
#include "gme/numkit/sgd.hpp"
#include "gme/pcm/graph.hpp"

namespace gme::trainer {

enum class Quantifier { Recurrent, PriorMlp };
enum class Ablation { Full, PcmOnly, MetOnly };

std::string to_string(Quantifier q);
std::string to_string(Ablation a);
/// "recurrent" | "prior-mlp"
Quantifier parse_quantifier(std::string_view text);
/// "full" | "pcm-only" | "met-only"
Ablation parse_ablation(std::string_view text);

struct ModelConfig {
  Quantifier quantifier = Quantifier::PriorMlp;
  Ablation ablation = Ablation::Full;
  std::size_t hidden = 50;
  double dropout_keep = 0.9;

  void validate() const;
};

struct TrainConfig {
  double eta = 0.7;
  int tau_hours = 24;
  int history_days = 3;
  pcm::PruningMode pruning = pcm::PruningMode::CateAndJF;
  double initial_rate = 0.02;
  double decay_factor = 0.96;
  /// Steps between decays; 0 means once per epoch.
  std::uint64_t decay_every = 0;
  int epochs = 20;
  std::uint64_t seed = 1;
  int train_parts = 5;
  int test_parts = 1;
  data::Timestamp utc_offset = 0;
  /// Start the prediction-head bias at the mean training target.
  bool warm_start_bias = true;
  ModelConfig model;

  void validate() const;
  numkit::SgdSchedule schedule(std::size_t steps_per_epoch) const;
};

nlohmann::ordered_json to_json(const ModelConfig& c);
nlohmann::ordered_json to_json(const TrainConfig& c);
ModelConfig model_config_from_json(const nlohmann::ordered_json& j);
TrainConfig train_config_from_json(const nlohmann::ordered_json& j);

/// Invalid configuration values; the message names the field.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace gme::trainer
