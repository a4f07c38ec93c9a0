#include "gme/trainer/config.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

namespace gme::trainer {

std::string to_string(Quantifier q) { return q == Quantifier::Recurrent ? "recurrent" : "prior-mlp"; }

std::string to_string(Ablation a) {
  switch (a) {
    case Ablation::Full: return "full";
    case Ablation::PcmOnly: return "pcm-only";
    case Ablation::MetOnly: return "met-only";
  }
  return "full";
}

Quantifier parse_quantifier(std::string_view text) {
  if (text == "recurrent") return Quantifier::Recurrent;
  if (text == "prior-mlp") return Quantifier::PriorMlp;
  throw ConfigError("quantifier: expected recurrent or prior-mlp, got '" + std::string(text) + "'");
}

Ablation parse_ablation(std::string_view text) {
  if (text == "full") return Ablation::Full;
  if (text == "pcm-only") return Ablation::PcmOnly;
  if (text == "met-only") return Ablation::MetOnly;
  throw ConfigError("ablation: expected full, pcm-only or met-only, got '" + std::string(text) + "'");
}

void ModelConfig::validate() const {
  if (hidden == 0) throw ConfigError("hidden: must be positive");
  if (!(dropout_keep > 0.0 && dropout_keep <= 1.0)) throw ConfigError("dropout_keep: must be in (0, 1]");
}

void TrainConfig::validate() const {
  if (!(eta >= 0.0 && eta <= 1.0)) throw ConfigError("eta: must be in [0, 1]");
  if (tau_hours <= 0) throw ConfigError("tau: must be positive");
  if (history_days < 1 || history_days > 7) throw ConfigError("t_h: must be in 1..7");
  if (!(initial_rate > 0.0) || !std::isfinite(initial_rate)) throw ConfigError("initial_rate: must be positive");
  if (!(decay_factor > 0.0 && decay_factor <= 1.0)) throw ConfigError("decay_factor: must be in (0, 1]");
  if (epochs < 0) throw ConfigError("epochs: must be non-negative");
  if (train_parts < 1 || test_parts < 1) throw ConfigError("split: both parts must be positive");
  model.validate();
}

numkit::SgdSchedule TrainConfig::schedule(std::size_t steps_per_epoch) const {
  numkit::SgdSchedule s;
  s.initial_rate = initial_rate;
  s.decay_factor = decay_factor;
  s.decay_every = decay_every > 0 ? decay_every : std::max<std::uint64_t>(1, steps_per_epoch);
  return s;
}

nlohmann::ordered_json to_json(const ModelConfig& c) {
  nlohmann::ordered_json j;
  j["quantifier"] = to_string(c.quantifier);
  j["ablation"] = to_string(c.ablation);
  j["hidden"] = c.hidden;
  j["dropout_keep"] = c.dropout_keep;
  return j;
}

nlohmann::ordered_json to_json(const TrainConfig& c) {
  nlohmann::ordered_json j;
  j["eta"] = c.eta;
  j["tau"] = c.tau_hours;
  j["t_h"] = c.history_days;
  j["pruning"] = pcm::to_string(c.pruning);
  j["initial_rate"] = c.initial_rate;
  j["decay_factor"] = c.decay_factor;
  j["decay_every"] = c.decay_every;
  j["epochs"] = c.epochs;
  j["seed"] = c.seed;
  j["train_parts"] = c.train_parts;
  j["test_parts"] = c.test_parts;
  j["utc_offset"] = c.utc_offset;
  j["warm_start_bias"] = c.warm_start_bias;
  j["model"] = to_json(c.model);
  return j;
}

ModelConfig model_config_from_json(const nlohmann::ordered_json& j) {
  ModelConfig c;
  try {
    c.quantifier = parse_quantifier(j.at("quantifier").get<std::string>());
    c.ablation = parse_ablation(j.at("ablation").get<std::string>());
    c.hidden = j.at("hidden").get<std::size_t>();
    c.dropout_keep = j.at("dropout_keep").get<double>();
  } catch (const nlohmann::ordered_json::exception& e) {
    throw ConfigError(std::string("model config: ") + e.what());
  }
  c.validate();
  return c;
}

TrainConfig train_config_from_json(const nlohmann::ordered_json& j) {
  TrainConfig c;
  try {
    c.eta = j.at("eta").get<double>();
    c.tau_hours = j.at("tau").get<int>();
    c.history_days = j.at("t_h").get<int>();
    c.pruning = pcm::parse_pruning(j.at("pruning").get<std::string>());
    c.initial_rate = j.at("initial_rate").get<double>();
    c.decay_factor = j.at("decay_factor").get<double>();
    c.decay_every = j.at("decay_every").get<std::uint64_t>();
    c.epochs = j.at("epochs").get<int>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.train_parts = j.at("train_parts").get<int>();
    c.test_parts = j.at("test_parts").get<int>();
    c.utc_offset = j.at("utc_offset").get<data::Timestamp>();
    c.warm_start_bias = j.at("warm_start_bias").get<bool>();
    c.model = model_config_from_json(j.at("model"));
  } catch (const nlohmann::ordered_json::exception& e) {
    throw ConfigError(std::string("train config: ") + e.what());
  }
  c.validate();
  return c;
}

}  // namespace gme::trainer
