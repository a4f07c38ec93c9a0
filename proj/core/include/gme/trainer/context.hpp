#pragma once

#include <vector>

#include "gme/dataset/features.hpp"
#include "gme/dataset/market_sets.hpp"
#include "gme/met/tree.hpp"
#include "gme/numkit/tensor.hpp"
#include "gme/pcm/graph.hpp"
#include "gme/trainer/config.hpp"

namespace gme::trainer {

/// Market plus everything derived once per run: encoder, features, target sets and the split.
struct PreparedMarket {
  const data::Market* market = nullptr;
  data::EncoderConfig encoder;
  std::vector<std::vector<double>> features;  ///< by market index
  std::vector<data::TargetSet> sets;          ///< chronological
  std::size_t train_sets = 0;                 ///< sets [0, train_sets) are training

  std::size_t feature_width() const { return encoder.width(); }
  std::size_t test_sets() const { return sets.size() - train_sets; }
};

/// Chronological split of the target sets by train_parts:test_parts. The encoder vocabulary is
/// fitted on projects of the training sets only unless `encoder` is given.
PreparedMarket prepare_market(const data::Market& market, const TrainConfig& config,
                              const data::EncoderConfig* encoder = nullptr);

/// Parameter-free inputs of one optimization step.
struct TargetContext {
  std::size_t set_index = 0;
  data::Timestamp observation = 0;
  std::vector<std::size_t> targets;  ///< market indices
  numkit::Tensor target_features;    ///< [m x F]
  std::vector<double> truths;        ///< y per target

  pcm::CompetitivenessGraph graph;
  /// Rival columns with at least one edge; only these are quantified.
  std::vector<std::size_t> rivals;   ///< market indices
  std::vector<std::vector<std::size_t>> neighbors;  ///< per target, indices into `rivals`
  numkit::Tensor rival_features;     ///< [r x F]
  numkit::Tensor rival_series;       ///< [r x 24], newest hour first
  numkit::Tensor rival_prior;        ///< [r x 30], series then trend one-hot
  std::vector<double> aux_truths;    ///< next-day amount per rival

  met::PropagationTree tree;
  numkit::Tensor initial_states;     ///< [nodes x F+1]

  bool has_rivals() const { return !rivals.empty(); }
};

TargetContext build_context(const PreparedMarket& prepared, std::size_t set_index, const TrainConfig& config);
std::vector<TargetContext> build_contexts(const PreparedMarket& prepared, const TrainConfig& config);

}  // namespace gme::trainer
