#pragma once

#include <memory>
#include <optional>
#include <random>
#include <vector>

#include "gme/met/propagate.hpp"
#include "gme/numkit/tape.hpp"
#include "gme/pcm/attention.hpp"
#include "gme/pcm/quantifier.hpp"
#include "gme/trainer/config.hpp"
#include "gme/trainer/context.hpp"

namespace gme::trainer {

struct ForwardResult {
  numkit::Var prediction;               ///< [m]
  std::optional<numkit::Var> auxiliary; ///< [r], absent without rivals or PCM
  std::vector<std::vector<double>> attention;
  std::vector<bool> isolated;
};

/// Every trainable parameter of the model in one store.
///
/// Parameters of both modules are always created so checkpoints have one layout per quantifier;
/// the ablation only decides which branches reach the prediction.
class GmeModel {
 public:
  GmeModel(std::size_t feature_width, const ModelConfig& config, std::uint64_t seed);

  const ModelConfig& config() const { return config_; }
  std::size_t feature_width() const { return feature_width_; }
  std::size_t state_width() const { return feature_width_ + 1; }
  numkit::ParameterStore& store() { return store_; }
  const numkit::ParameterStore& store() const { return store_; }

  /// Dropout on the tree output is applied only when tape.training is set.
  ForwardResult forward(numkit::Tape& tape, const TargetContext& ctx, std::uint64_t dropout_seed = 0) const;
  /// Rival competitiveness states [r x hidden].
  numkit::Var quantify(numkit::Tape& tape, const TargetContext& ctx) const;

  void set_head_bias(double value);

 private:
  ModelConfig config_;
  std::size_t feature_width_;
  numkit::ParameterStore store_;
  std::unique_ptr<pcm::PriorMlpQuantifier> prior_;
  std::unique_ptr<pcm::RecurrentQuantifier> recurrent_;
  std::unique_ptr<pcm::AttentionAggregator> attention_;
  std::unique_ptr<pcm::AuxiliaryHead> aux_;
  std::unique_ptr<met::GatedUpdate> cell_;
  numkit::Parameter* tree_projection_;
  numkit::Parameter* tree_projection_bias_;
  numkit::Parameter* head_weight_;
  numkit::Parameter* head_bias_;
};

/// y' for every target of the set, evaluation mode.
std::vector<double> predict_target(const GmeModel& model, const TargetContext& ctx);

struct JointLoss {
  numkit::Var total;
  double prediction = 0.0;
  double auxiliary = 0.0;
  bool auxiliary_empty = false;  ///< no quantified rivals, auxiliary term taken as 0
};

/// eta * MAE(prediction, truth) + (1 - eta) * MAE(auxiliary, aux truth).
JointLoss joint_loss(numkit::Tape& tape, const ForwardResult& forward, const TargetContext& ctx, double eta);

}  // namespace gme::trainer
