#include "gme/trainer/model.hpp"

#include "gme/dataset/series.hpp"
#include "gme/numkit/ops.hpp"
#include "gme/numkit/random.hpp"

namespace gme::trainer {

using numkit::Tensor;
using numkit::Var;

GmeModel::GmeModel(std::size_t feature_width, const ModelConfig& config, std::uint64_t seed)
    : config_(config), feature_width_(feature_width) {
  config_.validate();
  if (feature_width == 0) throw ConfigError("feature width must be positive");
  const std::size_t h = config_.hidden;
  const std::size_t s = state_width();
  std::mt19937_64 rng(numkit::derive_seed(seed, "model.init"));
  if (config_.quantifier == Quantifier::PriorMlp) {
    prior_ = std::make_unique<pcm::PriorMlpQuantifier>(store_, "pcm.quantifier", data::kSeriesHours + data::kTrendBins,
                                                       h, rng);
  } else {
    recurrent_ = std::make_unique<pcm::RecurrentQuantifier>(store_, "pcm.quantifier", h, rng);
  }
  attention_ = std::make_unique<pcm::AttentionAggregator>(store_, "pcm.attention", feature_width, h, rng);
  aux_ = std::make_unique<pcm::AuxiliaryHead>(store_, "pcm.aux_head", h, rng);
  cell_ = std::make_unique<met::GatedUpdate>(store_, "met.cell", s, rng);
  tree_projection_ = &store_.create("met.projection.weight", numkit::xavier_uniform({s, h}, s, h, rng));
  tree_projection_bias_ = &store_.create("met.projection.bias", Tensor({h}));
  // Zero output weights: y' starts at ReLU(b_f) for every target.
  head_weight_ = &store_.create("head.weight", Tensor({h, 1}));
  head_bias_ = &store_.create("head.bias", Tensor({1}));
}

void GmeModel::set_head_bias(double value) { head_bias_->value[0] = value; }

Var GmeModel::quantify(numkit::Tape& tape, const TargetContext& ctx) const {
  if (prior_) return prior_->forward(tape, tape.constant(ctx.rival_prior));
  return recurrent_->forward(tape, ctx.rival_series);
}

ForwardResult GmeModel::forward(numkit::Tape& tape, const TargetContext& ctx, std::uint64_t dropout_seed) const {
  using namespace numkit;
  ForwardResult out;
  std::optional<Var> combined;

  if (config_.ablation != Ablation::MetOnly) {
    Var targets = tape.constant(ctx.target_features);
    Var rival_features{}, rival_states{};
    if (ctx.has_rivals()) {
      rival_features = tape.constant(ctx.rival_features);
      rival_states = quantify(tape, ctx);
      out.auxiliary = aux_->forward(tape, rival_states);
    }
    auto att = attention_->forward(tape, targets, rival_features, rival_states, ctx.neighbors);
    combined = att.states;
    out.attention = std::move(att.weights);
    out.isolated = std::move(att.isolated);
  }

  if (config_.ablation != Ablation::PcmOnly) {
    Var roots = met::hierarchical_propagate(tape, ctx.tree, tape.constant(ctx.initial_states), *cell_);
    if (tape.training) roots = dropout(roots, config_.dropout_keep, dropout_seed);
    Var projected = add_bias(matmul(roots, tape.parameter(*tree_projection_)), tape.parameter(*tree_projection_bias_));
    combined = combined ? add(*combined, projected) : projected;
  }

  Var logits = add_bias(matmul(*combined, tape.parameter(*head_weight_)), tape.parameter(*head_bias_));
  out.prediction = relu(flatten(logits));
  return out;
}

std::vector<double> predict_target(const GmeModel& model, const TargetContext& ctx) {
  numkit::Tape tape;
  tape.training = false;
  auto f = model.forward(tape, ctx);
  const auto& v = f.prediction.value();
  return {v.values().begin(), v.values().end()};
}

JointLoss joint_loss(numkit::Tape& tape, const ForwardResult& forward, const TargetContext& ctx, double eta) {
  using namespace numkit;
  if (ctx.targets.empty()) throw std::invalid_argument("joint_loss: empty target set");
  if (!(eta >= 0.0 && eta <= 1.0)) throw std::invalid_argument("joint_loss: eta outside [0, 1]");
  JointLoss out;
  Var lp = mae(forward.prediction, tape.constant(Tensor::vector(ctx.truths)));
  out.prediction = lp.value().item();
  out.total = scale(lp, eta);
  if (forward.auxiliary) {
    Var ll = mae(*forward.auxiliary, tape.constant(Tensor::vector(ctx.aux_truths)));
    out.auxiliary = ll.value().item();
    out.total = add(out.total, scale(ll, 1.0 - eta));
  } else {
    out.auxiliary_empty = true;
  }
  return out;
}

}  // namespace gme::trainer
