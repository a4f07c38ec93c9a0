#include "gme/pcm/attention.hpp"

#include "gme/numkit/ops.hpp"
#include "gme/numkit/random.hpp"

namespace gme::pcm {

using numkit::Tensor;
using numkit::Var;

AttentionAggregator::AttentionAggregator(numkit::ParameterStore& store, const std::string& prefix,
                                         std::size_t feature_width, std::size_t hidden, std::mt19937_64& rng) {
  const std::size_t attn = hidden;
  projection_ = &store.create(prefix + ".projection",
                              numkit::xavier_uniform({feature_width, attn}, feature_width, attn, rng));
  score_target_ = &store.create(prefix + ".score_target", numkit::xavier_uniform({attn, 1}, 2 * attn, 1, rng));
  score_rival_ = &store.create(prefix + ".score_rival", numkit::xavier_uniform({attn, 1}, 2 * attn, 1, rng));
  value_ = &store.create(prefix + ".value", numkit::xavier_uniform({hidden, hidden}, hidden, hidden, rng));
  embed_ = &store.create(prefix + ".target_embed",
                         numkit::xavier_uniform({feature_width, hidden}, feature_width, hidden, rng));
  embed_bias_ = &store.create(prefix + ".target_embed_bias", Tensor({hidden}));
}

AttentionAggregator::Output AttentionAggregator::forward(numkit::Tape& tape, Var target_features,
                                                         Var rival_features, Var rival_states,
                                                         const std::vector<std::vector<std::size_t>>& neighbors) const {
  const std::size_t m = target_features.value().rows();
  Output out;
  out.weights.resize(m);
  out.isolated.assign(m, false);

  bool any_neighbor = false;
  for (const auto& n : neighbors) any_neighbor = any_neighbor || !n.empty();

  Var w = tape.parameter(*projection_);
  // v . (W x) evaluated as x . (W v).
  Var target_scores = numkit::flatten(numkit::matmul(target_features, numkit::matmul(w, tape.parameter(*score_target_))));
  Var rival_scores{}, values{};
  if (any_neighbor) {
    rival_scores = numkit::flatten(numkit::matmul(rival_features, numkit::matmul(w, tape.parameter(*score_rival_))));
    values = numkit::matmul(rival_states, tape.parameter(*value_));
  }

  std::vector<Var> rows;
  rows.reserve(m);
  for (std::size_t g = 0; g < m; ++g) {
    const auto& nb = neighbors[g];
    if (nb.empty()) {
      out.isolated[g] = true;
      Var x = numkit::row(target_features, g);
      rows.push_back(numkit::add_bias(numkit::matmul(x, tape.parameter(*embed_)), tape.parameter(*embed_bias_)));
      continue;
    }
    const std::size_t self[] = {g};
    Var e = numkit::add_scalar(numkit::gather(rival_scores, nb), numkit::gather(target_scores, self));
    Var alpha = numkit::softmax(numkit::leaky_relu(e));
    out.weights[g] = alpha.value().data();
    rows.push_back(numkit::matmul(alpha, numkit::gather_rows(values, nb)));
  }
  out.states = numkit::stack_rows(rows);
  return out;
}

AuxiliaryHead::AuxiliaryHead(numkit::ParameterStore& store, const std::string& prefix, std::size_t hidden,
                             std::mt19937_64& rng) {
  weight_ = &store.create(prefix + ".weight", numkit::xavier_uniform({hidden, 1}, hidden, 1, rng));
  bias_ = &store.create(prefix + ".bias", Tensor({1}));
}

Var AuxiliaryHead::forward(numkit::Tape& tape, Var states) const {
  Var pre = numkit::add_bias(numkit::matmul(states, tape.parameter(*weight_)), tape.parameter(*bias_));
  return numkit::relu(numkit::flatten(pre));
}

}  // namespace gme::pcm
