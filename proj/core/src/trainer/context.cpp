#include "gme/trainer/context.hpp"

#include <algorithm>
#include <set>

#include "gme/dataset/series.hpp"
#include "gme/met/propagate.hpp"

namespace gme::trainer {

PreparedMarket prepare_market(const data::Market& market, const TrainConfig& config,
                              const data::EncoderConfig* encoder) {
  config.validate();
  PreparedMarket out;
  out.market = &market;
  out.sets = data::segment_target_sets(market, config.utc_offset);
  if (out.sets.size() < 2) throw data::DataError("projects", "need at least two target sets to split");
  const std::size_t parts = static_cast<std::size_t>(config.train_parts + config.test_parts);
  out.train_sets = out.sets.size() * static_cast<std::size_t>(config.train_parts) / parts;
  out.train_sets = std::clamp<std::size_t>(out.train_sets, 1, out.sets.size() - 1);

  if (encoder) {
    out.encoder = *encoder;
    out.encoder.validate();
  } else {
    std::vector<data::ProjectRecord> training;
    for (std::size_t s = 0; s < out.train_sets; ++s) {
      for (auto i : out.sets[s].members) training.push_back(market.project(i));
    }
    out.encoder = data::fit_encoder(training, data::EncoderConfig::defaults());
  }

  out.features.resize(market.size());
  for (std::size_t i = 0; i < market.size(); ++i) {
    out.features[i] = data::encode_static_features(market.project(i), out.encoder);
  }
  return out;
}

namespace {

numkit::Tensor rows_of(const PreparedMarket& p, std::span<const std::size_t> indices) {
  const std::size_t width = p.feature_width();
  numkit::Tensor out({std::max<std::size_t>(indices.size(), 1), width});
  for (std::size_t r = 0; r < indices.size(); ++r) {
    std::copy(p.features[indices[r]].begin(), p.features[indices[r]].end(), &out.at(r, 0));
  }
  return out;
}

}  // namespace

TargetContext build_context(const PreparedMarket& prepared, std::size_t set_index, const TrainConfig& config) {
  const auto& market = *prepared.market;
  const auto& set = prepared.sets.at(set_index);
  TargetContext ctx;
  ctx.set_index = set_index;
  ctx.observation = set.observation;
  ctx.targets = set.members;
  ctx.target_features = rows_of(prepared, ctx.targets);
  for (auto t : ctx.targets) ctx.truths.push_back(data::fundraising_target(market, t, config.tau_hours));

  const auto running = data::running_set(market, set.observation);
  ctx.graph = pcm::build_competitiveness_graph(market, ctx.targets, running, config.pruning);
  const auto active = ctx.graph.active_columns();
  std::vector<std::size_t> compact(ctx.graph.rivals.size(), 0);
  for (std::size_t k = 0; k < active.size(); ++k) {
    compact[active[k]] = k;
    ctx.rivals.push_back(ctx.graph.rivals[active[k]]);
  }
  for (std::size_t row = 0; row < ctx.targets.size(); ++row) {
    auto cols = ctx.graph.neighbors(row);
    for (auto& c : cols) c = compact[c];
    ctx.neighbors.push_back(std::move(cols));
  }

  if (ctx.has_rivals()) {
    const std::size_t r = ctx.rivals.size();
    ctx.rival_features = rows_of(prepared, ctx.rivals);
    ctx.rival_series = numkit::Tensor({r, data::kSeriesHours});
    ctx.rival_prior = numkit::Tensor({r, data::kSeriesHours + data::kTrendBins});
    for (std::size_t k = 0; k < r; ++k) {
      const auto i = ctx.rivals[k];
      const auto series = data::hourly_series(market, i, set.observation);
      const auto trend = data::prior_trend(market, i, set.observation);
      for (std::size_t h = 0; h < data::kSeriesHours; ++h) {
        ctx.rival_series.at(k, h) = series[h];
        ctx.rival_prior.at(k, h) = series[h];
      }
      for (std::size_t b = 0; b < data::kTrendBins; ++b) ctx.rival_prior.at(k, data::kSeriesHours + b) = trend.one_hot[b];
      ctx.aux_truths.push_back(data::next_day_amount(market, i, set.observation));
    }
  }

  auto observables = data::observable_set(market, set.observation, config.history_days, config.tau_hours);
  const std::set<std::size_t> members(ctx.targets.begin(), ctx.targets.end());
  std::erase_if(observables, [&](std::size_t j) { return members.contains(j); });
  ctx.tree = met::build_propagation_tree(market, ctx.targets, observables, config.history_days, config.tau_hours);
  std::vector<double> early(market.size(), 0.0);
  for (const auto& node : ctx.tree.nodes) {
    early[node.project] = data::early_stage_amount(market, node.project, config.tau_hours);
  }
  ctx.initial_states = met::init_states(ctx.tree, prepared.features, early);
  return ctx;
}

std::vector<TargetContext> build_contexts(const PreparedMarket& prepared, const TrainConfig& config) {
  std::vector<TargetContext> out;
  out.reserve(prepared.sets.size());
  for (std::size_t s = 0; s < prepared.sets.size(); ++s) out.push_back(build_context(prepared, s, config));
  return out;
}

}  // namespace gme::trainer
