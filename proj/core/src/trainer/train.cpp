#include "gme/trainer/train.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "gme/numkit/random.hpp"
#include "gme/numkit/sgd.hpp"

namespace gme::trainer {

namespace {

EpochRecord initial_losses(const GmeModel& model, std::span<const TargetContext> contexts, std::size_t train_sets,
                           double eta) {
  EpochRecord r;
  std::size_t aux_count = 0;
  for (std::size_t s = 0; s < train_sets; ++s) {
    numkit::Tape tape;
    auto f = model.forward(tape, contexts[s]);
    auto loss = joint_loss(tape, f, contexts[s], eta);
    r.loss_p += loss.prediction;
    if (!loss.auxiliary_empty) {
      r.loss_l += loss.auxiliary;
      ++aux_count;
    }
  }
  r.loss_p /= static_cast<double>(train_sets);
  if (aux_count > 0) r.loss_l /= static_cast<double>(aux_count);
  return r;
}

}  // namespace

TrainHistory train(GmeModel& model, const PreparedMarket& prepared, std::span<const TargetContext> contexts,
                   const TrainConfig& config, const EpochCallback& on_epoch) {
  config.validate();
  if (contexts.size() != prepared.sets.size()) throw std::invalid_argument("train: one context per target set required");
  const std::size_t train_sets = prepared.train_sets;
  TrainHistory history;

  if (config.epochs > 0 && config.warm_start_bias) {
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t s = 0; s < train_sets; ++s) {
      for (double y : contexts[s].truths) sum += y, ++n;
    }
    if (n > 0) model.set_head_bias(sum / static_cast<double>(n));
  }

  history.epochs.push_back(initial_losses(model, contexts, train_sets, config.eta));
  if (on_epoch) on_epoch(history.epochs.back());

  const auto schedule = config.schedule(train_sets);
  auto params = model.store().all();
  const std::uint64_t dropout_base = numkit::derive_seed(config.seed, "trainer.dropout");

  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    const auto start = std::chrono::steady_clock::now();
    EpochRecord rec;
    rec.epoch = epoch;
    std::size_t aux_count = 0;
    for (std::size_t s = 0; s < train_sets; ++s) {
      numkit::Tape tape;
      tape.training = true;
      auto f = model.forward(tape, contexts[s], numkit::splitmix64(dropout_base + history.steps));
      auto loss = joint_loss(tape, f, contexts[s], config.eta);
      const double total = loss.total.value().item();
      if (!std::isfinite(total)) {
        throw numkit::NumericError("non-finite loss at step " + std::to_string(history.steps) + " (epoch " +
                                   std::to_string(epoch) + ", target set " + std::to_string(s) + ")");
      }
      tape.backward(loss.total);
      numkit::sgd_step(params, schedule, history.steps);
      ++history.steps;
      rec.loss_p += loss.prediction;
      if (loss.auxiliary_empty) {
        ++history.auxiliary_empty_steps;
      } else {
        rec.loss_l += loss.auxiliary;
        ++aux_count;
      }
    }
    rec.loss_p /= static_cast<double>(train_sets);
    if (aux_count > 0) rec.loss_l /= static_cast<double>(aux_count);
    rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    history.epochs.push_back(rec);
    if (on_epoch) on_epoch(rec);
  }
  return history;
}

std::vector<SetMetrics> set_info(const PreparedMarket& prepared) {
  std::vector<SetMetrics> out;
  for (std::size_t s = 0; s < prepared.sets.size(); ++s) {
    SetMetrics m;
    m.set_index = s;
    m.day = prepared.sets[s].day;
    m.period = prepared.sets[s].period;
    out.push_back(m);
  }
  return out;
}

EvalReport evaluate(const GmeModel& model, const PreparedMarket& prepared, std::span<const TargetContext> contexts) {
  if (prepared.test_sets() == 0) throw std::invalid_argument("evaluate: empty test split");
  std::vector<PredictionRecord> pairs;
  for (std::size_t s = prepared.train_sets; s < prepared.sets.size(); ++s) {
    const auto& ctx = contexts[s];
    const auto pred = predict_target(model, ctx);
    for (std::size_t k = 0; k < ctx.targets.size(); ++k) {
      pairs.push_back({prepared.market->project(ctx.targets[k]).id, s, ctx.truths[k], pred[k]});
    }
  }
  return make_report(model_label(model.config()), std::move(pairs), set_info(prepared));
}

std::string history_csv(const TrainHistory& history) {
  std::ostringstream out;
  out << "epoch,loss_p,loss_l,seconds\n";
  char buf[128];
  for (const auto& e : history.epochs) {
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.6f\n", e.epoch, e.loss_p, e.loss_l, e.seconds);
    out << buf;
  }
  return out.str();
}

std::string model_label(const ModelConfig& config) {
  switch (config.ablation) {
    case Ablation::Full: return "GME";
    case Ablation::PcmOnly: return "GME-C";
    case Ablation::MetOnly: return "GME-H";
  }
  return "GME";
}

}  // namespace gme::trainer
