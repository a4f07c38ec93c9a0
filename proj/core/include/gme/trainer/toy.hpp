#pragma once

#include <cstdint>
#include <memory>

#include "gme/numkit/gradcheck.hpp"
#include "gme/trainer/context.hpp"
#include "gme/trainer/model.hpp"

namespace gme::trainer {

/// Small hand-laid market: one target set of `targets` projects, `rivals` running rivals and
/// `history` closed projects one to two days before the set, plus one later project so the split
/// has a test side.
struct ToyInstance {
  data::Market market;
  TrainConfig config;
  PreparedMarket prepared;
  TargetContext context;
};

struct ToyShape {
  std::size_t targets = 3;
  std::size_t rivals = 8;
  std::size_t history = 8;
  int history_days = 2;
};

std::unique_ptr<ToyInstance> make_toy_instance(std::uint64_t seed, const ToyShape& shape = {});

/// Model over the toy with small hidden width and a random (non-zero) prediction head.
GmeModel make_toy_model(const ToyInstance& toy, Quantifier quantifier, Ablation ablation, std::uint64_t seed,
                        std::size_t hidden = 6);

/// Central-difference check of the joint loss through every model parameter, dropout off.
numkit::GradCheckResult check_model_gradients(GmeModel& model, const ToyInstance& toy, double eta = 0.7,
                                              double epsilon = 1e-5);

}  // namespace gme::trainer
