#pragma once

// Independent reference implementations used by unit and acceptance tests. Nothing here calls the
// code it checks beyond reading inputs (records, parameters, encoded features).

#include <cstdint>
#include <string>
#include <vector>

#include "gme/dataset/records.hpp"
#include "gme/met/tree.hpp"
#include "gme/trainer/model.hpp"
#include "gme/trainer/toy.hpp"

namespace gme::oracle {

struct RandomMarketShape {
  std::size_t projects = 40;
  int span_days = 12;
  int max_duration = 20;
  std::size_t categories = 3;
  int max_events = 6;
};

/// Random but seeded market; publication times land on whole minutes.
data::Market random_market(std::uint64_t seed, const RandomMarketShape& shape = {});

std::vector<std::size_t> brute_running(const data::Market& m, data::Timestamp t);
std::vector<std::size_t> brute_observable(const data::Market& m, data::Timestamp t_ref, int history_days,
                                          int tau_hours);
double brute_funds(const data::Market& m, std::size_t project, data::Timestamp from, data::Timestamp to);

/// Reference tree builder: depth and primary-parent gap (hours) per attached project.
struct ReferenceNode {
  std::size_t project;
  int depth;
  std::size_t parent_project;  ///< meaningless for roots
  double gap_hours;
  std::vector<std::size_t> root_parents;  ///< depth-1 only: every root in the window
};
std::vector<ReferenceNode> reference_tree(const data::Market& m, const std::vector<std::size_t>& roots,
                                          const std::vector<std::size_t>& observables, int history_days,
                                          int tau_hours);

/// Structural violations of a built tree, and mismatches against reference_tree. Empty means clean.
std::vector<std::string> tree_violations(const met::PropagationTree& tree, const data::Market& m,
                                         const std::vector<std::size_t>& observables);

/// Number of distinct directed child-to-parent paths from `from` up to `to`.
std::size_t count_paths(const met::PropagationTree& tree, std::size_t from, std::size_t to);

/// Prediction for one target set computed with plain loops from the market, encoded features and
/// the model's parameter values. Evaluation mode (no dropout).
std::vector<double> straight_line_predict(const trainer::GmeModel& model, const trainer::ToyInstance& toy);

/// Random toy: shape, quantifier and ablation drawn from the seed.
struct RandomToy {
  std::unique_ptr<trainer::ToyInstance> toy;
  trainer::GmeModel model;
};
RandomToy random_toy(std::uint64_t seed);

}  // namespace gme::oracle
