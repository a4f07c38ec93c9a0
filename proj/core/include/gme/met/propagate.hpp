#pragma once

#include <random>
#include <span>
#include <string>
#include <vector>

#include "gme/met/tree.hpp"
#include "gme/numkit/tape.hpp"

namespace gme::met {

/// Gated update over node states of width `width`:
///   z = σ(a W_z + h U_z), r = σ(a W_r + h U_r), h' = tanh(a W + (r ⊙ h) U),
///   h_new = (1 - z) ⊙ h + z ⊙ h'.
/// Also owns the aggregation bias b shared by every node.
class GatedUpdate {
 public:
  GatedUpdate(numkit::ParameterStore& store, const std::string& prefix, std::size_t width, std::mt19937_64& rng);

  /// Batched over rows: aggregate [L x S], previous [L x S] → [L x S].
  numkit::Var step(numkit::Tape& tape, numkit::Var aggregate, numkit::Var previous) const;
  numkit::Var bias(numkit::Tape& tape) const;
  std::size_t width() const { return width_; }

 private:
  std::size_t width_;
  numkit::Parameter* bias_;
  numkit::Parameter* wz_;
  numkit::Parameter* uz_;
  numkit::Parameter* wr_;
  numkit::Parameter* ur_;
  numkit::Parameter* wc_;
  numkit::Parameter* uc_;
};

/// h_i = [x_i || r_i] for history nodes, [x_g || 0] for roots. Both spans are indexed by market
/// project index; an empty feature vector for a tree node is an error.
numkit::Tensor init_states(const PropagationTree& tree, std::span<const std::vector<double>> features,
                           std::span<const double> early_amounts);

/// Per-node update counters from one pass.
struct PropagationTrace {
  std::vector<int> updates;
  std::vector<std::vector<std::size_t>> schedule;  ///< nodes updated at each iteration, in order
};

/// Leaves-to-roots pass: depths history_days-1 down to 0, one layer per iteration. A node is
/// updated once, from the sum of its children's current states plus b; leaves keep their
/// initial state; every root is updated in the final iteration. Returns root states [roots x S].
numkit::Var hierarchical_propagate(numkit::Tape& tape, const PropagationTree& tree, numkit::Var initial,
                                   const GatedUpdate& cell, PropagationTrace* trace = nullptr);

}  // namespace gme::met
