#pragma once

#include <random>
#include <string>
#include <vector>

#include "gme/numkit/tape.hpp"

namespace gme::pcm {

/// Content-based attention from rivals onto targets.
///
/// Scores come from static features: e = v_t · (W x_g) + v_r · (W x_i), weights are the softmax of
/// LeakyReLU(e) over the target's neighbors, and the output is the weighted sum of W_h h_i.
/// A target without neighbors falls back to its own affine embedding of x_g.
class AttentionAggregator {
 public:
  AttentionAggregator(numkit::ParameterStore& store, const std::string& prefix, std::size_t feature_width,
                      std::size_t hidden, std::mt19937_64& rng);

  struct Output {
    numkit::Var states;                        ///< [targets x hidden]
    std::vector<std::vector<double>> weights;  ///< per target, aligned with its neighbor list
    std::vector<bool> isolated;
  };

  /// neighbors[g] indexes rows of rival_features / rival_states. rival_* may be empty Vars when
  /// no target has a neighbor.
  Output forward(numkit::Tape& tape, numkit::Var target_features, numkit::Var rival_features,
                 numkit::Var rival_states, const std::vector<std::vector<std::size_t>>& neighbors) const;

 private:
  numkit::Parameter* projection_;   // W  [F x A]
  numkit::Parameter* score_target_; // v_t [A x 1]
  numkit::Parameter* score_rival_;  // v_r [A x 1]
  numkit::Parameter* value_;        // W_h [H x H]
  numkit::Parameter* embed_;        // [F x H]
  numkit::Parameter* embed_bias_;   // [H]
};

/// Rival funding head: ReLU(h W' + b') per row → [n].
class AuxiliaryHead {
 public:
  AuxiliaryHead(numkit::ParameterStore& store, const std::string& prefix, std::size_t hidden, std::mt19937_64& rng);
  numkit::Var forward(numkit::Tape& tape, numkit::Var states) const;

 private:
  numkit::Parameter* weight_;
  numkit::Parameter* bias_;
};

}  // namespace gme::pcm
