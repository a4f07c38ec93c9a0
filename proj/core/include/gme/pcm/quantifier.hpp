#pragma once

#include <random>
#include <string>

#include "gme/numkit/tape.hpp"

namespace gme::pcm {

/// Feedforward competitiveness quantifier: concat(hourly series, trend one-hot) → state.
/// Three affine layers, ReLU on the hidden two, tanh on the output.
class PriorMlpQuantifier {
 public:
  PriorMlpQuantifier(numkit::ParameterStore& store, const std::string& prefix, std::size_t input_width,
                     std::size_t hidden, std::mt19937_64& rng);

  /// inputs: [n x input_width] → [n x hidden]. Rows are evaluated independently.
  numkit::Var forward(numkit::Tape& tape, numkit::Var inputs) const;

  std::size_t input_width() const { return input_width_; }

 private:
  std::size_t input_width_;
  numkit::Parameter* w1_;
  numkit::Parameter* b1_;
  numkit::Parameter* w2_;
  numkit::Parameter* b2_;
  numkit::Parameter* w3_;
  numkit::Parameter* b3_;
};

/// LSTM over the hourly series, fed oldest hour first; returns the final hidden state.
class RecurrentQuantifier {
 public:
  RecurrentQuantifier(numkit::ParameterStore& store, const std::string& prefix, std::size_t hidden,
                      std::mt19937_64& rng);

  /// series: [n x steps], newest hour in column 0 → [n x hidden].
  numkit::Var forward(numkit::Tape& tape, const numkit::Tensor& series) const;

 private:
  struct Gate {
    numkit::Parameter* input;
    numkit::Parameter* recurrent;
    numkit::Parameter* bias;
  };
  Gate make_gate(numkit::ParameterStore& store, const std::string& name, std::mt19937_64& rng);
  numkit::Var gate_preactivation(numkit::Tape& tape, const Gate& g, numkit::Var x, numkit::Var h) const;

  std::size_t hidden_;
  Gate input_gate_, forget_gate_, output_gate_, cell_gate_;
};

}  // namespace gme::pcm
