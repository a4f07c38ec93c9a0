#include "gme/pcm/quantifier.hpp"

#include "gme/numkit/ops.hpp"
#include "gme/numkit/random.hpp"

namespace gme::pcm {

using numkit::Tensor;
using numkit::Var;

PriorMlpQuantifier::PriorMlpQuantifier(numkit::ParameterStore& store, const std::string& prefix,
                                       std::size_t input_width, std::size_t hidden, std::mt19937_64& rng)
    : input_width_(input_width) {
  auto layer = [&](const std::string& name, std::size_t in, std::size_t out, numkit::Parameter*& w,
                   numkit::Parameter*& b) {
    w = &store.create(prefix + "." + name + ".weight", numkit::xavier_uniform({in, out}, in, out, rng));
    b = &store.create(prefix + "." + name + ".bias", Tensor({out}));
  };
  layer("layer1", input_width, hidden, w1_, b1_);
  layer("layer2", hidden, hidden, w2_, b2_);
  layer("layer3", hidden, hidden, w3_, b3_);
}

Var PriorMlpQuantifier::forward(numkit::Tape& tape, Var inputs) const {
  Var h = numkit::relu(numkit::add_bias(numkit::matmul(inputs, tape.parameter(*w1_)), tape.parameter(*b1_)));
  h = numkit::relu(numkit::add_bias(numkit::matmul(h, tape.parameter(*w2_)), tape.parameter(*b2_)));
  return numkit::tanh(numkit::add_bias(numkit::matmul(h, tape.parameter(*w3_)), tape.parameter(*b3_)));
}

RecurrentQuantifier::RecurrentQuantifier(numkit::ParameterStore& store, const std::string& prefix,
                                         std::size_t hidden, std::mt19937_64& rng)
    : hidden_(hidden) {
  input_gate_ = make_gate(store, prefix + ".input_gate", rng);
  forget_gate_ = make_gate(store, prefix + ".forget_gate", rng);
  output_gate_ = make_gate(store, prefix + ".output_gate", rng);
  cell_gate_ = make_gate(store, prefix + ".cell", rng);
}

RecurrentQuantifier::Gate RecurrentQuantifier::make_gate(numkit::ParameterStore& store, const std::string& name,
                                                         std::mt19937_64& rng) {
  Gate g{};
  g.input = &store.create(name + ".input", numkit::xavier_uniform({1, hidden_}, 1, hidden_, rng));
  g.recurrent = &store.create(name + ".recurrent", numkit::xavier_uniform({hidden_, hidden_}, hidden_, hidden_, rng));
  g.bias = &store.create(name + ".bias", Tensor({hidden_}));
  return g;
}

Var RecurrentQuantifier::gate_preactivation(numkit::Tape& tape, const Gate& g, Var x, Var h) const {
  Var pre = numkit::add(numkit::matmul(x, tape.parameter(*g.input)), numkit::matmul(h, tape.parameter(*g.recurrent)));
  return numkit::add_bias(pre, tape.parameter(*g.bias));
}

Var RecurrentQuantifier::forward(numkit::Tape& tape, const Tensor& series) const {
  const std::size_t n = series.rows();
  const std::size_t steps = series.cols();
  Var h = tape.constant(Tensor({n, hidden_}));
  Var c = tape.constant(Tensor({n, hidden_}));
  for (std::size_t s = 0; s < steps; ++s) {
    const std::size_t col = steps - 1 - s;
    Tensor xt({n, 1});
    for (std::size_t r = 0; r < n; ++r) xt[r] = series.at(r, col);
    Var x = tape.constant(std::move(xt));
    Var i = numkit::sigmoid(gate_preactivation(tape, input_gate_, x, h));
    Var f = numkit::sigmoid(gate_preactivation(tape, forget_gate_, x, h));
    Var o = numkit::sigmoid(gate_preactivation(tape, output_gate_, x, h));
    Var g = numkit::tanh(gate_preactivation(tape, cell_gate_, x, h));
    c = numkit::add(numkit::mul(f, c), numkit::mul(i, g));
    h = numkit::mul(o, numkit::tanh(c));
  }
  return h;
}

}  // namespace gme::pcm
