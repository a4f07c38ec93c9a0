#include "gme/met/propagate.hpp"

#include <optional>

#include "gme/dataset/records.hpp"
#include "gme/numkit/ops.hpp"
#include "gme/numkit/random.hpp"

namespace gme::met {

using numkit::Tensor;
using numkit::Var;

GatedUpdate::GatedUpdate(numkit::ParameterStore& store, const std::string& prefix, std::size_t width,
                         std::mt19937_64& rng)
    : width_(width) {
  auto square = [&](const std::string& name) {
    return &store.create(prefix + "." + name, numkit::xavier_uniform({width, width}, width, width, rng));
  };
  bias_ = &store.create(prefix + ".aggregate_bias", Tensor({width}));
  wz_ = square("update_gate.aggregate");
  uz_ = square("update_gate.state");
  wr_ = square("reset_gate.aggregate");
  ur_ = square("reset_gate.state");
  wc_ = square("candidate.aggregate");
  uc_ = square("candidate.state");
}

Var GatedUpdate::bias(numkit::Tape& tape) const { return tape.parameter(*bias_); }

Var GatedUpdate::step(numkit::Tape& tape, Var a, Var h) const {
  using namespace numkit;
  Var z = sigmoid(add(matmul(a, tape.parameter(*wz_)), matmul(h, tape.parameter(*uz_))));
  Var r = sigmoid(add(matmul(a, tape.parameter(*wr_)), matmul(h, tape.parameter(*ur_))));
  Var candidate = numkit::tanh(add(matmul(a, tape.parameter(*wc_)), matmul(mul(r, h), tape.parameter(*uc_))));
  return add(mul(one_minus(z), h), mul(z, candidate));
}

Tensor init_states(const PropagationTree& tree, std::span<const std::vector<double>> features,
                   std::span<const double> early_amounts) {
  if (tree.nodes.empty()) throw std::invalid_argument("init_states: empty tree");
  const auto& first = features[tree.nodes[0].project];
  const std::size_t width = first.size() + 1;
  Tensor out({tree.nodes.size(), width});
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    const std::size_t p = tree.nodes[i].project;
    const auto& x = features[p];
    if (x.empty() || x.size() + 1 != width) {
      throw data::DataError("features", "missing or inconsistent feature vector for node " + std::to_string(i) +
                                            " (project index " + std::to_string(p) + ")");
    }
    std::copy(x.begin(), x.end(), &out.at(i, 0));
    out.at(i, width - 1) = tree.is_root(i) ? 0.0 : early_amounts[p];
  }
  return out;
}

Var hierarchical_propagate(numkit::Tape& tape, const PropagationTree& tree, Var initial, const GatedUpdate& cell,
                           PropagationTrace* trace) {
  const std::size_t count = tree.nodes.size();
  const std::size_t width = cell.width();
  if (initial.value().rows() != count || initial.value().cols() != width) {
    throw numkit::ShapeError("hierarchical_propagate: initial states " + numkit::shape_string(initial.shape()) +
                             " do not match tree of " + std::to_string(count) + " nodes, width " +
                             std::to_string(width));
  }
  if (trace) {
    trace->updates.assign(count, 0);
    trace->schedule.clear();
  }

  std::vector<std::optional<Var>> current(count);
  auto state = [&](std::size_t v) -> Var {
    if (!current[v]) current[v] = numkit::row(initial, v);
    return *current[v];
  };

  const auto layers = tree.layers();
  Var bias = cell.bias(tape);
  for (std::size_t depth = layers.size() - 1; depth-- > 0;) {
    std::vector<std::size_t> active;
    for (auto v : layers[depth]) {
      if (tree.is_root(v) || !tree.nodes[v].children.empty()) active.push_back(v);
    }
    if (active.empty()) continue;

    std::vector<Var> aggregates, previous;
    for (auto v : active) {
      const auto& kids = tree.nodes[v].children;
      if (kids.empty()) {
        aggregates.push_back(tape.constant(Tensor({width})));
      } else {
        std::vector<Var> terms;
        terms.reserve(kids.size());
        for (auto c : kids) terms.push_back(state(c));
        aggregates.push_back(terms.size() == 1 ? terms[0] : numkit::add_n(terms));
      }
      previous.push_back(state(v));
    }
    Var a = numkit::add_bias(numkit::stack_rows(aggregates), bias);
    Var updated = cell.step(tape, a, numkit::stack_rows(previous));
    for (std::size_t k = 0; k < active.size(); ++k) {
      current[active[k]] = numkit::row(updated, k);
      if (trace) ++trace->updates[active[k]];
    }
    if (trace) trace->schedule.push_back(active);
  }

  std::vector<Var> roots;
  for (std::size_t g = 0; g < tree.root_count; ++g) roots.push_back(state(g));
  return numkit::stack_rows(roots);
}

}  // namespace gme::met
