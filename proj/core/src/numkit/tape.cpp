#include "gme/numkit/tape.hpp"

#include <stdexcept>

namespace gme::numkit {

Parameter& ParameterStore::create(const std::string& name, Tensor init) {
  if (index_.contains(name)) throw std::invalid_argument("duplicate parameter name: " + name);
  index_.emplace(name, params_.size());
  return params_.emplace_back(name, std::move(init));
}

Parameter& ParameterStore::get(const std::string& name) {
  auto it = index_.find(name);
  if (it == index_.end()) throw std::out_of_range("unknown parameter: " + name);
  return params_[it->second];
}

const Parameter& ParameterStore::get(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw std::out_of_range("unknown parameter: " + name);
  return params_[it->second];
}

std::vector<Parameter*> ParameterStore::all() {
  std::vector<Parameter*> out;
  out.reserve(params_.size());
  for (auto& p : params_) out.push_back(&p);
  return out;
}

std::vector<const Parameter*> ParameterStore::all() const {
  std::vector<const Parameter*> out;
  out.reserve(params_.size());
  for (const auto& p : params_) out.push_back(&p);
  return out;
}

std::size_t ParameterStore::scalar_count() const {
  std::size_t n = 0;
  for (const auto& p : params_) n += p.value.size();
  return n;
}

void ParameterStore::zero_grad() {
  for (auto& p : params_) p.zero_grad();
}

const Tensor& Var::value() const { return tape->value(*this); }

Var Tape::constant(Tensor value) { return record(std::move(value), {}, nullptr); }

Var Tape::parameter(Parameter& p) {
  if (auto it = bound_.find(&p); it != bound_.end()) return Var{this, it->second};
  Var v = record(p.value, {}, nullptr);
  nodes_[v.id].param = &p;
  nodes_[v.id].requires_grad = true;
  bound_.emplace(&p, v.id);
  return v;
}

std::vector<Parameter*> Tape::bound_parameters() const {
  std::vector<Parameter*> out;
  for (const auto& n : nodes_) {
    if (n.param) out.push_back(n.param);
  }
  return out;
}

Var Tape::record(Tensor value, std::vector<std::uint32_t> inputs, Backprop backprop) {
  Node node;
  node.value = std::move(value);
  for (auto i : inputs) node.requires_grad = node.requires_grad || nodes_[i].requires_grad;
  node.inputs = std::move(inputs);
  node.backprop = std::move(backprop);
  nodes_.push_back(std::move(node));
  return Var{this, static_cast<std::uint32_t>(nodes_.size() - 1)};
}

Tensor& Tape::grad(std::uint32_t id) {
  auto& node = nodes_[id];
  if (!node.has_grad) {
    node.grad = Tensor(node.value.shape(), 0.0);
    node.has_grad = true;
  }
  return node.grad;
}

void Tape::backward(Var loss) {
  if (loss.tape != this) throw std::invalid_argument("backward: loss belongs to another tape");
  if (value(loss).size() != 1) {
    throw ShapeError("backward: loss must be scalar, got " + shape_string(value(loss).shape()));
  }
  for (auto& n : nodes_) {
    n.has_grad = false;
    n.grad = Tensor();
  }
  grad(loss.id)[0] = 1.0;
  last_visits_ = 0;
  for (std::int64_t id = loss.id; id >= 0; --id) {
    auto& node = nodes_[static_cast<std::size_t>(id)];
    if (!node.has_grad || !node.requires_grad) continue;
    ++last_visits_;
    if (node.param != nullptr) {
      auto& pg = node.param->grad;
      const auto& g = node.grad;
      for (std::size_t i = 0; i < g.size(); ++i) pg[i] += g[i];
    } else if (node.backprop) {
      node.backprop(*this, static_cast<std::uint32_t>(id));
    }
  }
}

}  // namespace gme::numkit
