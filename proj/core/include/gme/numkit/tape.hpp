#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "gme/numkit/tensor.hpp"

namespace gme::numkit {

/// A trainable tensor with its accumulated gradient.
struct Parameter {
  Parameter(std::string name, Tensor init)
      : name(std::move(name)), value(std::move(init)), grad(value.shape(), 0.0) {}

  std::string name;
  Tensor value;
  Tensor grad;

  void zero_grad() { grad.fill(0.0); }
};

/// Owns model parameters in creation order. Addresses are stable.
class ParameterStore {
 public:
  Parameter& create(const std::string& name, Tensor init);
  Parameter& get(const std::string& name);
  const Parameter& get(const std::string& name) const;
  bool contains(const std::string& name) const { return index_.contains(name); }

  std::vector<Parameter*> all();
  std::vector<const Parameter*> all() const;
  std::size_t size() const noexcept { return params_.size(); }
  std::size_t scalar_count() const;
  void zero_grad();

 private:
  std::deque<Parameter> params_;
  std::unordered_map<std::string, std::size_t> index_;
};

class Tape;

/// Handle to a value recorded on a tape.
struct Var {
  Tape* tape = nullptr;
  std::uint32_t id = 0;

  const Tensor& value() const;
  const Shape& shape() const { return value().shape(); }
};

/// Records primitive applications in forward order and replays them in reverse.
class Tape {
 public:
  using Backprop = std::function<void(Tape&, std::uint32_t self)>;

  Tape() = default;
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  Var constant(Tensor value);
  /// Binds a parameter as a leaf; binding the same parameter twice returns the same node.
  Var parameter(Parameter& p);

  /// Appends a derived node. `inputs` lists the node ids its backprop reads.
  Var record(Tensor value, std::vector<std::uint32_t> inputs, Backprop backprop);

  const Tensor& value(std::uint32_t id) const { return nodes_[id].value; }
  const Tensor& value(Var v) const { return nodes_[v.id].value; }
  /// Gradient buffer of a node, allocated on first access.
  Tensor& grad(std::uint32_t id);
  bool has_grad(std::uint32_t id) const { return nodes_[id].has_grad; }
  /// False for nodes that depend on no parameter; their gradients are never needed.
  bool requires_grad(std::uint32_t id) const { return nodes_[id].requires_grad; }

  /// Parameters bound on this tape, in binding order.
  std::vector<Parameter*> bound_parameters() const;

  /// Reverse sweep from a scalar loss. Parameter gradients are accumulated.
  void backward(Var loss);

  std::size_t size() const noexcept { return nodes_.size(); }
  std::size_t last_backward_visits() const noexcept { return last_visits_; }

  bool training = false;

 private:
  struct Node {
    Tensor value;
    Tensor grad;
    bool has_grad = false;
    bool requires_grad = false;
    std::vector<std::uint32_t> inputs;
    Backprop backprop;
    Parameter* param = nullptr;
  };

  std::vector<Node> nodes_;
  std::unordered_map<const Parameter*, std::uint32_t> bound_;
  std::size_t last_visits_ = 0;
};

}  // namespace gme::numkit
