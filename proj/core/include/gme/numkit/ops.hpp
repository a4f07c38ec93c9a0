#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gme/numkit/tape.hpp"

namespace gme::numkit {

inline constexpr double kLeakySlope = 0.2;

// Linear algebra and structure.

/// [m×k]·[k×n] → [m×n]; a rank-1 left operand [k] yields [n].
Var matmul(Var a, Var b);
Var add(Var a, Var b);
Var sub(Var a, Var b);
Var mul(Var a, Var b);
Var scale(Var a, double factor);
/// Adds a rank-1 bias [n] to every row of a (rank-1 [n] or rank-2 [m×n]).
Var add_bias(Var a, Var bias);
/// Adds a single-element tensor to every entry of a.
Var add_scalar(Var a, Var s);
/// Concatenates along the last axis. All rank-1, or all rank-2 with equal rows.
Var concat(std::span<const Var> parts);
Var concat(std::initializer_list<Var> parts);
/// Stacks rank-1 tensors of equal length into a matrix.
Var stack_rows(std::span<const Var> rows);
Var row(Var a, std::size_t index);
Var gather_rows(Var a, std::span<const std::size_t> indices);
Var gather(Var a, std::span<const std::size_t> indices);
Var add_n(std::span<const Var> terms);
/// Column sums of a matrix → rank-1.
Var sum_rows(Var a);
/// Reinterprets any tensor as rank-1.
Var flatten(Var a);

// Elementwise nonlinearities.

Var relu(Var a);
Var leaky_relu(Var a, double slope = kLeakySlope);
Var tanh(Var a);
Var sigmoid(Var a);
Var one_minus(Var a);
Var abs(Var a);

/// Softmax over a rank-1 set.
Var softmax(Var a);

/// Inverted dropout: survivors scaled by 1/keep. Identity when keep >= 1.
Var dropout(Var a, double keep, std::uint64_t seed);

// Reductions to a single element.

Var sum(Var a);
Var mean(Var a);

/// Mean absolute error between two equally shaped tensors.
Var mae(Var prediction, Var truth);

}  // namespace gme::numkit
