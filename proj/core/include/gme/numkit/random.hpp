#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "gme/numkit/tensor.hpp"

namespace gme::numkit {

std::uint64_t splitmix64(std::uint64_t x) noexcept;
std::uint64_t fnv1a64(std::string_view text) noexcept;

/// Stable per-module seed derived from a master seed and a label.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view label) noexcept;

/// Uniform in [-a, a] with a = sqrt(6 / (fan_in + fan_out)).
Tensor xavier_uniform(const Shape& shape, std::size_t fan_in, std::size_t fan_out, std::mt19937_64& rng);

}  // namespace gme::numkit
