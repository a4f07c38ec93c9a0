#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "gme/dataset/records.hpp"

namespace gme::data {

enum class TextMode { Hashed, Precomputed };

/// Everything needed to encode a project identically at train and test time.
struct EncoderConfig {
  /// 15 strictly increasing money edges → 16 half-open goal bins.
  std::vector<double> goal_edges;
  /// Day edges → duration bins [1,15], [16,30], [31,45], [46,inf).
  std::vector<int> duration_edges;
  std::vector<std::string> categories;
  std::vector<std::string> creator_types;
  std::vector<std::string> currencies;
  TextMode text_mode = TextMode::Hashed;
  std::uint64_t text_seed = 0x5eed;

  /// Default bin edges with empty vocabularies.
  static EncoderConfig defaults();

  std::size_t goal_bins() const { return goal_edges.size() + 1; }
  std::size_t duration_bins() const { return duration_edges.size() + 1; }
  std::size_t width() const;

  void validate() const;
};

nlohmann::ordered_json to_json(const EncoderConfig& config);
EncoderConfig encoder_from_json(const nlohmann::ordered_json& j);

/// Builds vocabularies (sorted, plus a trailing overflow bucket) from the given projects.
EncoderConfig fit_encoder(std::span<const ProjectRecord> training, EncoderConfig base = EncoderConfig::defaults());

/// Index of the half-open bin [edges[k-1], edges[k]) holding value; 0 below the first edge.
template <class T>
std::size_t bin_index(const std::vector<T>& edges, T value) {
  return static_cast<std::size_t>(std::upper_bound(edges.begin(), edges.end(), value) - edges.begin());
}

/// Deterministic hashed bag-of-tokens projected to kTextDims.
std::vector<double> hashed_text_embedding(const std::string& text, std::uint64_t seed);

/// Text block, category, creator type, currency, duration, goal; one-hot blocks sum to 1.
std::vector<double> encode_static_features(const ProjectRecord& project, const EncoderConfig& config);

/// Offsets of the one-hot blocks inside an encoded vector, for diagnostics and tests.
struct FeatureLayout {
  std::size_t category, creator_type, currency, duration, goal, end;
};
FeatureLayout feature_layout(const EncoderConfig& config);

}  // namespace gme::data
