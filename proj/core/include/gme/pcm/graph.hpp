#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "gme/dataset/records.hpp"

namespace gme::pcm {

enum class PruningMode { Unpruned, OnlyCate, OnlyJF, CateAndJF };

std::string to_string(PruningMode mode);
/// Accepts "unpruned", "cate", "jf", "cate-jf".
PruningMode parse_pruning(std::string_view text);

/// A rival counts as just funded for a target published within this window after it.
inline constexpr data::Timestamp kJustFundedWindow = 3 * data::kDay;

/// Edge rule between one target and one running rival.
bool keeps_edge(const data::ProjectRecord& target, const data::ProjectRecord& rival, PruningMode mode);

/// Bipartite rival → target graph for one target set.
struct CompetitivenessGraph {
  PruningMode mode = PruningMode::CateAndJF;
  std::vector<std::size_t> targets;  ///< market indices, one row each
  std::vector<std::size_t> rivals;   ///< market indices, one column each
  std::vector<std::uint8_t> adjacency;  ///< row-major |targets| x |rivals|
  std::unordered_map<std::size_t, std::size_t> row_of;
  std::unordered_map<std::size_t, std::size_t> column_of;

  bool edge(std::size_t row, std::size_t column) const { return adjacency[row * rivals.size() + column] != 0; }
  /// Columns with an edge into the given row.
  std::vector<std::size_t> neighbors(std::size_t row) const;
  /// Columns with at least one edge, ascending.
  std::vector<std::size_t> active_columns() const;
  std::size_t edge_count() const;
};

/// Rivals that are themselves targets are dropped from the columns.
CompetitivenessGraph build_competitiveness_graph(const data::Market& market,
                                                 std::span<const std::size_t> targets,
                                                 std::span<const std::size_t> running,
                                                 PruningMode mode);

}  // namespace gme::pcm
