#pragma once

#include <unordered_map>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "gme/dataset/records.hpp"

namespace gme::met {

struct TreeNode {
  std::size_t project = 0;             ///< market index
  int depth = 0;                       ///< roots 0
  std::vector<std::size_t> parents;    ///< node indices; >1 only for depth-1 nodes
  std::vector<std::size_t> children;   ///< node indices
  std::size_t primary_parent = 0;      ///< closest parent in time (unused for roots)
  double gap_hours = 0.0;              ///< T_parent - T_child for the primary parent
};

/// Layered history forest over a target set; targets are the roots.
///
/// Built iteratively: at round k every unattached observable looks for parents among the nodes
/// present when the round starts whose publication is more than tau and less than 2*tau hours
/// after its own. It attaches to the closest such parent; in round 1 it additionally links to
/// every qualifying root. Observables that never find a parent are left out.
struct PropagationTree {
  std::vector<TreeNode> nodes;  ///< roots first, in target order
  std::size_t root_count = 0;
  int history_days = 1;
  int tau_hours = 24;
  std::size_t dropped = 0;      ///< observables that never attached
  std::unordered_map<std::size_t, std::size_t> node_of;  ///< market index → node index

  bool is_root(std::size_t node) const { return node < root_count; }
  bool is_leaf(std::size_t node) const { return !is_root(node) && nodes[node].children.empty(); }
  int max_depth() const;
  /// Node indices per depth, 0..history_days.
  std::vector<std::vector<std::size_t>> layers() const;
  std::size_t edge_count() const;
};

PropagationTree build_propagation_tree(const data::Market& market, std::span<const std::size_t> targets,
                                       std::span<const std::size_t> observables, int history_days, int tau_hours);

/// Debug dump: one entry per node with id, depth, parents, and primary gap.
nlohmann::ordered_json dump_tree(const PropagationTree& tree, const data::Market& market);

}  // namespace gme::met
