#include "gme/met/tree.hpp"

#include <algorithm>
#include <limits>
#include <optional>

#include <nlohmann/json.hpp>

namespace gme::met {

int PropagationTree::max_depth() const {
  int d = 0;
  for (const auto& n : nodes) d = std::max(d, n.depth);
  return d;
}

std::vector<std::vector<std::size_t>> PropagationTree::layers() const {
  std::vector<std::vector<std::size_t>> out(static_cast<std::size_t>(std::max(history_days, max_depth())) + 1);
  for (std::size_t i = 0; i < nodes.size(); ++i) out[static_cast<std::size_t>(nodes[i].depth)].push_back(i);
  return out;
}

std::size_t PropagationTree::edge_count() const {
  std::size_t n = 0;
  for (const auto& node : nodes) n += node.children.size();
  return n;
}

PropagationTree build_propagation_tree(const data::Market& market, std::span<const std::size_t> targets,
                                       std::span<const std::size_t> observables, int history_days, int tau_hours) {
  PropagationTree tree;
  tree.history_days = history_days;
  tree.tau_hours = tau_hours;
  tree.root_count = targets.size();
  for (auto t : targets) {
    tree.node_of.emplace(t, tree.nodes.size());
    tree.nodes.push_back(TreeNode{t, 0, {}, {}, 0, 0.0});
  }

  const data::Timestamp lo = static_cast<data::Timestamp>(tau_hours) * data::kHour;
  const data::Timestamp hi = 2 * lo;
  std::vector<std::size_t> pending(observables.begin(), observables.end());

  for (int k = 1; k <= history_days && !pending.empty(); ++k) {
    const std::size_t frontier = tree.nodes.size();
    std::vector<std::size_t> still_pending;
    for (auto cand : pending) {
      const data::Timestamp t_child = market.project(cand).published;
      std::optional<std::size_t> best;
      data::Timestamp best_gap = std::numeric_limits<data::Timestamp>::max();
      std::vector<std::size_t> root_links;
      for (std::size_t j = 0; j < frontier; ++j) {
        const data::Timestamp gap = market.project(tree.nodes[j].project).published - t_child;
        if (!(gap > lo && gap < hi)) continue;
        if (k == 1) root_links.push_back(j);
        if (gap < best_gap) {
          best_gap = gap;
          best = j;
        }
      }
      if (!best) {
        still_pending.push_back(cand);
        continue;
      }
      const std::size_t id = tree.nodes.size();
      TreeNode node{cand, k, {}, {}, *best, static_cast<double>(best_gap) / static_cast<double>(data::kHour)};
      node.parents = k == 1 ? root_links : std::vector<std::size_t>{*best};
      for (auto p : node.parents) tree.nodes[p].children.push_back(id);
      tree.node_of.emplace(cand, id);
      tree.nodes.push_back(std::move(node));
    }
    pending = std::move(still_pending);
  }
  tree.dropped = pending.size();
  return tree;
}

nlohmann::ordered_json dump_tree(const PropagationTree& tree, const data::Market& market) {
  nlohmann::ordered_json nodes = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    const auto& n = tree.nodes[i];
    nlohmann::ordered_json entry;
    entry["id"] = market.project(n.project).id;
    entry["depth"] = n.depth;
    entry["root"] = tree.is_root(i);
    std::vector<std::string> parents;
    for (auto p : n.parents) parents.push_back(market.project(tree.nodes[p].project).id);
    entry["parents"] = parents;
    if (!tree.is_root(i)) {
      entry["parent"] = market.project(tree.nodes[n.primary_parent].project).id;
      entry["gap_hours"] = n.gap_hours;
    }
    entry["children"] = n.children.size();
    nodes.push_back(std::move(entry));
  }
  nlohmann::ordered_json out;
  out["history_days"] = tree.history_days;
  out["tau_hours"] = tree.tau_hours;
  out["roots"] = tree.root_count;
  out["dropped"] = tree.dropped;
  out["nodes"] = std::move(nodes);
  return out;
}

}  // namespace gme::met
