#include "gme/pcm/graph.hpp"

#include <stdexcept>
#include <unordered_set>

namespace gme::pcm {

std::string to_string(PruningMode mode) {
  switch (mode) {
    case PruningMode::Unpruned: return "unpruned";
    case PruningMode::OnlyCate: return "cate";
    case PruningMode::OnlyJF: return "jf";
    case PruningMode::CateAndJF: return "cate-jf";
  }
  return "?";
}

PruningMode parse_pruning(std::string_view text) {
  if (text == "unpruned") return PruningMode::Unpruned;
  if (text == "cate") return PruningMode::OnlyCate;
  if (text == "jf") return PruningMode::OnlyJF;
  if (text == "cate-jf") return PruningMode::CateAndJF;
  throw std::invalid_argument("unknown pruning mode: " + std::string(text));
}

bool keeps_edge(const data::ProjectRecord& target, const data::ProjectRecord& rival, PruningMode mode) {
  const auto gap = target.published - rival.published;
  const bool just_funded = gap >= 0 && gap <= kJustFundedWindow;
  const bool same_category = target.category == rival.category;
  switch (mode) {
    case PruningMode::Unpruned: return true;
    case PruningMode::OnlyCate: return same_category;
    case PruningMode::OnlyJF: return just_funded;
    case PruningMode::CateAndJF: return just_funded || same_category;
  }
  return false;
}

std::vector<std::size_t> CompetitivenessGraph::neighbors(std::size_t row) const {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < rivals.size(); ++c) {
    if (edge(row, c)) out.push_back(c);
  }
  return out;
}

std::vector<std::size_t> CompetitivenessGraph::active_columns() const {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < rivals.size(); ++c) {
    for (std::size_t r = 0; r < targets.size(); ++r) {
      if (edge(r, c)) {
        out.push_back(c);
        break;
      }
    }
  }
  return out;
}

std::size_t CompetitivenessGraph::edge_count() const {
  std::size_t n = 0;
  for (auto a : adjacency) n += a;
  return n;
}

CompetitivenessGraph build_competitiveness_graph(const data::Market& market,
                                                 std::span<const std::size_t> targets,
                                                 std::span<const std::size_t> running,
                                                 PruningMode mode) {
  CompetitivenessGraph g;
  g.mode = mode;
  const std::unordered_set<std::size_t> target_set(targets.begin(), targets.end());
  g.targets.assign(targets.begin(), targets.end());
  for (auto r : running) {
    if (!target_set.contains(r)) g.rivals.push_back(r);
  }
  for (std::size_t i = 0; i < g.targets.size(); ++i) g.row_of.emplace(g.targets[i], i);
  for (std::size_t j = 0; j < g.rivals.size(); ++j) g.column_of.emplace(g.rivals[j], j);
  g.adjacency.assign(g.targets.size() * g.rivals.size(), 0);
  for (std::size_t i = 0; i < g.targets.size(); ++i) {
    const auto& target = market.project(g.targets[i]);
    for (std::size_t j = 0; j < g.rivals.size(); ++j) {
      g.adjacency[i * g.rivals.size() + j] = keeps_edge(target, market.project(g.rivals[j]), mode) ? 1 : 0;
    }
  }
  return g;
}

}  // namespace gme::pcm
