#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

namespace gme::oracle {

using data::kDay;
using data::kHour;
using data::Timestamp;
using Vec = std::vector<double>;

data::Market random_market(std::uint64_t seed, const RandomMarketShape& shape) {
  std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 17);
  std::uniform_int_distribution<Timestamp> minute(0, static_cast<Timestamp>(shape.span_days) * 24 * 60);
  std::uniform_int_distribution<int> duration(1, shape.max_duration);
  std::uniform_int_distribution<std::size_t> cat(0, shape.categories - 1);
  std::uniform_int_distribution<int> nevents(0, shape.max_events);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Timestamp base = 1600000000 - 1600000000 % kDay;
  std::vector<data::ProjectRecord> projects;
  std::vector<data::InvestmentEvent> events;
  for (std::size_t i = 0; i < shape.projects; ++i) {
    data::ProjectRecord p;
    p.id = "r" + std::to_string(i);
    p.published = base + minute(rng) * 60;
    p.category = "c" + std::to_string(cat(rng));
    p.creator_type = unit(rng) < 0.5 ? "individual" : "company";
    p.currency = "USD";
    p.duration_days = duration(rng);
    p.goal = 100.0 + 9900.0 * unit(rng);
    p.text = "item " + std::to_string(i % 7);
    const int n = nevents(rng);
    for (int k = 0; k < n; ++k) {
      const Timestamp t = p.published + static_cast<Timestamp>(unit(rng) * 3.0 * static_cast<double>(kDay));
      events.push_back({p.id, t, 1.0 + 50.0 * unit(rng)});
    }
    projects.push_back(std::move(p));
  }
  return data::Market(std::move(projects), std::move(events));
}

std::vector<std::size_t> brute_running(const data::Market& m, Timestamp t) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    const auto& p = m.project(i);
    if (p.published <= t && t < p.published + p.duration_days * kDay) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> brute_observable(const data::Market& m, Timestamp t_ref, int history_days, int tau_hours) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < m.size(); ++j) {
    const Timestamp gap = t_ref - m.project(j).published;
    const Timestamp tau = static_cast<Timestamp>(tau_hours) * kHour;
    if (tau < gap && gap < tau * history_days) out.push_back(j);
  }
  return out;
}

double brute_funds(const data::Market& m, std::size_t project, Timestamp from, Timestamp to) {
  double total = 0.0;
  for (const auto& f : m.funding(project)) {
    if (f.time >= from && f.time < to) total += f.amount;
  }
  return total;
}

std::vector<ReferenceNode> reference_tree(const data::Market& m, const std::vector<std::size_t>& roots,
                                          const std::vector<std::size_t>& observables, int history_days,
                                          int tau_hours) {
  const Timestamp lo = static_cast<Timestamp>(tau_hours) * kHour, hi = 2 * lo;
  struct Member {
    std::size_t project;
    int depth;
  };
  std::vector<Member> members;
  for (auto r : roots) members.push_back({r, 0});
  std::vector<ReferenceNode> out;
  std::set<std::size_t> attached;
  for (int k = 1; k <= history_days; ++k) {
    const auto snapshot = members;  // parents come from the layer state at iteration start
    for (auto c : observables) {
      if (attached.contains(c)) continue;
      const Timestamp tc = m.project(c).published;
      ReferenceNode best{c, k, 0, 0.0, {}};
      Timestamp best_gap = 0;
      bool found = false;
      for (const auto& p : snapshot) {
        const Timestamp gap = m.project(p.project).published - tc;
        if (gap <= lo || gap >= hi) continue;
        if (k == 1) best.root_parents.push_back(p.project);
        if (!found || gap < best_gap) {
          found = true;
          best_gap = gap;
          best.parent_project = p.project;
        }
      }
      if (!found) continue;
      best.gap_hours = static_cast<double>(best_gap) / static_cast<double>(kHour);
      attached.insert(c);
      members.push_back({c, k});
      out.push_back(std::move(best));
    }
  }
  return out;
}

std::vector<std::string> tree_violations(const met::PropagationTree& tree, const data::Market& m,
                                         const std::vector<std::size_t>& observables) {
  std::vector<std::string> v;
  const Timestamp lo = static_cast<Timestamp>(tree.tau_hours) * kHour, hi = 2 * lo;
  auto gap_of = [&](std::size_t parent, std::size_t child) {
    return m.project(tree.nodes[parent].project).published - m.project(tree.nodes[child].project).published;
  };
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    const auto& n = tree.nodes[i];
    const std::string tag = "node " + std::to_string(i) + ": ";
    if (tree.is_root(i)) {
      if (n.depth != 0 || !n.parents.empty()) v.push_back(tag + "root with depth or parents");
      continue;
    }
    if (n.parents.empty()) v.push_back(tag + "no parent");
    if (n.depth >= 2 && n.parents.size() != 1) v.push_back(tag + "depth>=2 with multiple parents");
    if (std::find(n.parents.begin(), n.parents.end(), n.primary_parent) == n.parents.end()) {
      v.push_back(tag + "primary parent not among parents");
    }
    for (auto p : n.parents) {
      if (tree.nodes[p].depth != n.depth - 1) v.push_back(tag + "parent depth mismatch");
      const auto g = gap_of(p, i);
      if (!(g > lo && g < hi)) v.push_back(tag + "edge gap " + std::to_string(g) + "s out of window");
      const auto& kids = tree.nodes[p].children;
      if (std::count(kids.begin(), kids.end(), i) != 1) v.push_back(tag + "child list mismatch");
    }
  }
  // Acyclic: walking parents from any node must reach a root in at most depth steps.
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    std::size_t cur = i;
    for (std::size_t steps = 0; !tree.is_root(cur); ++steps) {
      if (steps > tree.nodes.size()) {
        v.push_back("cycle through node " + std::to_string(i));
        break;
      }
      cur = tree.nodes[cur].primary_parent;
    }
  }

  std::vector<std::size_t> roots;
  for (std::size_t g = 0; g < tree.root_count; ++g) roots.push_back(tree.nodes[g].project);
  const auto ref = reference_tree(m, roots, observables, tree.history_days, tree.tau_hours);
  if (tree.nodes.size() != tree.root_count + ref.size()) {
    v.push_back("node count " + std::to_string(tree.nodes.size()) + " vs reference " +
                std::to_string(tree.root_count + ref.size()));
  }
  if (tree.dropped != observables.size() - ref.size()) v.push_back("dropped count mismatch");
  for (const auto& r : ref) {
    auto it = tree.node_of.find(r.project);
    if (it == tree.node_of.end()) {
      v.push_back("project " + std::to_string(r.project) + " missing from tree");
      continue;
    }
    const auto& n = tree.nodes[it->second];
    if (n.depth != r.depth) v.push_back("project " + std::to_string(r.project) + " depth mismatch");
    if (n.gap_hours != r.gap_hours) v.push_back("project " + std::to_string(r.project) + " parent gap mismatch");
    if (r.depth == 1) {
      std::set<std::size_t> got;
      for (auto p : n.parents) got.insert(tree.nodes[p].project);
      if (got != std::set<std::size_t>(r.root_parents.begin(), r.root_parents.end())) {
        v.push_back("project " + std::to_string(r.project) + " root parents mismatch");
      }
    }
  }
  return v;
}

std::size_t count_paths(const met::PropagationTree& tree, std::size_t from, std::size_t to) {
  if (from == to) return 1;
  std::size_t total = 0;
  for (auto p : tree.nodes[from].parents) total += count_paths(tree, p, to);
  return total;
}

namespace {

const numkit::Tensor& param(const trainer::GmeModel& model, const std::string& name) {
  return model.store().get(name).value;
}

// x [in] times W [in x out] plus b.
Vec affine(const Vec& x, const numkit::Tensor& w, const numkit::Tensor* b) {
  const std::size_t in = w.shape()[0], out = w.shape()[1];
  Vec y(out, 0.0);
  for (std::size_t j = 0; j < out; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < in; ++i) s += x[i] * w.at(i, j);
    y[j] = s + (b ? (*b)[j] : 0.0);
  }
  return y;
}

Vec plus(Vec a, const Vec& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

double sigmoid(double v) { return 1.0 / (1.0 + std::exp(-v)); }

Vec relu_v(Vec a) {
  for (auto& x : a) x = std::max(0.0, x);
  return a;
}

Vec prior_input(const data::Market& m, std::size_t i, Timestamp t_obs) {
  Vec in(30, 0.0);
  for (int k = 0; k < 24; ++k) {
    in[static_cast<std::size_t>(k)] =
        std::log2(1.0 + brute_funds(m, i, t_obs - (k + 1) * kHour, t_obs - k * kHour));
  }
  const auto& p = m.project(i);
  const double alpha = brute_funds(m, i, p.published, t_obs);
  const Timestamp elapsed = t_obs - p.published;
  const int days = std::max<int>(1, static_cast<int>((elapsed + kDay - 1) / kDay));
  const double tr = std::clamp(alpha / p.goal / std::log2(days + 1.0), 0.0, 1.0);
  in[24 + std::min<std::size_t>(5, static_cast<std::size_t>(std::floor(tr * 6.0)))] = 1.0;
  return in;
}

Vec quantify_prior(const trainer::GmeModel& model, const Vec& in) {
  auto h = relu_v(affine(in, param(model, "pcm.quantifier.layer1.weight"), &param(model, "pcm.quantifier.layer1.bias")));
  h = relu_v(affine(h, param(model, "pcm.quantifier.layer2.weight"), &param(model, "pcm.quantifier.layer2.bias")));
  h = affine(h, param(model, "pcm.quantifier.layer3.weight"), &param(model, "pcm.quantifier.layer3.bias"));
  for (auto& x : h) x = std::tanh(x);
  return h;
}

Vec quantify_lstm(const trainer::GmeModel& model, const Vec& newest_first) {
  const std::size_t hdim = model.config().hidden;
  Vec h(hdim, 0.0), c(hdim, 0.0);
  auto gate = [&](const std::string& g, double x) {
    const auto& wi = param(model, "pcm.quantifier." + g + ".input");
    const auto& b = param(model, "pcm.quantifier." + g + ".bias");
    Vec pre = affine(h, param(model, "pcm.quantifier." + g + ".recurrent"), nullptr);
    for (std::size_t j = 0; j < hdim; ++j) pre[j] = x * wi[j] + pre[j] + b[j];
    return pre;
  };
  for (std::size_t s = 24; s-- > 0;) {
    const double x = newest_first[s];
    auto i = gate("input_gate", x), f = gate("forget_gate", x), o = gate("output_gate", x), g = gate("cell", x);
    for (std::size_t j = 0; j < hdim; ++j) {
      c[j] = sigmoid(f[j]) * c[j] + sigmoid(i[j]) * std::tanh(g[j]);
      h[j] = sigmoid(o[j]) * std::tanh(c[j]);
    }
  }
  return h;
}

bool eq5_edge(const data::ProjectRecord& target, const data::ProjectRecord& rival, pcm::PruningMode mode) {
  const Timestamp gap = target.published - rival.published;
  const bool jf = 0 <= gap && gap <= 3 * kDay;
  const bool cate = target.category == rival.category;
  switch (mode) {
    case pcm::PruningMode::Unpruned: return true;
    case pcm::PruningMode::OnlyCate: return cate;
    case pcm::PruningMode::OnlyJF: return jf;
    case pcm::PruningMode::CateAndJF: return cate || jf;
  }
  return false;
}

}  // namespace

std::vector<double> straight_line_predict(const trainer::GmeModel& model, const trainer::ToyInstance& toy) {
  const auto& m = toy.market;
  const auto& cfg = toy.config;
  const auto& set = toy.prepared.sets[toy.context.set_index];
  const auto& feat = toy.prepared.features;
  const Timestamp t_obs = set.observation;
  const std::vector<std::size_t> targets = set.members;
  const std::set<std::size_t> target_set(targets.begin(), targets.end());
  const std::size_t hdim = model.config().hidden;
  const auto ablation = model.config().ablation;

  std::vector<Vec> combined(targets.size(), Vec(hdim, 0.0));

  if (ablation != trainer::Ablation::MetOnly) {
    std::vector<std::size_t> rivals;
    for (auto i : brute_running(m, t_obs)) {
      if (target_set.contains(i)) continue;
      bool any = false;
      for (auto g : targets) any = any || eq5_edge(m.project(g), m.project(i), cfg.pruning);
      if (any) rivals.push_back(i);
    }
    std::map<std::size_t, Vec> state;
    for (auto i : rivals) {
      const auto in = prior_input(m, i, t_obs);
      state[i] = model.config().quantifier == trainer::Quantifier::PriorMlp ? quantify_prior(model, in)
                                                                             : quantify_lstm(model, in);
    }
    const auto& w = param(model, "pcm.attention.projection");
    const auto& vt = param(model, "pcm.attention.score_target");
    const auto& vr = param(model, "pcm.attention.score_rival");
    const auto& wh = param(model, "pcm.attention.value");
    auto score = [&](const Vec& x, const numkit::Tensor& v) {
      const auto wx = affine(x, w, nullptr);
      double s = 0.0;
      for (std::size_t a = 0; a < wx.size(); ++a) s += wx[a] * v[a];
      return s;
    };
    for (std::size_t g = 0; g < targets.size(); ++g) {
      std::vector<std::size_t> nb;
      for (auto i : rivals) {
        if (eq5_edge(m.project(targets[g]), m.project(i), cfg.pruning)) nb.push_back(i);
      }
      if (nb.empty()) {
        combined[g] = affine(feat[targets[g]], param(model, "pcm.attention.target_embed"),
                             &param(model, "pcm.attention.target_embed_bias"));
        continue;
      }
      const double st = score(feat[targets[g]], vt);
      Vec logits;
      for (auto i : nb) {
        const double e = st + score(feat[i], vr);
        logits.push_back(e > 0.0 ? e : 0.2 * e);
      }
      double z = 0.0;
      for (auto l : logits) z += std::exp(l);
      for (std::size_t k = 0; k < nb.size(); ++k) {
        const double alpha = std::exp(logits[k]) / z;
        const auto v = affine(state[nb[k]], wh, nullptr);
        for (std::size_t j = 0; j < hdim; ++j) combined[g][j] += alpha * v[j];
      }
    }
  }

  if (ablation != trainer::Ablation::PcmOnly) {
    std::vector<std::size_t> obs;
    for (auto j : brute_observable(m, t_obs, cfg.history_days, cfg.tau_hours)) {
      if (!target_set.contains(j)) obs.push_back(j);
    }
    const auto ref = reference_tree(m, targets, obs, cfg.history_days, cfg.tau_hours);
    std::map<std::size_t, Vec> h;
    std::map<std::size_t, std::vector<std::size_t>> children;
    int deepest = 0;
    for (auto g : targets) {
      h[g] = feat[g];
      h[g].push_back(0.0);
    }
    for (const auto& r : ref) {
      h[r.project] = feat[r.project];
      const auto& p = m.project(r.project);
      h[r.project].push_back(std::log2(1.0 + brute_funds(m, r.project, p.published - 1000 * kDay,
                                                           p.published + cfg.tau_hours * kHour)));
      if (r.depth == 1) {
        for (auto root : r.root_parents) children[root].push_back(r.project);
      } else {
        children[r.parent_project].push_back(r.project);
      }
      deepest = std::max(deepest, r.depth);
    }
    const std::string c = "met.cell.";
    const auto& b = param(model, c + "aggregate_bias");
    auto gru = [&](const Vec& a, const Vec& prev) {
      const auto z = plus(affine(a, param(model, c + "update_gate.aggregate"), nullptr),
                          affine(prev, param(model, c + "update_gate.state"), nullptr));
      const auto r = plus(affine(a, param(model, c + "reset_gate.aggregate"), nullptr),
                          affine(prev, param(model, c + "reset_gate.state"), nullptr));
      Vec rh(prev.size());
      for (std::size_t j = 0; j < prev.size(); ++j) rh[j] = sigmoid(r[j]) * prev[j];
      const auto cand = plus(affine(a, param(model, c + "candidate.aggregate"), nullptr),
                             affine(rh, param(model, c + "candidate.state"), nullptr));
      Vec out(prev.size());
      for (std::size_t j = 0; j < prev.size(); ++j) {
        const double zz = sigmoid(z[j]);
        out[j] = (1.0 - zz) * prev[j] + zz * std::tanh(cand[j]);
      }
      return out;
    };
    auto update_node = [&](std::size_t project, std::map<std::size_t, Vec>& next) {
      Vec a(b.size(), 0.0);
      for (auto kid : children[project]) a = plus(a, h[kid]);
      for (std::size_t j = 0; j < a.size(); ++j) a[j] += b[j];
      next[project] = gru(a, h[project]);
    };
    for (int d = deepest - 1; d >= 1; --d) {
      std::map<std::size_t, Vec> next;
      for (const auto& r : ref) {
        if (r.depth == d && !children[r.project].empty()) update_node(r.project, next);
      }
      for (auto& [k, v] : next) h[k] = v;
    }
    std::map<std::size_t, Vec> next;
    for (auto g : targets) update_node(g, next);
    for (std::size_t g = 0; g < targets.size(); ++g) {
      const auto proj = affine(next[targets[g]], param(model, "met.projection.weight"), &param(model, "met.projection.bias"));
      combined[g] = plus(combined[g], proj);
    }
  }

  std::vector<double> out;
  const auto& wf = param(model, "head.weight");
  const auto& bf = param(model, "head.bias");
  for (const auto& c : combined) out.push_back(std::max(0.0, affine(c, wf, &bf)[0]));
  return out;
}

RandomToy random_toy(std::uint64_t seed) {
  std::mt19937_64 rng(seed + 1000);
  std::uniform_int_distribution<std::size_t> targets(1, 4), rivals(0, 8), history(0, 10);
  std::uniform_int_distribution<int> depth(2, 4), pick(0, 2);
  trainer::ToyShape shape;
  shape.targets = targets(rng);
  shape.rivals = rivals(rng);
  shape.history = history(rng);
  shape.history_days = depth(rng);
  auto toy = trainer::make_toy_instance(seed, shape);
  const auto q = seed % 2 ? trainer::Quantifier::Recurrent : trainer::Quantifier::PriorMlp;
  const trainer::Ablation abl[] = {trainer::Ablation::Full, trainer::Ablation::PcmOnly, trainer::Ablation::MetOnly};
  auto model = trainer::make_toy_model(*toy, q, abl[pick(rng)], seed);
  return {std::move(toy), std::move(model)};
}

}  // namespace gme::oracle
