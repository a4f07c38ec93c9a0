#include "gme/trainer/toy.hpp"

#include <random>

#include "gme/numkit/random.hpp"

namespace gme::trainer {

std::unique_ptr<ToyInstance> make_toy_instance(std::uint64_t seed, const ToyShape& shape) {
  std::mt19937_64 rng(numkit::derive_seed(seed, "toy"));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const char* categories[] = {"alpha", "beta", "gamma"};
  const char* words[] = {"solar", "lamp", "board", "game", "film", "coffee", "watch", "bike"};

  const data::Timestamp day0 = 1577836800 + 10 * data::kDay;
  const data::Timestamp t_g = day0 + 9 * data::kHour;  // inside the 8-12 period
  std::vector<data::ProjectRecord> projects;
  std::vector<data::InvestmentEvent> events;
  auto add = [&](const std::string& id, data::Timestamp published, int duration) {
    data::ProjectRecord p;
    p.id = id;
    p.published = published;
    p.category = categories[static_cast<std::size_t>(unit(rng) * 3) % 3];
    p.creator_type = unit(rng) < 0.5 ? "individual" : "team";
    p.currency = "USD";
    p.duration_days = duration;
    p.goal = 500.0 + 4500.0 * unit(rng);
    for (int w = 0; w < 4; ++w) {
      if (w) p.text += ' ';
      p.text += words[static_cast<std::size_t>(unit(rng) * 8) % 8];
    }
    projects.push_back(p);
    const int n = 6 + static_cast<int>(unit(rng) * 10);
    for (int k = 0; k < n; ++k) {
      const auto t = published + static_cast<data::Timestamp>(unit(rng) * 2.0 * static_cast<double>(data::kDay));
      events.push_back({id, t, 5.0 + 40.0 * unit(rng)});
    }
  };

  for (std::size_t i = 0; i < shape.targets; ++i) {
    add("target" + std::to_string(i), t_g + static_cast<data::Timestamp>(i) * 20 * 60, 30);
  }
  // Rivals: published within the last ten days, still running, not observable history.
  for (std::size_t i = 0; i < shape.rivals; ++i) {
    const double back = i % 2 == 0 ? 0.1 + 0.8 * unit(rng) : 3.5 + 6.0 * unit(rng);
    add("rival" + std::to_string(i), t_g - static_cast<data::Timestamp>(back * data::kDay), 30);
  }
  // History: closed one-day projects 25-47 hours before the set.
  const int lo = 25, hi = 24 * shape.history_days - 1;
  for (std::size_t i = 0; i < shape.history; ++i) {
    const double hours = lo + (hi - lo) * unit(rng);
    add("hist" + std::to_string(i), t_g - static_cast<data::Timestamp>(hours * data::kHour), 1);
  }
  add("later", t_g + 2 * data::kDay, 30);

  auto toy = std::make_unique<ToyInstance>();
  toy->market = data::Market(std::move(projects), std::move(events));
  toy->config.history_days = shape.history_days;
  toy->config.seed = seed;
  toy->config.train_parts = 1;
  toy->config.test_parts = 1;
  toy->prepared = prepare_market(toy->market, toy->config);
  const auto first_target = *toy->market.find("target0");
  std::size_t set_index = 0;
  for (std::size_t s = 0; s < toy->prepared.sets.size(); ++s) {
    const auto& m = toy->prepared.sets[s].members;
    if (std::find(m.begin(), m.end(), first_target) != m.end()) set_index = s;
  }
  toy->context = build_context(toy->prepared, set_index, toy->config);
  return toy;
}

GmeModel make_toy_model(const ToyInstance& toy, Quantifier quantifier, Ablation ablation, std::uint64_t seed,
                        std::size_t hidden) {
  ModelConfig mc;
  mc.quantifier = quantifier;
  mc.ablation = ablation;
  mc.hidden = hidden;
  GmeModel model(toy.prepared.feature_width(), mc, seed);
  std::mt19937_64 rng(numkit::derive_seed(seed, "toy.head"));
  auto& head = model.store().get("head.weight");
  head.value = numkit::xavier_uniform(head.value.shape(), hidden, 1, rng);
  // Zero biases put dead rows exactly on a ReLU kink; nudge every bias off it.
  std::uniform_real_distribution<double> nudge(0.05, 0.25);
  for (auto* p : model.store().all()) {
    const auto& n = p->name;
    if (n.size() >= 4 && n.compare(n.size() - 4, 4, "bias") == 0) {
      for (auto& v : p->value.values()) v = nudge(rng);
    }
  }
  model.set_head_bias(0.5);
  model.store().get("pcm.aux_head.bias").value[0] = 0.3;
  return model;
}

numkit::GradCheckResult check_model_gradients(GmeModel& model, const ToyInstance& toy, double eta, double epsilon) {
  // Parameters the ablation never binds cannot move the loss; skip them.
  std::vector<numkit::Parameter*> params;
  {
    numkit::Tape tape;
    auto f = model.forward(tape, toy.context);
    joint_loss(tape, f, toy.context, eta);
    params = tape.bound_parameters();
  }
  return numkit::grad_check(
      [&](numkit::Tape& tape) {
        tape.training = false;
        auto f = model.forward(tape, toy.context);
        return joint_loss(tape, f, toy.context, eta).total;
      },
      params, epsilon);
}

}  // namespace gme::trainer
