#include <random>

#include <benchmark/benchmark.h>

#include "gme/dataset/market_sets.hpp"
#include "gme/met/tree.hpp"
#include "gme/numkit/ops.hpp"
#include "gme/synth/generator.hpp"
#include "gme/trainer/model.hpp"
#include "gme/trainer/train.hpp"

using namespace gme;

namespace {

numkit::Tensor random_tensor(std::size_t r, std::size_t c, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1, 1);
  numkit::Tensor t({r, c});
  for (auto& v : t.values()) v = u(rng);
  return t;
}

void BM_Matmul(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto a = random_tensor(n, n, 1), b = random_tensor(n, n, 2);
  for (auto _ : state) {
    numkit::Tape tape;
    auto c = numkit::matmul(tape.constant(a), tape.constant(b));
    benchmark::DoNotOptimize(c.value().data().data());
  }
}
BENCHMARK(BM_Matmul)->Arg(16)->Arg(64)->Arg(128);

struct Fixture {
  data::Market market;
  trainer::TrainConfig config;
  trainer::PreparedMarket prepared;
  std::vector<trainer::TargetContext> contexts;

  explicit Fixture(trainer::Quantifier q) {
    synth::SynthConfig sc;
    sc.projects = 300;
    sc.horizon_days = 20;
    auto m = synth::generate_market(sc);
    market = data::Market(std::move(m.projects), std::move(m.events));
    config.model.quantifier = q;
    prepared = trainer::prepare_market(market, config);
    contexts = trainer::build_contexts(prepared, config);
  }
};

// One forward and backward pass over a mid-split target set.
void BM_Step(benchmark::State& state) {
  static Fixture prior(trainer::Quantifier::PriorMlp), recurrent(trainer::Quantifier::Recurrent);
  Fixture& fx = state.range(0) ? recurrent : prior;
  trainer::GmeModel model(fx.prepared.feature_width(), fx.config.model, 1);
  const auto& ctx = fx.contexts[fx.prepared.train_sets / 2];
  for (auto _ : state) {
    numkit::Tape tape;
    tape.training = true;
    auto f = model.forward(tape, ctx, 7);
    auto loss = trainer::joint_loss(tape, f, ctx, 0.7);
    tape.backward(loss.total);
    model.store().zero_grad();
  }
}
BENCHMARK(BM_Step)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_TreeBuild(benchmark::State& state) {
  static Fixture fx(trainer::Quantifier::PriorMlp);
  const int th = static_cast<int>(state.range(0));
  const auto& set = fx.prepared.sets[fx.prepared.sets.size() - 1];
  auto observables = data::observable_set(fx.market, set.observation, th, 24);
  for (auto _ : state) {
    auto tree = met::build_propagation_tree(fx.market, set.members, observables, th, 24);
    benchmark::DoNotOptimize(tree.nodes.data());
  }
}
BENCHMARK(BM_TreeBuild)->Arg(3)->Arg(7);

}  // namespace

BENCHMARK_MAIN();
