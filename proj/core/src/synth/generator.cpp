#include "gme/synth/generator.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "gme/dataset/io.hpp"
#include "gme/numkit/random.hpp"

namespace gme::synth {

namespace {

constexpr const char* kCategoryNames[] = {"tech", "design", "film", "music", "games", "food",
                                           "fashion", "health", "travel", "art", "home", "outdoor"};
constexpr const char* kCreatorTypes[] = {"individual", "team", "company"};
constexpr const char* kCurrencies[] = {"USD", "EUR", "GBP"};
constexpr int kDurations[] = {15, 20, 30, 30, 30, 45, 60};
constexpr std::size_t kVocabulary = 48;
constexpr std::size_t kWordsPerText = 10;

std::string word(std::size_t k) {
  static constexpr const char* syllables[] = {"ka", "lo", "mi", "ren", "su", "tor", "vex", "no"};
  return std::string(syllables[k % 8]) + syllables[(k / 8) % 8] + "o";
}

std::string category_name(std::size_t k) {
  constexpr std::size_t named = std::size(kCategoryNames);
  return k < named ? kCategoryNames[k] : "category" + std::to_string(k);
}

std::vector<double> softmax(const std::vector<double>& x) {
  const double mx = *std::max_element(x.begin(), x.end());
  std::vector<double> out(x.size());
  double z = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) z += out[i] = std::exp(x[i] - mx);
  for (auto& v : out) v /= z;
  return out;
}

}  // namespace

void SynthConfig::validate() const {
  auto fail = [](const std::string& m) { throw std::invalid_argument("synth config: " + m); };
  if (projects == 0) fail("projects must be positive");
  if (categories == 0) fail("categories must be positive");
  if (horizon_days <= 0) fail("horizon_days must be positive");
  if (!(budget > 0.0)) fail("budget must be positive");
  if (!(drift_volatility >= 0.0)) fail("drift_volatility must be non-negative");
  if (!(drift_bound > 0.0)) fail("drift_bound must be positive");
  if (!(competition >= 0.0 && competition <= 1.0)) fail("competition must be in [0, 1]");
  if (!(decay_shape > 0.0)) fail("decay_shape must be positive");
  if (!(noise >= 0.0)) fail("noise must be non-negative");
  if (!(launch_dispersion >= 0.0)) fail("launch_dispersion must be non-negative");
  if (!(pledge_size > 0.0)) fail("pledge_size must be positive");
}

nlohmann::ordered_json to_json(const SynthConfig& c) {
  nlohmann::ordered_json j;
  j["projects"] = c.projects;
  j["categories"] = c.categories;
  j["horizon_days"] = c.horizon_days;
  j["budget"] = c.budget;
  j["drift_volatility"] = c.drift_volatility;
  j["drift_bound"] = c.drift_bound;
  j["competition"] = c.competition;
  j["decay_shape"] = c.decay_shape;
  j["noise"] = c.noise;
  j["launch_dispersion"] = c.launch_dispersion;
  j["goal_elasticity"] = c.goal_elasticity;
  j["pledge_size"] = c.pledge_size;
  j["start"] = c.start;
  j["seed"] = c.seed;
  return j;
}

SynthMarket generate_market(const SynthConfig& config) {
  config.validate();
  std::mt19937_64 rng(numkit::derive_seed(config.seed, "synthmarket"));
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t K = config.categories;
  const int max_duration = *std::max_element(std::begin(kDurations), std::end(kDurations));
  const std::size_t days = static_cast<std::size_t>(config.horizon_days + max_duration + 2);

  // Latent effects.
  std::vector<double> category_effect(K), creator_effect(std::size(kCreatorTypes)), word_effect(kVocabulary);
  for (auto& v : category_effect) v = 0.3 * normal(rng);
  for (auto& v : creator_effect) v = 0.25 * normal(rng);
  for (auto& v : word_effect) v = 0.8 * normal(rng);

  // Category preference random walk.
  SynthMarket out;
  auto& trace = out.trace;
  std::vector<double> logw(K);
  for (auto& v : logw) v = std::clamp(0.5 * normal(rng), -config.drift_bound, config.drift_bound);
  for (std::size_t d = 0; d < days; ++d) {
    trace.preference.push_back(softmax(logw));
    for (auto& v : logw) {
      v = std::clamp(v + config.drift_volatility * normal(rng), -config.drift_bound, config.drift_bound);
    }
  }
  for (std::size_t k = 0; k < K; ++k) trace.category_names.push_back(category_name(k));

  // Launch days and times.
  std::vector<double> day_weight(static_cast<std::size_t>(config.horizon_days));
  for (auto& w : day_weight) w = std::exp(config.launch_dispersion * normal(rng));
  std::discrete_distribution<int> launch_day(day_weight.begin(), day_weight.end());

  struct Draft {
    data::ProjectRecord record;
    std::size_t category;
    double attractiveness;
  };
  std::vector<Draft> drafts;
  drafts.reserve(config.projects);
  for (std::size_t i = 0; i < config.projects; ++i) {
    Draft d;
    const int day = launch_day(rng);
    const auto second = static_cast<data::Timestamp>(unit(rng) * static_cast<double>(data::kDay));
    d.record.published = config.start + day * data::kDay + std::min<data::Timestamp>(second, data::kDay - 1);
    d.category = static_cast<std::size_t>(unit(rng) * static_cast<double>(K)) % K;
    const std::size_t creator = static_cast<std::size_t>(unit(rng) * 3.0) % 3;
    const double cur = unit(rng);
    d.record.category = category_name(d.category);
    d.record.creator_type = kCreatorTypes[creator];
    d.record.currency = cur < 0.6 ? kCurrencies[0] : (cur < 0.85 ? kCurrencies[1] : kCurrencies[2]);
    d.record.duration_days = kDurations[static_cast<std::size_t>(unit(rng) * std::size(kDurations)) % std::size(kDurations)];
    d.record.goal = std::round(std::clamp(std::exp(std::log(5000.0) + 1.0 * normal(rng)), 200.0, 1e6) / 10.0) * 10.0;
    double text_effect = 0.0;
    std::string text;
    for (std::size_t w = 0; w < kWordsPerText; ++w) {
      const std::size_t k = static_cast<std::size_t>(unit(rng) * kVocabulary) % kVocabulary;
      text_effect += word_effect[k];
      if (!text.empty()) text += ' ';
      text += word(k);
    }
    d.record.text = std::move(text);
    const double latent = category_effect[d.category] + creator_effect[creator] +
                          text_effect / static_cast<double>(kWordsPerText) + 0.15 * normal(rng);
    d.attractiveness = std::exp(latent) * std::pow(d.record.goal / 5000.0, config.goal_elasticity);
    drafts.push_back(std::move(d));
  }
  std::stable_sort(drafts.begin(), drafts.end(),
                   [](const Draft& a, const Draft& b) { return a.record.published < b.record.published; });
  for (std::size_t i = 0; i < drafts.size(); ++i) {
    char id[32];
    std::snprintf(id, sizeof id, "p%05zu", i + 1);
    drafts[i].record.id = id;
  }

  auto day_of = [&](data::Timestamp t) {
    return static_cast<std::size_t>(std::clamp<data::Timestamp>((t - config.start) / data::kDay, 0,
                                                               static_cast<data::Timestamp>(days - 1)));
  };
  auto decay = [&](double age) { return std::pow(1.0 + age, -config.decay_shape); };

  // Concurrent running mass per calendar day, normalized to mean 1 over the horizon.
  trace.mass.assign(days, 0.0);
  for (const auto& d : drafts) {
    const std::size_t first = day_of(d.record.published);
    for (int a = 0; a < d.record.duration_days && first + a < days; ++a) {
      trace.mass[first + static_cast<std::size_t>(a)] += d.attractiveness * decay(a);
    }
  }
  double norm = 0.0;
  for (int d = 0; d < config.horizon_days; ++d) norm += trace.mass[static_cast<std::size_t>(d)];
  norm /= static_cast<double>(config.horizon_days);
  for (auto& m : trace.mass) m = norm > 0.0 ? m / norm : 0.0;
  for (double m : trace.mass) trace.divisor.push_back(1.0 + config.competition * m);

  // Expected intake per age-day and sampled events.
  for (auto& d : drafts) {
    std::vector<double> intake;
    for (int a = 0; a < d.record.duration_days; ++a) {
      const std::size_t cal = day_of(d.record.published + a * data::kDay);
      intake.push_back(config.budget * d.attractiveness * static_cast<double>(K) * trace.preference[cal][d.category] *
                       decay(a) / trace.divisor[cal]);
    }
    for (int a = 0; a < d.record.duration_days; ++a) {
      const double lambda = intake[static_cast<std::size_t>(a)];
      const data::Timestamp day_start = d.record.published + a * data::kDay;
      if (config.noise == 0.0) {
        for (int k = 0; k < 4; ++k) {
          const auto t = day_start + (2 * k + 1) * data::kDay / 8;
          out.events.push_back({d.record.id, t, lambda / 4.0});
        }
        continue;
      }
      const double rate = std::clamp(lambda / config.pledge_size, 0.2, 40.0);
      std::poisson_distribution<int> count(rate);
      const int n = count(rng);
      std::vector<data::Timestamp> times;
      for (int k = 0; k < n; ++k) {
        times.push_back(day_start +
                        std::min<data::Timestamp>(static_cast<data::Timestamp>(unit(rng) * data::kDay), data::kDay - 1));
      }
      std::sort(times.begin(), times.end());
      const double sigma = config.noise;
      for (auto t : times) {
        const double amount = lambda / rate * std::exp(sigma * normal(rng) - 0.5 * sigma * sigma);
        out.events.push_back({d.record.id, t, std::max(amount, 0.01)});
      }
    }
    trace.ids.push_back(d.record.id);
    trace.attractiveness.push_back(d.attractiveness);
    trace.expected_intake.push_back(std::move(intake));
    out.projects.push_back(std::move(d.record));
  }
  return out;
}

void write_market(const std::filesystem::path& dir, const SynthMarket& market) {
  std::filesystem::create_directories(dir);
  auto open = [&](const char* name) {
    std::ofstream f(dir / name, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + (dir / name).string());
    return f;
  };
  {
    auto f = open("projects.jsonl");
    data::write_projects(f, market.projects);
  }
  {
    auto f = open("investments.jsonl");
    data::write_investments(f, market.events);
  }
  auto f = open("trace.jsonl");
  const auto& t = market.trace;
  for (std::size_t i = 0; i < t.ids.size(); ++i) {
    nlohmann::ordered_json j;
    j["kind"] = "project";
    j["id"] = t.ids[i];
    j["attractiveness"] = t.attractiveness[i];
    j["expected_intake"] = t.expected_intake[i];
    f << j.dump() << '\n';
  }
  for (std::size_t d = 0; d < t.preference.size(); ++d) {
    nlohmann::ordered_json j;
    j["kind"] = "day";
    j["day"] = d;
    nlohmann::ordered_json pref;
    for (std::size_t k = 0; k < t.category_names.size(); ++k) pref[t.category_names[k]] = t.preference[d][k];
    j["preference"] = std::move(pref);
    j["mass"] = t.mass[d];
    j["divisor"] = t.divisor[d];
    f << j.dump() << '\n';
  }
}

}  // namespace gme::synth
