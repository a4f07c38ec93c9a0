#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "gme/dataset/records.hpp"

namespace gme::synth {

struct SynthConfig {
  std::size_t projects = 800;
  std::size_t categories = 6;
  int horizon_days = 60;
  double budget = 4000.0;          ///< investor money per unit of attractiveness per day
  double drift_volatility = 0.25;  ///< std of the daily step of category log-weights
  double drift_bound = 1.5;        ///< log-weights stay in [-bound, bound]
  double competition = 0.6;        ///< kappa in [0, 1]
  double decay_shape = 1.0;        ///< intake ∝ (1 + age_days)^-shape
  double noise = 0.5;              ///< log-normal sigma of event amounts; 0 makes events deterministic
  double launch_dispersion = 0.6;  ///< log-normal sigma of daily launch weights
  double goal_elasticity = 0.8;    ///< attractiveness ∝ (goal / 5000)^elasticity
  double pledge_size = 60.0;       ///< typical event amount, sets the Poisson event rate
  data::Timestamp start = 1577836800;
  std::uint64_t seed = 1;

  void validate() const;
};

nlohmann::ordered_json to_json(const SynthConfig& c);

/// Latent quantities behind one generated market. Diagnostics only.
struct GroundTruthTrace {
  std::vector<std::string> ids;         ///< aligned with `attractiveness`
  std::vector<double> attractiveness;
  std::vector<std::vector<double>> preference;  ///< per day, per category; rows sum to 1
  std::vector<double> mass;             ///< normalized concurrent running mass per day
  std::vector<double> divisor;          ///< 1 + kappa * mass per day
  std::vector<std::string> category_names;

  /// Expected intake of project `p` in its age-day `age` (0 = launch day).
  std::vector<std::vector<double>> expected_intake;
};

struct SynthMarket {
  std::vector<data::ProjectRecord> projects;    ///< ascending by publication
  std::vector<data::InvestmentEvent> events;    ///< grouped by project, ascending in time
  GroundTruthTrace trace;
};

SynthMarket generate_market(const SynthConfig& config);

/// projects.jsonl, investments.jsonl and trace.jsonl in `dir`.
void write_market(const std::filesystem::path& dir, const SynthMarket& market);

}  // namespace gme::synth
