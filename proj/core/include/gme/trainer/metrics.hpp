#pragma once

#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gme/dataset/records.hpp"

namespace gme::trainer {

struct Metrics {
  double mae = 0.0;
  double rmse = 0.0;
  std::size_t count = 0;
};

/// Mean absolute and root mean squared error, accumulated in index order.
Metrics compute_metrics(std::span<const double> truth, std::span<const double> prediction);

struct PredictionRecord {
  std::string id;
  std::size_t set_index = 0;
  double truth = 0.0;
  double prediction = 0.0;
};

struct SetMetrics {
  std::size_t set_index = 0;
  std::int64_t day = 0;
  int period = 0;
  Metrics metrics;
};

struct EvalReport {
  std::string model;
  Metrics aggregate;
  std::vector<SetMetrics> per_set;
  std::vector<PredictionRecord> pairs;
  nlohmann::ordered_json notes = nlohmann::ordered_json::object();
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
};

/// Builds per-set and aggregate metrics from pairs grouped by set_index (pairs keep their order).
EvalReport make_report(std::string model, std::vector<PredictionRecord> pairs,
                       std::span<const SetMetrics> set_info = {});

nlohmann::ordered_json to_json(const Metrics& m);
nlohmann::ordered_json to_json(const EvalReport& r);
EvalReport report_from_json(const nlohmann::ordered_json& j);

}  // namespace gme::trainer
