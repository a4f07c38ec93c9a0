#include "gme/trainer/metrics.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace gme::trainer {

Metrics compute_metrics(std::span<const double> truth, std::span<const double> prediction) {
  if (truth.empty()) throw std::invalid_argument("metrics: empty evaluation set");
  if (truth.size() != prediction.size()) throw std::invalid_argument("metrics: truth/prediction size mismatch");
  double abs_sum = 0.0, sq_sum = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const double e = truth[i] - prediction[i];
    abs_sum += std::abs(e);
    sq_sum += e * e;
  }
  const double n = static_cast<double>(truth.size());
  Metrics m;
  m.count = truth.size();
  m.mae = abs_sum / n;
  m.rmse = std::sqrt(sq_sum / n);
  return m;
}

EvalReport make_report(std::string model, std::vector<PredictionRecord> pairs, std::span<const SetMetrics> set_info) {
  if (pairs.empty()) throw std::invalid_argument("report: no predictions");
  EvalReport r;
  r.model = std::move(model);
  std::vector<double> truth, pred;
  std::map<std::size_t, std::pair<std::vector<double>, std::vector<double>>> grouped;
  for (const auto& p : pairs) {
    truth.push_back(p.truth);
    pred.push_back(p.prediction);
    auto& g = grouped[p.set_index];
    g.first.push_back(p.truth);
    g.second.push_back(p.prediction);
  }
  r.aggregate = compute_metrics(truth, pred);
  std::map<std::size_t, SetMetrics> info;
  for (const auto& s : set_info) info[s.set_index] = s;
  for (const auto& [index, g] : grouped) {
    SetMetrics s = info.contains(index) ? info[index] : SetMetrics{};
    s.set_index = index;
    s.metrics = compute_metrics(g.first, g.second);
    r.per_set.push_back(s);
  }
  r.pairs = std::move(pairs);
  return r;
}

nlohmann::ordered_json to_json(const Metrics& m) {
  nlohmann::ordered_json j;
  j["mae"] = m.mae;
  j["rmse"] = m.rmse;
  j["count"] = m.count;
  return j;
}

nlohmann::ordered_json to_json(const EvalReport& r) {
  nlohmann::ordered_json j;
  j["model"] = r.model;
  j["aggregate"] = to_json(r.aggregate);
  auto sets = nlohmann::ordered_json::array();
  for (const auto& s : r.per_set) {
    nlohmann::ordered_json e;
    e["set"] = s.set_index;
    e["day"] = s.day;
    e["period"] = s.period;
    e["mae"] = s.metrics.mae;
    e["rmse"] = s.metrics.rmse;
    e["count"] = s.metrics.count;
    sets.push_back(std::move(e));
  }
  j["per_set"] = std::move(sets);
  auto pairs = nlohmann::ordered_json::array();
  for (const auto& p : r.pairs) {
    nlohmann::ordered_json e;
    e["id"] = p.id;
    e["set"] = p.set_index;
    e["y"] = p.truth;
    e["y_pred"] = p.prediction;
    pairs.push_back(std::move(e));
  }
  j["pairs"] = std::move(pairs);
  j["notes"] = r.notes;
  j["config"] = r.config;
  return j;
}

EvalReport report_from_json(const nlohmann::ordered_json& j) {
  std::vector<PredictionRecord> pairs;
  for (const auto& e : j.at("pairs")) {
    pairs.push_back({e.at("id").get<std::string>(), e.at("set").get<std::size_t>(), e.at("y").get<double>(),
                     e.at("y_pred").get<double>()});
  }
  std::vector<SetMetrics> info;
  for (const auto& e : j.at("per_set")) {
    SetMetrics s;
    s.set_index = e.at("set").get<std::size_t>();
    s.day = e.at("day").get<std::int64_t>();
    s.period = e.at("period").get<int>();
    info.push_back(s);
  }
  auto r = make_report(j.at("model").get<std::string>(), std::move(pairs), info);
  r.notes = j.at("notes");
  r.config = j.at("config");
  return r;
}

}  // namespace gme::trainer
