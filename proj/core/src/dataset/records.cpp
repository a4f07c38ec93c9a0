#include "gme/dataset/records.hpp"

#include <algorithm>
#include <cmath>

namespace gme::data {

namespace {
std::string format_message(const std::string& field, const std::string& message,
                           std::optional<std::size_t> line) {
  std::string out;
  if (line) out += "line " + std::to_string(*line) + ": ";
  out += "field '" + field + "': " + message;
  return out;
}
}  // namespace

DataError::DataError(std::string field, const std::string& message, std::optional<std::size_t> line)
    : std::runtime_error(format_message(field, message, line)),
      field_(std::move(field)),
      message_(message),
      line_(line) {}

void validate(const ProjectRecord& p) {
  if (p.id.empty()) throw DataError("id", "must be non-empty");
  if (!(p.goal > 0.0) || !std::isfinite(p.goal)) throw DataError("goal", "must be positive and finite");
  if (p.duration_days < 1) throw DataError("duration", "must be at least one day");
  if (p.embedding && p.embedding->size() != kTextDims) {
    throw DataError("vec", "embedding must have " + std::to_string(kTextDims) + " entries");
  }
  if (p.embedding) {
    for (double v : *p.embedding) {
      if (!std::isfinite(v)) throw DataError("vec", "embedding entries must be finite");
    }
  }
}

void validate(const InvestmentEvent& e) {
  if (e.project_id.empty()) throw DataError("project_id", "must be non-empty");
  if (!(e.amount > 0.0) || !std::isfinite(e.amount)) throw DataError("amount", "must be positive and finite");
}

Market::Market(std::vector<ProjectRecord> projects, std::vector<InvestmentEvent> events)
    : projects_(std::move(projects)) {
  for (const auto& p : projects_) validate(p);
  std::sort(projects_.begin(), projects_.end(), [](const ProjectRecord& a, const ProjectRecord& b) {
    return a.published != b.published ? a.published < b.published : a.id < b.id;
  });
  for (std::size_t i = 0; i < projects_.size(); ++i) {
    if (!index_.emplace(projects_[i].id, i).second) {
      throw DataError("id", "duplicate project id '" + projects_[i].id + "'");
    }
  }
  funding_.resize(projects_.size());
  for (const auto& e : events) {
    validate(e);
    auto it = index_.find(e.project_id);
    if (it == index_.end()) throw DataError("project_id", "unknown project '" + e.project_id + "'");
    funding_[it->second].push_back({e.time, e.amount});
  }
  for (auto& f : funding_) {
    std::stable_sort(f.begin(), f.end(), [](const Funding& a, const Funding& b) { return a.time < b.time; });
  }
}

std::optional<std::size_t> Market::find(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

double Market::funds_in(std::size_t i, Timestamp from, Timestamp to) const {
  const auto& f = funding_[i];
  auto lo = std::lower_bound(f.begin(), f.end(), from, [](const Funding& x, Timestamp t) { return x.time < t; });
  double total = 0.0;
  for (auto it = lo; it != f.end() && it->time < to; ++it) total += it->amount;
  return total;
}

std::pair<std::size_t, std::size_t> Market::published_between(Timestamp from, Timestamp to) const {
  auto lo = std::lower_bound(projects_.begin(), projects_.end(), from,
                             [](const ProjectRecord& p, Timestamp t) { return p.published < t; });
  auto hi = std::lower_bound(lo, projects_.end(), to,
                             [](const ProjectRecord& p, Timestamp t) { return p.published < t; });
  return {static_cast<std::size_t>(lo - projects_.begin()), static_cast<std::size_t>(hi - projects_.begin())};
}

}  // namespace gme::data
