#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace gme::data {

/// Seconds since the Unix epoch.
using Timestamp = std::int64_t;

inline constexpr Timestamp kHour = 3600;
inline constexpr Timestamp kDay = 24 * kHour;
inline constexpr std::size_t kTextDims = 50;

struct ProjectRecord {
  std::string id;
  Timestamp published = 0;
  std::string category;
  std::string creator_type;
  std::string currency;
  int duration_days = 1;
  double goal = 1.0;
  std::string text;
  /// Precomputed description embedding; when present `text` is ignored.
  std::optional<std::vector<double>> embedding;

  Timestamp closes() const { return published + duration_days * kDay; }
};

struct InvestmentEvent {
  std::string project_id;
  Timestamp time = 0;
  double amount = 0.0;
};

/// Malformed or inconsistent input. Carries the offending field and, for file input, the line.
class DataError : public std::runtime_error {
 public:
  DataError(std::string field, const std::string& message, std::optional<std::size_t> line = {});

  const std::string& field() const noexcept { return field_; }
  const std::string& message() const noexcept { return message_; }
  std::optional<std::size_t> line() const noexcept { return line_; }

 private:
  std::string field_;
  std::string message_;
  std::optional<std::size_t> line_;
};

/// Throws DataError when a record violates its invariants.
void validate(const ProjectRecord& p);
void validate(const InvestmentEvent& e);

/// Immutable, chronologically indexed view of projects and their funding sequences.
///
/// Projects are stored sorted by (published, id); every index below refers to that order.
class Market {
 public:
  struct Funding {
    Timestamp time;
    double amount;
  };

  Market() = default;
  Market(std::vector<ProjectRecord> projects, std::vector<InvestmentEvent> events);

  std::size_t size() const noexcept { return projects_.size(); }
  const ProjectRecord& project(std::size_t i) const { return projects_[i]; }
  std::span<const ProjectRecord> projects() const noexcept { return projects_; }
  std::optional<std::size_t> find(const std::string& id) const;

  /// Funding sequence of one project, ascending by time.
  std::span<const Funding> funding(std::size_t i) const { return funding_[i]; }
  /// Sum of amounts with from <= t < to, summed in chronological order.
  double funds_in(std::size_t i, Timestamp from, Timestamp to) const;
  /// Index range [first, last) of projects with from <= published < to.
  std::pair<std::size_t, std::size_t> published_between(Timestamp from, Timestamp to) const;

 private:
  std::vector<ProjectRecord> projects_;
  std::vector<std::vector<Funding>> funding_;
  std::unordered_map<std::string, std::size_t> index_;
};

}  // namespace gme::data
