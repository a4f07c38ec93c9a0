#include "gme/dataset/market_sets.hpp"

#include <limits>
#include <map>
#include <stdexcept>

namespace gme::data {

namespace {
std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}
}  // namespace

std::vector<std::size_t> running_set(const Market& market, Timestamp t) {
  std::vector<std::size_t> out;
  const auto [first, last] = market.published_between(std::numeric_limits<Timestamp>::min(), t + 1);
  for (std::size_t i = first; i < last; ++i) {
    if (t < market.project(i).closes()) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> observable_set(const Market& market, Timestamp t_ref, int history_days,
                                        int tau_hours) {
  if (history_days < 1) throw std::invalid_argument("observable_set: history length must be >= 1");
  const Timestamp near = static_cast<Timestamp>(tau_hours) * kHour;
  const Timestamp far = near * history_days;
  std::vector<std::size_t> out;
  if (far <= near) return out;
  const auto [first, last] = market.published_between(t_ref - far + 1, t_ref - near);
  for (std::size_t i = first; i < last; ++i) out.push_back(i);
  return out;
}

int day_period(int local_hour) {
  for (std::size_t k = 0; k < kDayPeriods.size(); ++k) {
    if (local_hour >= kDayPeriods[k].first && local_hour < kDayPeriods[k].second) return static_cast<int>(k);
  }
  throw std::out_of_range("hour outside [0, 24)");
}

std::vector<TargetSet> segment_target_sets(const Market& market, Timestamp utc_offset) {
  std::map<std::pair<std::int64_t, int>, TargetSet> buckets;
  for (std::size_t i = 0; i < market.size(); ++i) {
    const Timestamp local = market.project(i).published + utc_offset;
    const std::int64_t day = floor_div(local, kDay);
    const int hour = static_cast<int>((local - day * kDay) / kHour);
    const int period = day_period(hour);
    auto& set = buckets[{day, period}];
    if (set.members.empty()) {
      set.day = day;
      set.period = period;
      set.observation = market.project(i).published;
    }
    set.members.push_back(i);
  }
  std::vector<TargetSet> out;
  out.reserve(buckets.size());
  for (auto& [key, set] : buckets) out.push_back(std::move(set));
  return out;
}

}  // namespace gme::data
