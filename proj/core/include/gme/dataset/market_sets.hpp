#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "gme/dataset/records.hpp"

namespace gme::data {

/// Projects open for funding at t: published <= t < published + duration.
std::vector<std::size_t> running_set(const Market& market, Timestamp t);

/// Published projects j with tau < t_ref - T_j < tau * history_days (hours, strict on both sides).
std::vector<std::size_t> observable_set(const Market& market, Timestamp t_ref, int history_days,
                                        int tau_hours);

/// Local-time periods of a day, as [start hour, end hour).
inline constexpr std::array<std::pair<int, int>, 6> kDayPeriods = {
    {{0, 8}, {8, 12}, {12, 14}, {14, 17}, {17, 20}, {20, 24}}};

int day_period(int local_hour);

struct TargetSet {
  std::vector<std::size_t> members;  ///< ascending by publication
  Timestamp observation = 0;         ///< earliest member publication
  std::int64_t day = 0;              ///< local calendar day index
  int period = 0;                    ///< index into kDayPeriods
};

/// Groups every project into its (local day, period) bucket, chronologically ordered.
std::vector<TargetSet> segment_target_sets(const Market& market, Timestamp utc_offset = 0);

}  // namespace gme::data
