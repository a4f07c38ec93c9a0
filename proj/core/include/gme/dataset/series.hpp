#pragma once

#include <array>
#include <vector>

#include "gme/dataset/records.hpp"

namespace gme::data {

inline constexpr std::size_t kSeriesHours = 24;
inline constexpr std::size_t kTrendBins = 6;

/// Hourly log-amounts, newest first: entry k covers [t_obs - (k+1)h, t_obs - k h).
using HourlySeries = std::array<double, kSeriesHours>;

/// log2(1 + alpha / goal) with alpha the funds raised in the first `tau_hours` after publication.
double fundraising_target(const Market& market, std::size_t project, int tau_hours);

/// Per-hour log2(1 + sum) over the day before t_obs. Hours before publication read 0.
HourlySeries hourly_series(const Market& market, std::size_t project, Timestamp t_obs);

/// log2(1 + funds raised before published + tau hours).
double early_stage_amount(const Market& market, std::size_t project, int tau_hours);

/// log2(1 + funds raised in [t_obs, t_obs + 24h)); ground truth for the rival head.
double next_day_amount(const Market& market, std::size_t project, Timestamp t_obs);

struct PriorTrend {
  double trend = 0.0;  ///< clamped to [0, 1]
  int funded_days = 1;
  std::vector<double> one_hot;
};

/// One-hot over `bins` equal-width subintervals of [0, 1]; values outside are clamped.
std::vector<double> trend_one_hot(double trend, std::size_t bins);

/// Achieved-goal fraction at t_obs divided by log2(funded_days + 1), funded_days = ceil(elapsed
/// days), at least 1.
PriorTrend prior_trend(const Market& market, std::size_t project, Timestamp t_obs,
                       std::size_t bins = kTrendBins);

}  // namespace gme::data
