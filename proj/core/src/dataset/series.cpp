#include "gme/dataset/series.hpp"

#include <algorithm>
#include <cmath>

namespace gme::data {

double fundraising_target(const Market& market, std::size_t project, int tau_hours) {
  const auto& p = market.project(project);
  const double alpha = market.funds_in(project, p.published, p.published + tau_hours * kHour);
  return std::log2(1.0 + alpha / p.goal);
}

HourlySeries hourly_series(const Market& market, std::size_t project, Timestamp t_obs) {
  HourlySeries out{};
  for (std::size_t k = 0; k < kSeriesHours; ++k) {
    const auto hi = t_obs - static_cast<Timestamp>(k) * kHour;
    const auto lo = hi - kHour;
    out[k] = std::log2(1.0 + market.funds_in(project, lo, hi));
  }
  return out;
}

double early_stage_amount(const Market& market, std::size_t project, int tau_hours) {
  const auto& p = market.project(project);
  const auto funding = market.funding(project);
  const Timestamp cutoff = p.published + tau_hours * kHour;
  double total = 0.0;
  for (const auto& f : funding) {
    if (f.time >= cutoff) break;
    total += f.amount;
  }
  return std::log2(1.0 + total);
}

double next_day_amount(const Market& market, std::size_t project, Timestamp t_obs) {
  return std::log2(1.0 + market.funds_in(project, t_obs, t_obs + kDay));
}

std::vector<double> trend_one_hot(double trend, std::size_t bins) {
  std::vector<double> out(bins, 0.0);
  const double clamped = std::clamp(trend, 0.0, 1.0);
  auto bin = static_cast<std::size_t>(std::floor(clamped * static_cast<double>(bins)));
  out[std::min(bin, bins - 1)] = 1.0;
  return out;
}

PriorTrend prior_trend(const Market& market, std::size_t project, Timestamp t_obs, std::size_t bins) {
  const auto& p = market.project(project);
  PriorTrend out;
  const Timestamp elapsed = std::max<Timestamp>(0, t_obs - p.published);
  out.funded_days = std::max<int>(1, static_cast<int>((elapsed + kDay - 1) / kDay));
  const double alpha = market.funds_in(project, p.published, t_obs);
  const double raw = (alpha / p.goal) / std::log2(static_cast<double>(out.funded_days) + 1.0);
  out.trend = std::clamp(raw, 0.0, 1.0);
  out.one_hot = trend_one_hot(out.trend, bins);
  return out;
}

}  // namespace gme::data
