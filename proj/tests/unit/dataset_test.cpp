#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "gme/dataset/features.hpp"
#include "gme/dataset/io.hpp"
#include "gme/dataset/market_sets.hpp"
#include "gme/dataset/series.hpp"
#include "oracle.hpp"

using namespace gme::data;

namespace {

constexpr Timestamp kT0 = 1600041600;  // a UTC midnight

ProjectRecord project(std::string id, Timestamp published, double goal = 100.0, int duration = 30,
                      std::string category = "tech") {
  ProjectRecord p;
  p.id = std::move(id);
  p.published = published;
  p.goal = goal;
  p.duration_days = duration;
  p.category = std::move(category);
  p.creator_type = "individual";
  p.currency = "USD";
  p.text = "a small lamp";
  return p;
}

Market single(double goal, std::vector<std::pair<Timestamp, double>> funding, Timestamp published = kT0) {
  std::vector<InvestmentEvent> ev;
  for (auto [t, v] : funding) ev.push_back({"p", published + t, v});
  return Market({project("p", published, goal)}, std::move(ev));
}

}  // namespace

TEST(Target, NoFundingIsZero) { EXPECT_EQ(fundraising_target(single(50, {}), 0, 24), 0.0); }

TEST(Target, ExactGoalIsOne) {
  EXPECT_DOUBLE_EQ(fundraising_target(single(50, {{10, 20.0}, {3600, 30.0}}), 0, 24), 1.0);
}

TEST(Target, ThreeTimesGoalIsTwo) { EXPECT_DOUBLE_EQ(fundraising_target(single(50, {{10, 150.0}}), 0, 24), 2.0); }

TEST(Target, WindowExcludesLateEventsAndRespectsTau) {
  auto m = single(10, {{23 * kHour, 10.0}, {24 * kHour, 30.0}, {47 * kHour, 30.0}});
  EXPECT_DOUBLE_EQ(fundraising_target(m, 0, 24), 1.0);
  EXPECT_DOUBLE_EQ(fundraising_target(m, 0, 48), std::log2(1.0 + 7.0));
}

TEST(Target, MonotoneInFunding) {
  double prev = 0.0;
  for (double a = 0.0; a < 500.0; a += 7.5) {
    const double y = a > 0 ? fundraising_target(single(80, {{5, a}}), 0, 24) : 0.0;
    EXPECT_GE(y, prev);
    prev = y;
  }
}

TEST(HourlySeries, SingleEventInNewestHour) {
  auto m = single(1, {{kDay - 30 * 60, 7.0}});
  auto s = hourly_series(m, 0, kT0 + kDay);
  EXPECT_DOUBLE_EQ(s[0], 3.0);
  for (std::size_t k = 1; k < kSeriesHours; ++k) EXPECT_EQ(s[k], 0.0);
}

TEST(HourlySeries, EmptyIsAllZero) {
  auto s = hourly_series(single(1, {}), 0, kT0 + 5 * kHour);
  for (auto v : s) EXPECT_EQ(v, 0.0);
}

TEST(HourlySeries, MatchesWindowSumOracle) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<Timestamp> when(0, 2 * kDay);
  std::uniform_real_distribution<double> amount(0.5, 30.0);
  std::vector<std::pair<Timestamp, double>> f;
  for (int i = 0; i < 80; ++i) f.push_back({when(rng), amount(rng)});
  f.push_back({kDay + 3 * kHour, 1.0});
  f.push_back({kDay + 3 * kHour + 10, 2.0});
  auto m = single(1, f);
  const Timestamp t_obs = kT0 + kDay + 4 * kHour;
  auto s = hourly_series(m, 0, t_obs);
  for (int k = 0; k < 24; ++k) {
    const double expect = std::log2(1.0 + gme::oracle::brute_funds(m, 0, t_obs - (k + 1) * kHour, t_obs - k * kHour));
    EXPECT_DOUBLE_EQ(s[static_cast<std::size_t>(k)], expect) << "hour " << k;
  }
}

TEST(HourlySeries, SameWindowEventsAreSummedFirst) {
  auto m = single(1, {{100, 1.0}, {200, 2.0}});
  EXPECT_DOUBLE_EQ(hourly_series(m, 0, kT0 + kHour)[0], 2.0);
}

TEST(HourlySeries, HoursBeforePublicationAreZero) {
  auto m = single(1, {{10, 3.0}});
  auto s = hourly_series(m, 0, kT0 + 2 * kHour);
  EXPECT_EQ(s[0], 0.0);
  EXPECT_DOUBLE_EQ(s[1], 2.0);
  for (std::size_t k = 2; k < kSeriesHours; ++k) EXPECT_EQ(s[k], 0.0);
}

TEST(EarlyAmount, SumsInsideTau) {
  EXPECT_DOUBLE_EQ(early_stage_amount(single(1, {{10, 3.0}, {20, 4.0}}), 0, 24), 3.0);
  EXPECT_EQ(early_stage_amount(single(1, {}), 0, 24), 0.0);
  auto m = single(1, {{kDay - 1, 3.0}, {kDay, 100.0}});
  EXPECT_DOUBLE_EQ(early_stage_amount(m, 0, 24), 2.0);
}

TEST(PriorTrend, HalfGoalOnDayOne) {
  auto m = single(100, {{60, 50.0}});
  auto tr = prior_trend(m, 0, kT0 + 10 * kHour);
  EXPECT_EQ(tr.funded_days, 1);
  EXPECT_DOUBLE_EQ(tr.trend, 0.5);
  EXPECT_EQ(tr.one_hot, std::vector<double>({0, 0, 0, 1, 0, 0}));
}

TEST(PriorTrend, BinningMatchesWorkedExample) {
  EXPECT_EQ(trend_one_hot(0.1, 5), std::vector<double>({1, 0, 0, 0, 0}));
  EXPECT_EQ(trend_one_hot(0.1, 6), std::vector<double>({1, 0, 0, 0, 0, 0}));
  EXPECT_EQ(trend_one_hot(1.0, 6), std::vector<double>({0, 0, 0, 0, 0, 1}));
  EXPECT_EQ(trend_one_hot(3.0, 6), std::vector<double>({0, 0, 0, 0, 0, 1}));
}

TEST(PriorTrend, FundedDaysRoundUpAndOverfundingClamps) {
  auto m = single(10, {{60, 100.0}});
  auto tr = prior_trend(m, 0, kT0 + 2 * kDay + 1);
  EXPECT_EQ(tr.funded_days, 3);
  EXPECT_EQ(tr.trend, 1.0);
  auto tr2 = prior_trend(single(100, {{60, 30.0}}), 0, kT0 + 3 * kDay);
  EXPECT_DOUBLE_EQ(tr2.trend, 0.3 / std::log2(4.0));
}

TEST(Encoding, DefaultLayoutAndOneHotBlocks) {
  std::vector<ProjectRecord> train = {project("a", kT0), project("b", kT0, 300, 45, "art")};
  train[1].currency = "EUR";
  auto cfg = fit_encoder(train);
  EXPECT_EQ(cfg.goal_bins(), 16u);
  EXPECT_EQ(cfg.duration_bins(), 4u);
  auto l = feature_layout(cfg);
  for (const auto& p : train) {
    auto x = encode_static_features(p, cfg);
    ASSERT_EQ(x.size(), cfg.width());
    for (auto [b, e] : {std::pair{l.category, l.creator_type}, {l.creator_type, l.currency}, {l.currency, l.duration},
                        {l.duration, l.goal}, {l.goal, l.end}}) {
      EXPECT_EQ(std::accumulate(x.begin() + static_cast<long>(b), x.begin() + static_cast<long>(e), 0.0), 1.0);
    }
  }
}

TEST(Encoding, GoalAtLowerEdgeOfBinThree) {
  auto cfg = fit_encoder(std::vector<ProjectRecord>{project("a", kT0)});
  const double edge = cfg.goal_edges[2];
  auto l = feature_layout(cfg);
  auto x = encode_static_features(project("g", kT0, edge), cfg);
  EXPECT_EQ(x[l.goal + 3], 1.0);
  auto below = encode_static_features(project("g", kT0, std::nextafter(edge, 0.0)), cfg);
  EXPECT_EQ(below[l.goal + 2], 1.0);
  EXPECT_DOUBLE_EQ(cfg.goal_edges.front(), 64.0);
  EXPECT_DOUBLE_EQ(cfg.goal_edges.back(), std::exp2(21.0));
}

TEST(Encoding, DurationBins) {
  auto cfg = fit_encoder(std::vector<ProjectRecord>{project("a", kT0)});
  auto l = feature_layout(cfg);
  for (auto [days, bin] : {std::pair{1, 0}, {15, 0}, {16, 1}, {30, 1}, {31, 2}, {45, 2}, {46, 3}, {60, 3}}) {
    auto x = encode_static_features(project("d", kT0, 100, days), cfg);
    EXPECT_EQ(x[l.duration + static_cast<std::size_t>(bin)], 1.0) << days;
  }
}

TEST(Encoding, UnseenCategoryGoesToOverflowAndIsDeterministic) {
  auto cfg = fit_encoder(std::vector<ProjectRecord>{project("a", kT0, 100, 30, "tech")});
  auto l = feature_layout(cfg);
  auto x = encode_static_features(project("z", kT0, 100, 30, "never-seen"), cfg);
  EXPECT_EQ(x[l.creator_type - 1], 1.0);
  EXPECT_EQ(encode_static_features(project("z", kT0), cfg), encode_static_features(project("z", kT0), cfg));
}

TEST(Encoding, PrecomputedVectorsAndMalformedRecords) {
  auto p = project("v", kT0);
  p.embedding = std::vector<double>(kTextDims, 0.25);
  auto cfg = fit_encoder(std::vector<ProjectRecord>{p});
  EXPECT_EQ(cfg.text_mode, TextMode::Precomputed);
  EXPECT_EQ(encode_static_features(p, cfg)[7], 0.25);
  EXPECT_THROW(encode_static_features(project("t", kT0), cfg), DataError);
  auto bad = project("b", kT0, -1.0);
  try {
    encode_static_features(bad, cfg);
    FAIL();
  } catch (const DataError& e) {
    EXPECT_EQ(e.field(), "goal");
  }
}

TEST(Encoding, ConfigJsonRoundTrip) {
  auto cfg = fit_encoder(std::vector<ProjectRecord>{project("a", kT0), project("b", kT0, 9, 3, "art")});
  auto back = encoder_from_json(to_json(cfg));
  EXPECT_EQ(to_json(back).dump(), to_json(cfg).dump());
  EXPECT_EQ(encode_static_features(project("q", kT0), back), encode_static_features(project("q", kT0), cfg));
}

TEST(RunningSet, WorkedExamples) {
  const Timestamp now = kT0 + 20 * kDay;
  Market m({project("yesterday", now - kDay, 100, 30), project("ended", now - 14 * kDay, 100, 7),
            project("tomorrow", now + kDay, 100, 30)},
           {});
  auto r = running_set(m, now);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(m.project(r[0]).id, "yesterday");
}

TEST(ObservableSet, StrictWindow) {
  const Timestamp t = kT0 + 10 * kDay;
  Market m({project("two_tau", t - 48 * kHour), project("one_tau", t - 24 * kHour), project("three_tau", t - 72 * kHour)},
           {});
  auto o = observable_set(m, t, 3, 24);
  ASSERT_EQ(o.size(), 1u);
  EXPECT_EQ(m.project(o[0]).id, "two_tau");
}

TEST(MarketSets, MatchBruteForceOnRandomMarkets) {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    auto m = gme::oracle::random_market(seed, {60, 14, 20, 3, 1});
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Timestamp> when(m.project(0).published - kDay, m.project(m.size() - 1).published + kDay);
    const Timestamp t = when(rng);
    const int th = 1 + static_cast<int>(seed % 7);
    const int tau = seed % 2 ? 24 : 48;
    ASSERT_EQ(running_set(m, t), gme::oracle::brute_running(m, t)) << seed;
    ASSERT_EQ(observable_set(m, t, th, tau), gme::oracle::brute_observable(m, t, th, tau)) << seed;
  }
}

TEST(Segmentation, MorningProjectsShareASet) {
  Market m({project("a", kT0 + 9 * kHour), project("b", kT0 + 11 * kHour + 30 * 60), project("c", kT0 + 13 * kHour)},
           {});
  auto sets = segment_target_sets(m);
  ASSERT_EQ(sets.size(), 2u);
  EXPECT_EQ(sets[0].members.size(), 2u);
  EXPECT_EQ(sets[0].observation, kT0 + 9 * kHour);
  EXPECT_EQ(sets[0].period, day_period(9));
  EXPECT_EQ(sets[1].members.size(), 1u);
}

TEST(Segmentation, PeriodsAndLocalOffset) {
  EXPECT_EQ(day_period(0), 0);
  EXPECT_EQ(day_period(7), 0);
  EXPECT_EQ(day_period(8), 1);
  EXPECT_EQ(day_period(12), 2);
  EXPECT_EQ(day_period(14), 3);
  EXPECT_EQ(day_period(17), 4);
  EXPECT_EQ(day_period(23), 5);
  Market m({project("a", kT0 + 7 * kHour), project("b", kT0 + 9 * kHour)}, {});
  EXPECT_EQ(segment_target_sets(m).size(), 2u);
  EXPECT_EQ(segment_target_sets(m, 2 * kHour).size(), 1u);
}

TEST(Segmentation, PartitionsEveryRandomMarket) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto m = gme::oracle::random_market(seed, {80, 20, 10, 3, 0});
    auto sets = segment_target_sets(m);
    std::vector<int> seen(m.size(), 0);
    Timestamp prev = std::numeric_limits<Timestamp>::min();
    for (const auto& s : sets) {
      ASSERT_FALSE(s.members.empty());
      EXPECT_GT(s.observation, prev);
      prev = s.observation;
      for (auto i : s.members) {
        ++seen[i];
        EXPECT_LE(s.observation, m.project(i).published);
        EXPECT_EQ(day_period(static_cast<int>((m.project(i).published % kDay) / kHour)), s.period);
      }
    }
    for (auto c : seen) ASSERT_EQ(c, 1);
  }
}

TEST(Io, ParsesRecordsAndReportsLineNumbers) {
  std::istringstream good(
      R"({"id":"a","published":100,"category":"c","creator_type":"t","currency":"USD","duration":30,"goal":5,"text":"hi"})"
      "\n\n"
      R"({"id":"b","published":200,"category":"c","creator_type":"t","currency":"USD","duration":3,"goal":7,"vec":[)" +
      [] {
        std::string s;
        for (int i = 0; i < 50; ++i) s += (i ? ",0.5" : "0.5");
        return s;
      }() + "]}\n");
  auto ps = read_projects(good);
  ASSERT_EQ(ps.size(), 2u);
  EXPECT_EQ(ps[1].embedding->size(), 50u);

  std::istringstream bad(
      R"({"id":"a","published":100,"category":"c","creator_type":"t","currency":"USD","duration":30,"goal":5,"text":"hi"})"
      "\n"
      R"({"id":"b","published":100,"category":"c","creator_type":"t","currency":"USD","duration":0,"goal":5,"text":"hi"})"
      "\n");
  try {
    read_projects(bad);
    FAIL();
  } catch (const DataError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.field(), "duration");
  }
  std::istringstream broken("{\"project_id\":\"a\",\"time\":1,\"amount\":2}\n{oops\n");
  try {
    read_investments(broken);
    FAIL();
  } catch (const DataError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  std::istringstream negative("{\"project_id\":\"a\",\"time\":1,\"amount\":-2}\n");
  EXPECT_THROW(read_investments(negative), DataError);
}

TEST(Io, WriteThenReadRoundTrip) {
  std::vector<ProjectRecord> ps = {project("a", kT0, 123.5), project("b", kT0 + 7, 9.25, 3, "art")};
  std::vector<InvestmentEvent> ev = {{"a", kT0 + 3, 1.5}, {"b", kT0 + 9, 0.1}};
  std::stringstream p, e;
  write_projects(p, ps);
  write_investments(e, ev);
  auto ps2 = read_projects(p);
  auto ev2 = read_investments(e);
  ASSERT_EQ(ps2.size(), 2u);
  EXPECT_EQ(ps2[1].goal, 9.25);
  EXPECT_EQ(ps2[1].category, "art");
  EXPECT_EQ(ev2[1].amount, 0.1);
  EXPECT_THROW(load_market("/nonexistent/p.jsonl", "/nonexistent/e.jsonl"), DataError);
}

TEST(MarketIndex, RejectsUnknownAndDuplicateIds) {
  EXPECT_THROW(Market({project("a", kT0)}, {{"zzz", kT0, 1.0}}), DataError);
  EXPECT_THROW(Market({project("a", kT0), project("a", kT0 + 1)}, {}), DataError);
}
