#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "gme/dataset/records.hpp"
#include "gme/synth/generator.hpp"

namespace gme::synth {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

SynthConfig small(std::uint64_t seed = 3) {
  SynthConfig c;
  c.seed = seed;
  c.projects = 120;
  c.horizon_days = 12;
  c.categories = 4;
  return c;
}

TEST(Synth, SameSeedSameFiles) {
  const auto base = fs::temp_directory_path() / "gme_synth_det";
  fs::remove_all(base);
  write_market(base / "a", generate_market(small()));
  write_market(base / "b", generate_market(small()));
  for (const char* f : {"projects.jsonl", "investments.jsonl", "trace.jsonl"}) {
    const auto a = slurp(base / "a" / f);
    EXPECT_FALSE(a.empty()) << f;
    EXPECT_EQ(a, slurp(base / "b" / f)) << f;
  }
  auto other = small(4);
  write_market(base / "c", generate_market(other));
  EXPECT_NE(slurp(base / "a" / "investments.jsonl"), slurp(base / "c" / "investments.jsonl"));
  fs::remove_all(base);
}

TEST(Synth, RecordsAreValidAndOrdered) {
  auto m = generate_market(small());
  ASSERT_EQ(m.projects.size(), 120u);
  for (std::size_t i = 0; i < m.projects.size(); ++i) {
    EXPECT_NO_THROW(data::validate(m.projects[i]));
    if (i) {
      EXPECT_LE(m.projects[i - 1].published, m.projects[i].published);
    }
    EXPECT_EQ(m.trace.ids[i], m.projects[i].id);
  }
  EXPECT_NO_THROW(data::Market(m.projects, m.events));
}

TEST(Synth, PreferenceRowsSumToOne) {
  auto m = generate_market(small());
  for (const auto& row : m.trace.preference) {
    EXPECT_NEAR(std::accumulate(row.begin(), row.end(), 0.0), 1.0, 1e-12);
    for (double v : row) EXPECT_GT(v, 0.0);
  }
}

TEST(Synth, NoCompetitionNoDriftIsPureDecay) {
  auto c = small();
  c.competition = 0.0;
  c.drift_volatility = 0.0;
  c.noise = 0.0;
  auto m = generate_market(c);
  data::Market market(m.projects, m.events);
  for (std::size_t p = 0; p < m.projects.size(); ++p) {
    const auto& intake = m.trace.expected_intake[p];
    for (std::size_t a = 1; a < intake.size(); ++a) {
      EXPECT_LT(intake[a], intake[a - 1]);
      EXPECT_NEAR(intake[a] / intake[0], 1.0 / (1.0 + static_cast<double>(a)), 1e-12);
    }
    const auto i = *market.find(m.projects[p].id);
    const auto t0 = m.projects[p].published;
    for (std::size_t a = 0; a < intake.size(); ++a) {
      const auto from = t0 + static_cast<data::Timestamp>(a) * data::kDay;
      EXPECT_NEAR(market.funds_in(i, from, from + data::kDay), intake[a], 1e-9 * intake[a]);
    }
  }
}

TEST(Synth, DoublingBudgetDoublesIntake) {
  auto c = small();
  auto m1 = generate_market(c);
  c.budget *= 2.0;
  auto m2 = generate_market(c);
  ASSERT_EQ(m1.trace.expected_intake.size(), m2.trace.expected_intake.size());
  for (std::size_t p = 0; p < m1.trace.expected_intake.size(); ++p) {
    for (std::size_t a = 0; a < m1.trace.expected_intake[p].size(); ++a) {
      EXPECT_EQ(m2.trace.expected_intake[p][a], 2.0 * m1.trace.expected_intake[p][a]);
    }
  }
  c.noise = 0.0;
  auto d1 = generate_market(c);
  c.budget /= 2.0;
  auto d2 = generate_market(c);
  ASSERT_EQ(d1.events.size(), d2.events.size());
  for (std::size_t e = 0; e < d1.events.size(); ++e) EXPECT_EQ(d1.events[e].amount, 2.0 * d2.events[e].amount);
}

TEST(Synth, BusyLaunchDaysEarnLess) {
  SynthConfig c;
  c.seed = 9;
  auto m = generate_market(c);
  data::Market market(m.projects, m.events);
  // First-day funds per unit of attractiveness and category preference, split by launch-day mass.
  struct Row {
    double mass, value;
  };
  std::vector<Row> rows;
  std::map<std::string, std::size_t> cat;
  for (std::size_t k = 0; k < m.trace.category_names.size(); ++k) cat[m.trace.category_names[k]] = k;
  for (std::size_t p = 0; p < m.projects.size(); ++p) {
    const auto& rec = m.projects[p];
    const auto day = static_cast<std::size_t>((rec.published - c.start) / data::kDay);
    const double raised = market.funds_in(*market.find(rec.id), rec.published, rec.published + data::kDay);
    rows.push_back({m.trace.mass[day], raised / (m.trace.attractiveness[p] * m.trace.preference[day][cat[rec.category]])});
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.mass < b.mass; });
  const std::size_t third = rows.size() / 3;
  ASSERT_GE(third, 200u);
  double quiet = 0.0, busy = 0.0;
  for (std::size_t i = 0; i < third; ++i) quiet += rows[i].value, busy += rows[rows.size() - 1 - i].value;
  EXPECT_GT(quiet / third - busy / third, 0.0);
}

TEST(Synth, RejectsBadConfig) {
  auto c = small();
  c.competition = 1.5;
  EXPECT_THROW(generate_market(c), std::invalid_argument);
  c = small();
  c.projects = 0;
  EXPECT_THROW(generate_market(c), std::invalid_argument);
}

}  // namespace
}  // namespace gme::synth
