#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "gme/dataset/records.hpp"

namespace gme::data {

// projects.jsonl: one object per line with keys
//   id, published (epoch seconds), category, creator_type, currency,
//   duration (days), goal, and either "text" (string) or "vec" (50 reals).
// investments.jsonl: one object per line with keys project_id, time, amount.
// Blank lines are skipped. Errors report the 1-based line number.

std::vector<ProjectRecord> read_projects(std::istream& in);
std::vector<InvestmentEvent> read_investments(std::istream& in);
std::vector<ProjectRecord> read_projects(const std::filesystem::path& path);
std::vector<InvestmentEvent> read_investments(const std::filesystem::path& path);

void write_projects(std::ostream& out, std::span<const ProjectRecord> projects);
void write_investments(std::ostream& out, std::span<const InvestmentEvent> events);

/// Loads both files and builds the indexed market.
Market load_market(const std::filesystem::path& projects, const std::filesystem::path& investments);

}  // namespace gme::data
