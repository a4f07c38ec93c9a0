#include "gme/dataset/io.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include <nlohmann/json.hpp>

namespace gme::data {

namespace {

using json = nlohmann::json;

template <class T>
T required(const json& obj, const char* key, std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end()) throw DataError(key, "missing", line);
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw DataError(key, "wrong type", line);
  }
}

template <class Record, class Parse>
std::vector<Record> read_lines(std::istream& in, Parse parse) {
  std::vector<Record> out;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    json obj;
    try {
      obj = json::parse(text);
    } catch (const json::parse_error&) {
      throw DataError("<record>", "invalid JSON", line);
    }
    if (!obj.is_object()) throw DataError("<record>", "expected a JSON object", line);
    Record r = parse(obj, line);
    try {
      validate(r);
    } catch (const DataError& e) {
      throw DataError(e.field(), e.message(), line);
    }
    out.push_back(std::move(r));
  }
  return out;
}

ProjectRecord parse_project(const json& obj, std::size_t line) {
  ProjectRecord p;
  p.id = required<std::string>(obj, "id", line);
  p.published = required<Timestamp>(obj, "published", line);
  p.category = required<std::string>(obj, "category", line);
  p.creator_type = required<std::string>(obj, "creator_type", line);
  p.currency = required<std::string>(obj, "currency", line);
  p.duration_days = required<int>(obj, "duration", line);
  p.goal = required<double>(obj, "goal", line);
  if (obj.contains("vec")) {
    p.embedding = required<std::vector<double>>(obj, "vec", line);
  } else {
    p.text = required<std::string>(obj, "text", line);
  }
  return p;
}

InvestmentEvent parse_event(const json& obj, std::size_t line) {
  InvestmentEvent e;
  e.project_id = required<std::string>(obj, "project_id", line);
  e.time = required<Timestamp>(obj, "time", line);
  e.amount = required<double>(obj, "amount", line);
  return e;
}

std::ifstream open(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("<file>", "cannot open " + path.string());
  return in;
}

}  // namespace

std::vector<ProjectRecord> read_projects(std::istream& in) {
  return read_lines<ProjectRecord>(in, parse_project);
}

std::vector<InvestmentEvent> read_investments(std::istream& in) {
  return read_lines<InvestmentEvent>(in, parse_event);
}

std::vector<ProjectRecord> read_projects(const std::filesystem::path& path) {
  auto in = open(path);
  return read_projects(in);
}

std::vector<InvestmentEvent> read_investments(const std::filesystem::path& path) {
  auto in = open(path);
  return read_investments(in);
}

void write_projects(std::ostream& out, std::span<const ProjectRecord> projects) {
  for (const auto& p : projects) {
    nlohmann::ordered_json obj;
    obj["id"] = p.id;
    obj["published"] = p.published;
    obj["category"] = p.category;
    obj["creator_type"] = p.creator_type;
    obj["currency"] = p.currency;
    obj["duration"] = p.duration_days;
    obj["goal"] = p.goal;
    if (p.embedding) {
      obj["vec"] = *p.embedding;
    } else {
      obj["text"] = p.text;
    }
    out << obj.dump() << '\n';
  }
}

void write_investments(std::ostream& out, std::span<const InvestmentEvent> events) {
  for (const auto& e : events) {
    nlohmann::ordered_json obj;
    obj["project_id"] = e.project_id;
    obj["time"] = e.time;
    obj["amount"] = e.amount;
    out << obj.dump() << '\n';
  }
}

Market load_market(const std::filesystem::path& projects, const std::filesystem::path& investments) {
  return Market(read_projects(projects), read_investments(investments));
}

}  // namespace gme::data
