#include "gme/dataset/features.hpp"

#include <cctype>
#include <cmath>
#include <set>

#include <nlohmann/json.hpp>

#include "gme/numkit/random.hpp"

namespace gme::data {

namespace {

constexpr double kGoalLogLow = 6.0;
constexpr double kGoalLogHigh = 21.0;
constexpr std::size_t kGoalBins = 16;

std::size_t vocab_index(const std::vector<std::string>& vocab, const std::string& value) {
  // Last entry is the overflow bucket.
  auto it = std::lower_bound(vocab.begin(), vocab.end() - 1, value);
  if (it != vocab.end() - 1 && *it == value) return static_cast<std::size_t>(it - vocab.begin());
  return vocab.size() - 1;
}

std::vector<std::string> build_vocab(std::set<std::string> values) {
  std::vector<std::string> out(values.begin(), values.end());
  out.emplace_back("<other>");
  return out;
}

}  // namespace

EncoderConfig EncoderConfig::defaults() {
  EncoderConfig c;
  const std::size_t interior = kGoalBins - 2;
  for (std::size_t k = 0; k <= interior; ++k) {
    const double e = kGoalLogLow + (kGoalLogHigh - kGoalLogLow) * static_cast<double>(k) /
                                       static_cast<double>(interior);
    c.goal_edges.push_back(std::exp2(e));
  }
  c.duration_edges = {16, 31, 46};
  c.categories = {"<other>"};
  c.creator_types = {"<other>"};
  c.currencies = {"<other>"};
  return c;
}

std::size_t EncoderConfig::width() const {
  return kTextDims + categories.size() + creator_types.size() + currencies.size() + duration_bins() +
         goal_bins();
}

void EncoderConfig::validate() const {
  auto increasing = [](const auto& v) {
    for (std::size_t i = 1; i < v.size(); ++i) {
      if (!(v[i - 1] < v[i])) return false;
    }
    return true;
  };
  if (goal_edges.empty() || !increasing(goal_edges)) throw DataError("goal_edges", "must be strictly increasing");
  if (duration_edges.empty() || !increasing(duration_edges)) {
    throw DataError("duration_edges", "must be strictly increasing");
  }
  for (const auto* v : {&categories, &creator_types, &currencies}) {
    if (v->empty()) throw DataError("vocabulary", "must contain at least the overflow bucket");
  }
}

nlohmann::ordered_json to_json(const EncoderConfig& c) {
  nlohmann::ordered_json j;
  j["goal_edges"] = c.goal_edges;
  j["duration_edges"] = c.duration_edges;
  j["categories"] = c.categories;
  j["creator_types"] = c.creator_types;
  j["currencies"] = c.currencies;
  j["text_mode"] = c.text_mode == TextMode::Hashed ? "hashed" : "precomputed";
  j["text_seed"] = c.text_seed;
  return j;
}

EncoderConfig encoder_from_json(const nlohmann::ordered_json& j) {
  EncoderConfig c;
  try {
    c.goal_edges = j.at("goal_edges").get<std::vector<double>>();
    c.duration_edges = j.at("duration_edges").get<std::vector<int>>();
    c.categories = j.at("categories").get<std::vector<std::string>>();
    c.creator_types = j.at("creator_types").get<std::vector<std::string>>();
    c.currencies = j.at("currencies").get<std::vector<std::string>>();
    const auto mode = j.at("text_mode").get<std::string>();
    if (mode != "hashed" && mode != "precomputed") throw DataError("text_mode", "unknown mode " + mode);
    c.text_mode = mode == "hashed" ? TextMode::Hashed : TextMode::Precomputed;
    c.text_seed = j.at("text_seed").get<std::uint64_t>();
  } catch (const nlohmann::ordered_json::exception& e) {
    throw DataError("encoder", e.what());
  }
  c.validate();
  return c;
}

EncoderConfig fit_encoder(std::span<const ProjectRecord> training, EncoderConfig base) {
  std::set<std::string> cats, creators, currencies;
  bool all_vec = !training.empty();
  for (const auto& p : training) {
    cats.insert(p.category);
    creators.insert(p.creator_type);
    currencies.insert(p.currency);
    all_vec = all_vec && p.embedding.has_value();
  }
  base.categories = build_vocab(std::move(cats));
  base.creator_types = build_vocab(std::move(creators));
  base.currencies = build_vocab(std::move(currencies));
  base.text_mode = all_vec ? TextMode::Precomputed : TextMode::Hashed;
  base.validate();
  return base;
}

std::vector<double> hashed_text_embedding(const std::string& text, std::uint64_t seed) {
  std::vector<double> out(kTextDims, 0.0);
  std::size_t tokens = 0;
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    std::uint64_t state = numkit::splitmix64(numkit::fnv1a64(token) ^ seed);
    for (auto& v : out) {
      state = numkit::splitmix64(state);
      v += static_cast<double>(state >> 11) * 0x1.0p-52 - 1.0;
    }
    ++tokens;
    token.clear();
  };
  for (unsigned char ch : text) {
    if (std::isalnum(ch)) {
      token.push_back(static_cast<char>(std::tolower(ch)));
    } else {
      flush();
    }
  }
  flush();
  if (tokens > 0) {
    for (auto& v : out) v /= static_cast<double>(tokens);
  }
  return out;
}

FeatureLayout feature_layout(const EncoderConfig& c) {
  FeatureLayout l{};
  l.category = kTextDims;
  l.creator_type = l.category + c.categories.size();
  l.currency = l.creator_type + c.creator_types.size();
  l.duration = l.currency + c.currencies.size();
  l.goal = l.duration + c.duration_bins();
  l.end = l.goal + c.goal_bins();
  return l;
}

std::vector<double> encode_static_features(const ProjectRecord& p, const EncoderConfig& c) {
  validate(p);
  std::vector<double> x(c.width(), 0.0);
  std::vector<double> text;
  if (c.text_mode == TextMode::Precomputed) {
    if (!p.embedding) throw DataError("vec", "precomputed embedding required for project " + p.id);
    text = *p.embedding;
  } else {
    text = p.embedding ? *p.embedding : hashed_text_embedding(p.text, c.text_seed);
  }
  std::copy(text.begin(), text.end(), x.begin());
  const auto l = feature_layout(c);
  x[l.category + vocab_index(c.categories, p.category)] = 1.0;
  x[l.creator_type + vocab_index(c.creator_types, p.creator_type)] = 1.0;
  x[l.currency + vocab_index(c.currencies, p.currency)] = 1.0;
  x[l.duration + bin_index(c.duration_edges, p.duration_days)] = 1.0;
  x[l.goal + bin_index(c.goal_edges, p.goal)] = 1.0;
  return x;
}

}  // namespace gme::data
