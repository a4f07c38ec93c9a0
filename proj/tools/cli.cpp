#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "gme/dataset/io.hpp"
#include "gme/met/tree.hpp"
#include "gme/numkit/checkpoint.hpp"
#include "gme/numkit/ops.hpp"
#include "gme/synth/generator.hpp"
#include "gme/trainer/baselines.hpp"
#include "gme/trainer/toy.hpp"
#include "gme/trainer/train.hpp"

namespace gme::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class VerificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr double kGradTolerance = 1e-4;

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
}

void write_json(const fs::path& path, const ordered_json& j) { write_text(path, j.dump(2) + "\n"); }

std::string one_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

struct DataOptions {
  std::string dir;
  std::string projects;
  std::string investments;

  void add(CLI::App* app) {
    app->add_option("--data", dir, "Directory holding projects.jsonl and investments.jsonl");
    app->add_option("--projects", projects, "Projects JSONL (overrides --data)");
    app->add_option("--investments", investments, "Investments JSONL (overrides --data)");
  }

  std::pair<fs::path, fs::path> paths() const {
    fs::path p = projects, i = investments;
    if (p.empty() && !dir.empty()) p = fs::path(dir) / "projects.jsonl";
    if (i.empty() && !dir.empty()) i = fs::path(dir) / "investments.jsonl";
    if (p.empty() || i.empty()) throw UsageError("--data or both --projects and --investments are required");
    return {p, i};
  }

  data::Market load() const {
    auto [p, i] = paths();
    return data::load_market(p, i);
  }
};

struct TrainOptions {
  int tau = 24;
  int history_days = 3;
  double eta = 0.7;
  std::string pruning = "cate-jf";
  std::string quantifier = "prior-mlp";
  std::string ablation = "full";
  std::uint64_t seed = 1;
  int epochs = 20;
  double lr = 0.02;
  double decay = 0.96;
  std::uint64_t decay_every = 0;
  std::size_t hidden = 50;
  double keep = 0.9;
  int utc_offset_hours = 0;
  std::string split = "5:1";
  bool no_warm_start = false;

  void add(CLI::App* app) {
    app->add_option("--tau", tau, "Early window in hours")->check(CLI::IsMember({24, 48}));
    app->add_option("--t-h", history_days, "History length in days")->check(CLI::Range(1, 7));
    app->add_option("--eta", eta, "Trade-off weight of the prediction loss")->check(CLI::Range(0.0, 1.0));
    app->add_option("--pruning", pruning)->check(CLI::IsMember({"unpruned", "cate", "jf", "cate-jf"}));
    app->add_option("--quantifier", quantifier)->check(CLI::IsMember({"recurrent", "prior-mlp"}));
    app->add_option("--ablation", ablation)->check(CLI::IsMember({"full", "pcm-only", "met-only"}));
    app->add_option("--seed", seed);
    app->add_option("--epochs", epochs)->check(CLI::NonNegativeNumber);
    app->add_option("--lr", lr, "Initial learning rate")->check(CLI::PositiveNumber);
    app->add_option("--decay", decay, "Learning-rate decay factor")->check(CLI::Range(0.0, 1.0));
    app->add_option("--decay-every", decay_every, "Steps between decays (0 = once per epoch)");
    app->add_option("--hidden", hidden, "Hidden width")->check(CLI::PositiveNumber);
    app->add_option("--dropout-keep", keep)->check(CLI::Range(0.0, 1.0));
    app->add_option("--utc-offset", utc_offset_hours, "Local time offset in hours")->check(CLI::Range(-12, 14));
    app->add_option("--split", split, "Chronological train:test ratio");
    app->add_flag("--no-warm-start", no_warm_start, "Start the prediction bias at 0");
  }

  trainer::TrainConfig config() const {
    trainer::TrainConfig c;
    c.tau_hours = tau;
    c.history_days = history_days;
    c.eta = eta;
    c.pruning = pcm::parse_pruning(pruning);
    c.model.quantifier = trainer::parse_quantifier(quantifier);
    c.model.ablation = trainer::parse_ablation(ablation);
    c.model.hidden = hidden;
    c.model.dropout_keep = keep;
    c.seed = seed;
    c.epochs = epochs;
    c.initial_rate = lr;
    c.decay_factor = decay;
    c.decay_every = decay_every;
    c.utc_offset = static_cast<data::Timestamp>(utc_offset_hours) * data::kHour;
    c.warm_start_bias = !no_warm_start;
    const auto colon = split.find(':');
    try {
      if (colon == std::string::npos) throw std::invalid_argument(split);
      c.train_parts = std::stoi(split.substr(0, colon));
      c.test_parts = std::stoi(split.substr(colon + 1));
    } catch (const std::exception&) {
      throw UsageError("--split: expected A:B, got '" + split + "'");
    }
    try {
      c.validate();
    } catch (const trainer::ConfigError& e) {
      throw UsageError(e.what());
    }
    return c;
  }
};

ordered_json checkpoint_metadata(const trainer::TrainConfig& config, const trainer::PreparedMarket& prepared) {
  ordered_json m;
  m["format"] = "gme-model";
  m["train"] = trainer::to_json(config);
  m["encoder"] = data::to_json(prepared.encoder);
  m["feature_width"] = prepared.feature_width();
  return m;
}

struct LoadedModel {
  trainer::TrainConfig config;
  data::EncoderConfig encoder;
  numkit::Checkpoint checkpoint;
};

LoadedModel load_model(const fs::path& path) {
  LoadedModel out;
  out.checkpoint = numkit::read_checkpoint(path);
  ordered_json meta;
  try {
    meta = ordered_json::parse(out.checkpoint.metadata);
    out.config = trainer::train_config_from_json(meta.at("train"));
    out.encoder = data::encoder_from_json(meta.at("encoder"));
  } catch (const ordered_json::exception& e) {
    throw numkit::CheckpointError(std::string("bad checkpoint metadata: ") + e.what());
  }
  return out;
}

std::size_t pick_set(const trainer::PreparedMarket& prepared, long requested) {
  if (requested < 0) return prepared.train_sets;
  const auto s = static_cast<std::size_t>(requested);
  if (s >= prepared.sets.size()) {
    throw UsageError("--set " + std::to_string(requested) + " out of range (have " +
                     std::to_string(prepared.sets.size()) + " target sets)");
  }
  return s;
}

struct Invocation {
  std::vector<std::string> argv;
  std::string command;
  fs::path out_dir;
  ordered_json resolved = ordered_json::object();
};

void write_echo(const Invocation& inv) {
  ordered_json j;
  j["command"] = inv.command;
  j["argv"] = inv.argv;
  j["resolved"] = inv.resolved;
  write_json(inv.out_dir / "config.json", j);
}

double mean_epoch_seconds(const trainer::TrainHistory& h) {
  if (h.epochs.size() <= 1) return 0.0;
  double s = 0.0;
  for (std::size_t e = 1; e < h.epochs.size(); ++e) s += h.epochs[e].seconds;
  return s / static_cast<double>(h.epochs.size() - 1);
}

struct VariantResult {
  std::string variant;
  trainer::EvalReport report;
  double epoch_seconds = 0.0;
};

VariantResult train_variant(const std::string& name, const data::Market& market, const trainer::TrainConfig& cfg) {
  auto prepared = trainer::prepare_market(market, cfg);
  auto contexts = trainer::build_contexts(prepared, cfg);
  trainer::GmeModel model(prepared.feature_width(), cfg.model, cfg.seed);
  auto history = trainer::train(model, prepared, contexts, cfg);
  return {name, trainer::evaluate(model, prepared, contexts), mean_epoch_seconds(history)};
}

int cmd_synth(const Invocation& inv, const synth::SynthConfig& sc, std::ostream& out) {
  auto market = synth::generate_market(sc);
  synth::write_market(inv.out_dir, market);
  write_echo(inv);
  out << "wrote " << market.projects.size() << " projects and " << market.events.size() << " investments to "
      << inv.out_dir.string() << "\n";
  return kSuccess;
}

int cmd_train(const Invocation& inv, const DataOptions& data_opts, const TrainOptions& opts, std::ostream& out) {
  const auto cfg = opts.config();
  const auto market = data_opts.load();
  auto prepared = trainer::prepare_market(market, cfg);
  auto contexts = trainer::build_contexts(prepared, cfg);
  trainer::GmeModel model(prepared.feature_width(), cfg.model, cfg.seed);
  auto history = trainer::train(model, prepared, contexts, cfg);
  auto report = trainer::evaluate(model, prepared, contexts);
  report.config = trainer::to_json(cfg);
  fs::create_directories(inv.out_dir);
  numkit::write_checkpoint(inv.out_dir / "model.ckpt",
                           numkit::snapshot(model.store(), checkpoint_metadata(cfg, prepared).dump()));
  write_text(inv.out_dir / "loss_history.csv", trainer::history_csv(history));
  write_json(inv.out_dir / "report.json", trainer::to_json(report));
  write_echo(inv);
  out << report.model << " test MAE " << report.aggregate.mae << " RMSE " << report.aggregate.rmse << " over "
      << report.aggregate.count << " targets\n";
  return kSuccess;
}

int cmd_eval(const Invocation& inv, const DataOptions& data_opts, const std::string& checkpoint, std::ostream& out) {
  auto loaded = load_model(checkpoint);
  const auto market = data_opts.load();
  auto prepared = trainer::prepare_market(market, loaded.config, &loaded.encoder);
  auto contexts = trainer::build_contexts(prepared, loaded.config);
  trainer::GmeModel model(prepared.feature_width(), loaded.config.model, loaded.config.seed);
  numkit::restore(model.store(), loaded.checkpoint);
  auto report = trainer::evaluate(model, prepared, contexts);
  report.config = trainer::to_json(loaded.config);
  write_json(inv.out_dir / "report.json", trainer::to_json(report));
  write_echo(inv);
  out << report.model << " test MAE " << report.aggregate.mae << " RMSE " << report.aggregate.rmse << "\n";
  return kSuccess;
}

int cmd_ablate(const Invocation& inv, const DataOptions& data_opts, const TrainOptions& opts, const std::string& study,
               std::ostream& out) {
  const auto base = opts.config();
  const auto market = data_opts.load();
  std::vector<VariantResult> results;
  if (study == "ablation") {
    for (auto a : {trainer::Ablation::Full, trainer::Ablation::PcmOnly, trainer::Ablation::MetOnly}) {
      auto cfg = base;
      cfg.model.ablation = a;
      results.push_back(train_variant(trainer::to_string(a), market, cfg));
    }
  } else if (study == "pruning") {
    for (auto m : {pcm::PruningMode::Unpruned, pcm::PruningMode::OnlyCate, pcm::PruningMode::OnlyJF,
                   pcm::PruningMode::CateAndJF}) {
      auto cfg = base;
      cfg.pruning = m;
      results.push_back(train_variant(pcm::to_string(m), market, cfg));
    }
  } else if (study == "depth") {
    for (int t = 1; t <= 7; ++t) {
      auto cfg = base;
      cfg.history_days = t;
      results.push_back(train_variant("t_h=" + std::to_string(t), market, cfg));
    }
  } else if (study == "quantifier") {
    for (auto q : {trainer::Quantifier::PriorMlp, trainer::Quantifier::Recurrent}) {
      auto cfg = base;
      cfg.model.quantifier = q;
      results.push_back(train_variant(trainer::to_string(q), market, cfg));
    }
  } else if (study == "baselines") {
    auto prepared = trainer::prepare_market(market, base);
    auto contexts = trainer::build_contexts(prepared, base);
    for (auto k : {trainer::BaselineKind::Linear, trainer::BaselineKind::Mlp, trainer::BaselineKind::Mean}) {
      results.push_back({trainer::to_string(k), trainer::run_baseline(k, prepared, contexts, base), 0.0});
    }
    auto cfg = base;
    cfg.model.ablation = trainer::Ablation::Full;
    results.push_back(train_variant("GME", market, cfg));
  }

  ordered_json j;
  j["study"] = study;
  j["config"] = trainer::to_json(base);
  auto rows = ordered_json::array();
  std::ostringstream timing;
  timing << "variant,mean_epoch_seconds\n";
  for (const auto& r : results) {
    ordered_json row;
    row["variant"] = r.variant;
    row["model"] = r.report.model;
    row["mae"] = r.report.aggregate.mae;
    row["rmse"] = r.report.aggregate.rmse;
    row["count"] = r.report.aggregate.count;
    if (!r.report.notes.empty()) row["notes"] = r.report.notes;
    rows.push_back(std::move(row));
    timing << r.variant << "," << r.epoch_seconds << "\n";
    out << study << " " << r.variant << ": MAE " << r.report.aggregate.mae << " RMSE " << r.report.aggregate.rmse
        << "\n";
  }
  j["results"] = std::move(rows);
  write_json(inv.out_dir / ("ablate_" + study + ".json"), j);
  write_text(inv.out_dir / ("ablate_" + study + "_timing.csv"), timing.str());
  write_echo(inv);
  return kSuccess;
}

int cmd_inspect_attention(const Invocation& inv, const DataOptions& data_opts, const std::string& checkpoint,
                          long set, std::ostream& out) {
  auto loaded = load_model(checkpoint);
  if (loaded.config.model.ablation == trainer::Ablation::MetOnly) {
    throw UsageError("inspect-attention needs a model with the competitiveness module (not met-only)");
  }
  const auto market = data_opts.load();
  auto prepared = trainer::prepare_market(market, loaded.config, &loaded.encoder);
  const auto s = pick_set(prepared, set);
  auto ctx = trainer::build_context(prepared, s, loaded.config);
  trainer::GmeModel model(prepared.feature_width(), loaded.config.model, loaded.config.seed);
  numkit::restore(model.store(), loaded.checkpoint);

  numkit::Tape tape;
  auto f = model.forward(tape, ctx);
  std::vector<double> comp;
  if (f.auxiliary) {
    const auto& v = f.auxiliary->value();
    comp.assign(v.values().begin(), v.values().end());
    const auto [lo, hi] = std::minmax_element(comp.begin(), comp.end());
    const double low = *lo, span = *hi - *lo;
    for (auto& c : comp) c = span > 0.0 ? (c - low) / span : 0.0;
  }
  ordered_json j;
  j["set"] = s;
  j["observation"] = ctx.observation;
  auto targets = ordered_json::array();
  for (std::size_t g = 0; g < ctx.targets.size(); ++g) {
    ordered_json t;
    t["id"] = market.project(ctx.targets[g]).id;
    t["isolated"] = static_cast<bool>(f.isolated[g]);
    auto nb = ordered_json::array();
    for (std::size_t k = 0; k < ctx.neighbors[g].size(); ++k) {
      const auto r = ctx.neighbors[g][k];
      ordered_json e;
      e["id"] = market.project(ctx.rivals[r]).id;
      e["alpha"] = f.attention[g][k];
      e["competitiveness"] = comp[r];
      nb.push_back(std::move(e));
    }
    t["neighbors"] = std::move(nb);
    targets.push_back(std::move(t));
  }
  j["targets"] = std::move(targets);
  write_json(inv.out_dir / "attention.json", j);
  write_echo(inv);
  out << "attention for set " << s << " (" << ctx.targets.size() << " targets, " << ctx.rivals.size()
      << " rivals) written\n";
  return kSuccess;
}

int cmd_dump_tree(const Invocation& inv, const DataOptions& data_opts, const TrainOptions& opts, long set,
                  std::ostream& out) {
  const auto cfg = opts.config();
  const auto market = data_opts.load();
  auto prepared = trainer::prepare_market(market, cfg);
  const auto s = pick_set(prepared, set);
  auto ctx = trainer::build_context(prepared, s, cfg);
  auto j = met::dump_tree(ctx.tree, market);
  j["set"] = s;
  write_json(inv.out_dir / "tree.json", j);
  write_echo(inv);
  out << "tree for set " << s << ": " << ctx.tree.nodes.size() << " nodes, " << ctx.tree.edge_count()
      << " edges, max depth " << ctx.tree.max_depth() << "\n";
  return kSuccess;
}

int cmd_gradcheck(const Invocation& inv, bool toy, std::uint64_t seed, std::ostream& out) {
  if (!toy) throw UsageError("gradcheck currently supports only --toy");
  auto instance = trainer::make_toy_instance(seed);
  ordered_json j;
  j["seed"] = seed;
  j["tolerance"] = kGradTolerance;
  double worst = 0.0;
  auto rows = ordered_json::array();
  for (auto a : {trainer::Ablation::PcmOnly, trainer::Ablation::MetOnly, trainer::Ablation::Full}) {
    auto model = trainer::make_toy_model(*instance, trainer::Quantifier::PriorMlp, a, seed);
    auto r = trainer::check_model_gradients(model, *instance);
    worst = std::max(worst, r.max_relative_error);
    out << trainer::model_label(model.config()) << " max relative error " << r.max_relative_error << " ("
        << r.worst_parameter << ", " << r.checked_entries << " entries)\n";
    ordered_json row;
    row["model"] = trainer::model_label(model.config());
    row["max_relative_error"] = r.max_relative_error;
    row["worst_parameter"] = r.worst_parameter;
    row["entries"] = r.checked_entries;
    rows.push_back(std::move(row));
  }
  j["results"] = std::move(rows);
  j["max_relative_error"] = worst;
  out << "max relative error " << worst << "\n";
  if (!inv.out_dir.empty()) {
    write_json(inv.out_dir / "gradcheck.json", j);
    write_echo(inv);
  }
  if (!(worst < kGradTolerance)) {
    throw VerificationFailure("gradient check failed: max relative error " + std::to_string(worst) + " >= 1e-4");
  }
  return kSuccess;
}

std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  if (args.size() == 2 && args[0] == "--config") {
    std::ifstream f(args[1]);
    if (!f) throw data::DataError("<file>", "cannot open " + args[1]);
    try {
      auto j = ordered_json::parse(f);
      return j.at("argv").get<std::vector<std::string>>();
    } catch (const ordered_json::exception& e) {
      throw data::DataError("config", e.what());
    }
  }
  return args;
}

int dispatch(const std::vector<std::string>& raw, std::ostream& out) {
  const auto args = expand_config(raw);
  CLI::App app{"Fund-raising prediction with market-environment graphs", "gme"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  Invocation inv;
  inv.argv = args;
  std::string out_dir;

  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic market");
  synth::SynthConfig sc;
  synth_cmd->add_option("--n", sc.projects, "Project count")->check(CLI::PositiveNumber);
  synth_cmd->add_option("--categories", sc.categories)->check(CLI::PositiveNumber);
  synth_cmd->add_option("--horizon", sc.horizon_days, "Days over which projects launch")->check(CLI::PositiveNumber);
  synth_cmd->add_option("--budget", sc.budget)->check(CLI::PositiveNumber);
  synth_cmd->add_option("--drift", sc.drift_volatility, "Preference drift volatility")->check(CLI::NonNegativeNumber);
  synth_cmd->add_option("--drift-bound", sc.drift_bound)->check(CLI::PositiveNumber);
  synth_cmd->add_option("--kappa", sc.competition, "Competition strength")->check(CLI::Range(0.0, 1.0));
  synth_cmd->add_option("--decay-shape", sc.decay_shape)->check(CLI::PositiveNumber);
  synth_cmd->add_option("--noise", sc.noise)->check(CLI::NonNegativeNumber);
  synth_cmd->add_option("--launch-dispersion", sc.launch_dispersion)->check(CLI::NonNegativeNumber);
  synth_cmd->add_option("--seed", sc.seed);
  synth_cmd->add_option("--out", out_dir, "Output directory")->required();

  DataOptions data_opts;
  TrainOptions train_opts;
  std::string checkpoint, study;
  long set = -1;
  bool toy = false;
  std::uint64_t gc_seed = 1;

  auto* train_cmd = app.add_subcommand("train", "Train a model and evaluate it on the test split");
  data_opts.add(train_cmd);
  train_opts.add(train_cmd);
  train_cmd->add_option("--out", out_dir)->required();

  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a checkpoint on the test split");
  data_opts.add(eval_cmd);
  eval_cmd->add_option("--checkpoint", checkpoint)->required();
  eval_cmd->add_option("--out", out_dir)->required();

  auto* ablate_cmd = app.add_subcommand("ablate", "Train and compare model variants");
  data_opts.add(ablate_cmd);
  train_opts.add(ablate_cmd);
  ablate_cmd->add_option("--study", study)
      ->required()
      ->check(CLI::IsMember({"ablation", "pruning", "depth", "quantifier", "baselines"}));
  ablate_cmd->add_option("--out", out_dir)->required();

  auto* attn_cmd = app.add_subcommand("inspect-attention", "Dump attention weights for one target set");
  data_opts.add(attn_cmd);
  attn_cmd->add_option("--checkpoint", checkpoint)->required();
  attn_cmd->add_option("--set", set, "Target set index (default: first test set)");
  attn_cmd->add_option("--out", out_dir)->required();

  auto* tree_cmd = app.add_subcommand("dump-tree", "Dump the propagation tree of one target set");
  data_opts.add(tree_cmd);
  train_opts.add(tree_cmd);
  tree_cmd->add_option("--set", set, "Target set index (default: first test set)");
  tree_cmd->add_option("--out", out_dir)->required();

  auto* gc_cmd = app.add_subcommand("gradcheck", "Finite-difference gradient check");
  gc_cmd->add_flag("--toy", toy, "Use the built-in toy instances");
  gc_cmd->add_option("--seed", gc_seed);
  gc_cmd->add_option("--out", out_dir);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  inv.out_dir = out_dir;
  inv.command = app.get_subcommands().front()->get_name();
  auto& r = inv.resolved;
  if (inv.command == "synth") {
    r["synth"] = synth::to_json(sc);
  } else if (inv.command == "gradcheck") {
    r["toy"] = toy;
    r["seed"] = gc_seed;
  } else {
    const auto [p, i] = data_opts.paths();
    r["projects"] = p.string();
    r["investments"] = i.string();
    if (!checkpoint.empty()) r["checkpoint"] = checkpoint;
    if (inv.command == "train" || inv.command == "ablate" || inv.command == "dump-tree") {
      r["train"] = trainer::to_json(train_opts.config());
    }
    if (!study.empty()) r["study"] = study;
    if (inv.command == "inspect-attention" || inv.command == "dump-tree") r["set"] = set;
  }
  if (inv.command == "synth") return cmd_synth(inv, sc, out);
  if (inv.command == "train") return cmd_train(inv, data_opts, train_opts, out);
  if (inv.command == "eval") return cmd_eval(inv, data_opts, checkpoint, out);
  if (inv.command == "ablate") return cmd_ablate(inv, data_opts, train_opts, study, out);
  if (inv.command == "inspect-attention") return cmd_inspect_attention(inv, data_opts, checkpoint, set, out);
  if (inv.command == "dump-tree") return cmd_dump_tree(inv, data_opts, train_opts, set, out);
  return cmd_gradcheck(inv, toy, gc_seed, out);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(args, out);
  } catch (const UsageError& e) {
    err << "error: usage: " << one_line(e.what()) << "\n";
    return kUsageError;
  } catch (const trainer::ConfigError& e) {
    err << "error: usage: " << one_line(e.what()) << "\n";
    return kUsageError;
  } catch (const data::DataError& e) {
    err << "error: data: " << one_line(e.what()) << "\n";
    return kDataError;
  } catch (const numkit::CheckpointError& e) {
    err << "error: data: " << one_line(e.what()) << "\n";
    return kDataError;
  } catch (const VerificationFailure& e) {
    err << "error: verification: " << one_line(e.what()) << "\n";
    return kVerificationFailure;
  } catch (const std::exception& e) {
    err << "error: internal: " << one_line(e.what()) << "\n";
    return kDataError;
  }
}

}  // namespace gme::cli
