#include "gme/trainer/baselines.hpp"

#include <Eigen/Dense>

#include "gme/numkit/ops.hpp"
#include "gme/numkit/random.hpp"
#include "gme/numkit/sgd.hpp"

namespace gme::trainer {

std::string to_string(BaselineKind kind) {
  switch (kind) {
    case BaselineKind::Linear: return "LR";
    case BaselineKind::Mlp: return "MLP";
    case BaselineKind::Mean: return "Mean";
  }
  return "LR";
}

BaselineKind parse_baseline(std::string_view text) {
  if (text == "lr") return BaselineKind::Linear;
  if (text == "mlp") return BaselineKind::Mlp;
  if (text == "mean") return BaselineKind::Mean;
  throw ConfigError("baseline: expected lr, mlp or mean, got '" + std::string(text) + "'");
}

double LinearFit::predict(std::span<const double> x) const {
  double v = intercept;
  for (std::size_t k = 0; k < weights.size(); ++k) v += weights[k] * x[k];
  return v;
}

LinearFit fit_linear(const std::vector<std::vector<double>>& x, std::span<const double> y) {
  if (x.empty() || x.size() != y.size()) throw std::invalid_argument("fit_linear: need matching non-empty x and y");
  const Eigen::Index n = static_cast<Eigen::Index>(x.size());
  const Eigen::Index d = static_cast<Eigen::Index>(x[0].size());
  Eigen::MatrixXd X(n, d);
  Eigen::VectorXd Y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (static_cast<Eigen::Index>(x[i].size()) != d) throw std::invalid_argument("fit_linear: ragged rows");
    for (Eigen::Index k = 0; k < d; ++k) X(i, k) = x[i][k];
    Y(i) = y[i];
  }
  const Eigen::RowVectorXd mx = X.colwise().mean();
  const double my = Y.mean();
  X.rowwise() -= mx;
  Y.array() -= my;

  const Eigen::MatrixXd gram = X.transpose() * X;
  const Eigen::VectorXd rhs = X.transpose() * Y;
  LinearFit fit;
  Eigen::VectorXd w;
  Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
  const auto diag = ldlt.vectorD();
  const double scale = std::max(diag.cwiseAbs().maxCoeff(), 1e-300);
  const bool singular = ldlt.info() != Eigen::Success || diag.minCoeff() <= 1e-10 * scale;
  if (!singular) {
    w = ldlt.solve(rhs);
  } else {
    fit.ridge_fallback = true;
    fit.ridge_lambda = 1e-3 * std::max(gram.diagonal().mean(), 1e-12);
    Eigen::MatrixXd reg = gram;
    reg.diagonal().array() += fit.ridge_lambda;
    w = reg.ldlt().solve(rhs);
  }
  fit.weights.assign(w.data(), w.data() + w.size());
  fit.intercept = my - mx.dot(w);
  return fit;
}

namespace {

struct StaticSplit {
  std::vector<std::vector<double>> x;
  std::vector<double> y;
};

StaticSplit training_rows(const PreparedMarket& prepared, std::span<const TargetContext> contexts) {
  StaticSplit out;
  for (std::size_t s = 0; s < prepared.train_sets; ++s) {
    for (std::size_t k = 0; k < contexts[s].targets.size(); ++k) {
      out.x.push_back(prepared.features[contexts[s].targets[k]]);
      out.y.push_back(contexts[s].truths[k]);
    }
  }
  return out;
}

template <class Predict>
EvalReport report_for(const std::string& name, const PreparedMarket& prepared,
                      std::span<const TargetContext> contexts, Predict predict) {
  std::vector<PredictionRecord> pairs;
  for (std::size_t s = prepared.train_sets; s < prepared.sets.size(); ++s) {
    const auto& ctx = contexts[s];
    for (std::size_t k = 0; k < ctx.targets.size(); ++k) {
      pairs.push_back({prepared.market->project(ctx.targets[k]).id, s, ctx.truths[k],
                       predict(prepared.features[ctx.targets[k]])});
    }
  }
  std::vector<SetMetrics> info;
  for (std::size_t s = 0; s < prepared.sets.size(); ++s) {
    info.push_back({s, prepared.sets[s].day, prepared.sets[s].period, {}});
  }
  return make_report(name, std::move(pairs), info);
}

/// F → 150 → 50 → 1, ReLU on both hidden layers, linear output.
class StaticMlp {
 public:
  StaticMlp(std::size_t width, std::uint64_t seed) {
    std::mt19937_64 rng(numkit::derive_seed(seed, "baseline.mlp"));
    const std::size_t dims[] = {width, 150, 50, 1};
    for (int l = 0; l < 3; ++l) {
      const std::string p = "mlp.layer" + std::to_string(l + 1);
      w_[l] = &store_.create(p + ".weight", numkit::xavier_uniform({dims[l], dims[l + 1]}, dims[l], dims[l + 1], rng));
      b_[l] = &store_.create(p + ".bias", numkit::Tensor({dims[l + 1]}));
    }
  }

  numkit::Var forward(numkit::Tape& tape, numkit::Var x) const {
    using namespace numkit;
    Var h = relu(add_bias(matmul(x, tape.parameter(*w_[0])), tape.parameter(*b_[0])));
    h = relu(add_bias(matmul(h, tape.parameter(*w_[1])), tape.parameter(*b_[1])));
    return flatten(add_bias(matmul(h, tape.parameter(*w_[2])), tape.parameter(*b_[2])));
  }

  double predict(std::span<const double> x) const {
    numkit::Tape tape;
    auto v = forward(tape, tape.constant(numkit::Tensor({1, x.size()}, {x.begin(), x.end()})));
    return v.value()[0];
  }

  numkit::ParameterStore& store() { return store_; }
  void set_output_bias(double v) { b_[2]->value[0] = v; }

 private:
  numkit::ParameterStore store_;
  numkit::Parameter* w_[3];
  numkit::Parameter* b_[3];
};

}  // namespace

EvalReport run_baseline(BaselineKind kind, const PreparedMarket& prepared, std::span<const TargetContext> contexts,
                        const TrainConfig& config) {
  if (contexts.size() != prepared.sets.size()) throw std::invalid_argument("baseline: one context per target set required");
  const auto rows = training_rows(prepared, contexts);
  if (rows.y.empty()) throw std::invalid_argument("baseline: empty training split");
  double mean_y = 0.0;
  for (double v : rows.y) mean_y += v;
  mean_y /= static_cast<double>(rows.y.size());

  switch (kind) {
    case BaselineKind::Mean:
      return report_for("Mean", prepared, contexts, [&](const std::vector<double>&) { return mean_y; });
    case BaselineKind::Linear: {
      const auto fit = fit_linear(rows.x, rows.y);
      auto r = report_for("LR", prepared, contexts, [&](const std::vector<double>& x) { return fit.predict(x); });
      r.notes["ridge_fallback"] = fit.ridge_fallback;
      r.notes["ridge_lambda"] = fit.ridge_lambda;
      return r;
    }
    case BaselineKind::Mlp: {
      StaticMlp mlp(prepared.feature_width(), config.seed);
      if (config.epochs > 0 && config.warm_start_bias) mlp.set_output_bias(mean_y);
      const auto schedule = config.schedule(prepared.train_sets);
      auto params = mlp.store().all();
      std::uint64_t step = 0;
      for (int epoch = 0; epoch < config.epochs; ++epoch) {
        for (std::size_t s = 0; s < prepared.train_sets; ++s) {
          numkit::Tape tape;
          const auto& ctx = contexts[s];
          auto pred = mlp.forward(tape, tape.constant(ctx.target_features));
          auto loss = numkit::mae(pred, tape.constant(numkit::Tensor::vector(ctx.truths)));
          if (!std::isfinite(loss.value().item())) {
            throw numkit::NumericError("non-finite MLP loss at step " + std::to_string(step));
          }
          tape.backward(loss);
          numkit::sgd_step(params, schedule, step++);
        }
      }
      return report_for("MLP", prepared, contexts, [&](const std::vector<double>& x) { return mlp.predict(x); });
    }
  }
  throw std::logic_error("unreachable baseline kind");
}

}  // namespace gme::trainer
