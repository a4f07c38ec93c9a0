#include "gme/numkit/gradcheck.hpp"

#include <algorithm>
#include <cmath>

namespace gme::numkit {

namespace {
// Tensors whose true gradient is zero (e.g. MAE signs cancelling) leave only roundoff.
constexpr double kNormFloor = 1e-6;

double evaluate(const LossClosure& loss, const std::string& perturbed) {
  Tape tape;
  const double v = loss(tape).value().item();
  if (!std::isfinite(v)) throw NumericError("gradcheck: non-finite loss while perturbing " + perturbed);
  return v;
}
}  // namespace

GradCheckResult grad_check(const LossClosure& loss, std::span<Parameter* const> params,
                           double epsilon) {
  for (Parameter* p : params) p->zero_grad();
  {
    Tape tape;
    Var l = loss(tape);
    if (!std::isfinite(l.value().item())) throw NumericError("gradcheck: non-finite loss at base point");
    tape.backward(l);
  }

  GradCheckResult result;
  for (Parameter* p : params) {
    double diff2 = 0.0, an2 = 0.0, num2 = 0.0;
    for (std::size_t i = 0; i < p->value.size(); ++i) {
      const double original = p->value[i];
      p->value[i] = original + epsilon;
      const double up = evaluate(loss, p->name);
      p->value[i] = original - epsilon;
      const double down = evaluate(loss, p->name);
      p->value[i] = original;
      const double numeric = (up - down) / (2.0 * epsilon);
      const double analytic = p->grad[i];
      diff2 += (analytic - numeric) * (analytic - numeric);
      an2 += analytic * analytic;
      num2 += numeric * numeric;
      ++result.checked_entries;
    }
    const double rel = std::sqrt(diff2) / std::max({std::sqrt(an2), std::sqrt(num2), kNormFloor});
    if (result.worst_parameter.empty() || rel > result.max_relative_error) {
      result.max_relative_error = rel;
      result.worst_parameter = p->name;
    }
    p->zero_grad();
  }
  return result;
}

}  // namespace gme::numkit
