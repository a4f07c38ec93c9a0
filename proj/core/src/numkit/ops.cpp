#include "gme/numkit/ops.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include <Eigen/Core>

namespace gme::numkit {

namespace {

[[noreturn]] void mismatch(const char* op, const Tensor& a, const Tensor& b) {
  throw ShapeError(std::string(op) + ": shape mismatch " + shape_string(a.shape()) + " vs " +
                   shape_string(b.shape()));
}

Tape& tape_of(Var a) {
  if (a.tape == nullptr) throw std::invalid_argument("var is not attached to a tape");
  return *a.tape;
}

Tape& tape_of(Var a, Var b) {
  if (a.tape != b.tape) throw std::invalid_argument("vars belong to different tapes");
  return tape_of(a);
}

template <class Fwd, class Deriv>
Var unary(Var a, Fwd fwd, Deriv deriv) {
  Tape& t = tape_of(a);
  const Tensor& x = t.value(a);
  Tensor out(x.shape());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = fwd(x[i]);
  const auto ia = a.id;
  return t.record(std::move(out), {ia}, [ia, deriv](Tape& tp, std::uint32_t self) {
    const Tensor& g = tp.grad(self);
    const Tensor& x = tp.value(ia);
    const Tensor& y = tp.value(self);
    Tensor& ga = tp.grad(ia);
    for (std::size_t i = 0; i < g.size(); ++i) ga[i] += g[i] * deriv(x[i], y[i]);
  });
}

void accumulate(Tensor& dst, const Tensor& src) {
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] += src[i];
}

}  // namespace

Var matmul(Var a, Var b) {
  using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  using Map = Eigen::Map<RowMajor>;
  using ConstMap = Eigen::Map<const RowMajor>;
  Tape& t = tape_of(a, b);
  const Tensor& A = t.value(a);
  const Tensor& B = t.value(b);
  if (B.rank() != 2 || A.cols() != B.rows()) mismatch("matmul", A, B);
  const auto m = static_cast<Eigen::Index>(A.rows()), k = static_cast<Eigen::Index>(A.cols()),
             n = static_cast<Eigen::Index>(B.cols());
  Tensor out = A.rank() == 1 ? Tensor({B.cols()}) : Tensor({A.rows(), B.cols()});
  Map(out.data_ptr(), m, n).noalias() = ConstMap(A.data().data(), m, k) * ConstMap(B.data().data(), k, n);
  const auto ia = a.id, ib = b.id;
  return t.record(std::move(out), {ia, ib}, [ia, ib, m, k, n](Tape& tp, std::uint32_t self) {
    ConstMap g(tp.grad(self).data().data(), m, n);
    ConstMap A(tp.value(ia).data().data(), m, k);
    ConstMap B(tp.value(ib).data().data(), k, n);
    if (tp.requires_grad(ia)) Map(tp.grad(ia).data_ptr(), m, k).noalias() += g * B.transpose();
    if (tp.requires_grad(ib)) Map(tp.grad(ib).data_ptr(), k, n).noalias() += A.transpose() * g;
  });
}

Var add(Var a, Var b) {
  Tape& t = tape_of(a, b);
  const Tensor& A = t.value(a);
  const Tensor& B = t.value(b);
  if (A.shape() != B.shape()) mismatch("add", A, B);
  Tensor out = A;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += B[i];
  const auto ia = a.id, ib = b.id;
  return t.record(std::move(out), {ia, ib}, [ia, ib](Tape& tp, std::uint32_t self) {
    const Tensor& g = tp.grad(self);
    accumulate(tp.grad(ia), g);
    accumulate(tp.grad(ib), g);
  });
}

Var sub(Var a, Var b) {
  Tape& t = tape_of(a, b);
  const Tensor& A = t.value(a);
  const Tensor& B = t.value(b);
  if (A.shape() != B.shape()) mismatch("sub", A, B);
  Tensor out = A;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= B[i];
  const auto ia = a.id, ib = b.id;
  return t.record(std::move(out), {ia, ib}, [ia, ib](Tape& tp, std::uint32_t self) {
    const Tensor& g = tp.grad(self);
    accumulate(tp.grad(ia), g);
    Tensor& gb = tp.grad(ib);
    for (std::size_t i = 0; i < g.size(); ++i) gb[i] -= g[i];
  });
}

Var mul(Var a, Var b) {
  Tape& t = tape_of(a, b);
  const Tensor& A = t.value(a);
  const Tensor& B = t.value(b);
  if (A.shape() != B.shape()) mismatch("mul", A, B);
  Tensor out = A;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= B[i];
  const auto ia = a.id, ib = b.id;
  return t.record(std::move(out), {ia, ib}, [ia, ib](Tape& tp, std::uint32_t self) {
    const Tensor& g = tp.grad(self);
    const Tensor& A = tp.value(ia);
    const Tensor& B = tp.value(ib);
    Tensor& ga = tp.grad(ia);
    for (std::size_t i = 0; i < g.size(); ++i) ga[i] += g[i] * B[i];
    Tensor& gb = tp.grad(ib);
    for (std::size_t i = 0; i < g.size(); ++i) gb[i] += g[i] * A[i];
  });
}

Var scale(Var a, double factor) {
  return unary(a, [factor](double x) { return x * factor; },
               [factor](double, double) { return factor; });
}

Var add_bias(Var a, Var bias) {
  Tape& t = tape_of(a, bias);
  const Tensor& A = t.value(a);
  const Tensor& b = t.value(bias);
  if (b.rank() != 1 || b.size() != A.cols()) mismatch("add_bias", A, b);
  Tensor out = A;
  const std::size_t n = A.cols();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i % n];
  const auto ia = a.id, ib = bias.id;
  return t.record(std::move(out), {ia, ib}, [ia, ib, n](Tape& tp, std::uint32_t self) {
    const Tensor& g = tp.grad(self);
    accumulate(tp.grad(ia), g);
    Tensor& gb = tp.grad(ib);
    for (std::size_t i = 0; i < g.size(); ++i) gb[i % n] += g[i];
  });
}

Var add_scalar(Var a, Var s) {
  Tape& t = tape_of(a, s);
  const Tensor& A = t.value(a);
  const Tensor& S = t.value(s);
  if (S.size() != 1) mismatch("add_scalar", A, S);
  Tensor out = A;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += S[0];
  const auto ia = a.id, is = s.id;
  return t.record(std::move(out), {ia, is}, [ia, is](Tape& tp, std::uint32_t self) {
    const Tensor& g = tp.grad(self);
    accumulate(tp.grad(ia), g);
    double acc = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) acc += g[i];
    tp.grad(is)[0] += acc;
  });
}

Var concat(std::initializer_list<Var> parts) {
  return concat(std::span<const Var>(parts.begin(), parts.size()));
}

Var concat(std::span<const Var> parts) {
  if (parts.empty()) throw ShapeError("concat: no inputs");
  Tape& t = tape_of(parts[0]);
  const Tensor& first = t.value(parts[0]);
  const std::size_t rank = first.rank();
  const std::size_t rows = first.rows();
  std::vector<std::size_t> widths;
  std::vector<std::uint32_t> ids;
  std::size_t total = 0;
  for (const Var& p : parts) {
    const Tensor& v = tape_of(p, parts[0]).value(p);
    if (v.rank() != rank || v.rows() != rows) mismatch("concat", first, v);
    widths.push_back(v.cols());
    ids.push_back(p.id);
    total += v.cols();
  }
  Tensor out = rank == 1 ? Tensor({total}) : Tensor({rows, total});
  std::size_t offset = 0;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const Tensor& v = t.value(ids[k]);
    for (std::size_t r = 0; r < rows; ++r) {
      std::copy_n(&v[r * widths[k]], widths[k], &out[r * total + offset]);
    }
    offset += widths[k];
  }
  return t.record(std::move(out), ids, [ids, widths, rows, total](Tape& tp, std::uint32_t self) {
    const Tensor& g = tp.grad(self);
    std::size_t offset = 0;
    for (std::size_t k = 0; k < ids.size(); ++k) {
      Tensor& gk = tp.grad(ids[k]);
      for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t j = 0; j < widths[k]; ++j) gk[r * widths[k] + j] += g[r * total + offset + j];
      }
      offset += widths[k];
    }
  });
}

Var stack_rows(std::span<const Var> rows) {
  if (rows.empty()) throw ShapeError("stack_rows: no inputs");
  Tape& t = tape_of(rows[0]);
  const Tensor& first = t.value(rows[0]);
  const std::size_t n = first.size();
  std::vector<std::uint32_t> ids;
  Tensor out({rows.size(), n});
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const Tensor& v = tape_of(rows[r], rows[0]).value(rows[r]);
    if (v.rank() != 1 || v.size() != n) mismatch("stack_rows", first, v);
    std::copy_n(&v[0], n, &out[r * n]);
    ids.push_back(rows[r].id);
  }
  return t.record(std::move(out), ids, [ids, n](Tape& tp, std::uint32_t self) {
    const Tensor& g = tp.grad(self);
    for (std::size_t r = 0; r < ids.size(); ++r) {
      Tensor& gr = tp.grad(ids[r]);
      for (std::size_t j = 0; j < n; ++j) gr[j] += g[r * n + j];
    }
  });
}

Var row(Var a, std::size_t index) {
  const std::size_t idx[] = {index};
  return flatten(gather_rows(a, idx));
}

Var gather_rows(Var a, std::span<const std::size_t> indices) {
  Tape& t = tape_of(a);
  const Tensor& A = t.value(a);
  if (A.rank() != 2) throw ShapeError("gather_rows: expected matrix, got " + shape_string(A.shape()));
  if (indices.empty()) throw ShapeError("gather_rows: empty index set");
  const std::size_t n = A.cols();
  Tensor out({indices.size(), n});
  std::vector<std::size_t> idx(indices.begin(), indices.end());
  for (std::size_t r = 0; r < idx.size(); ++r) {
    if (idx[r] >= A.rows()) {
      throw ShapeError("gather_rows: row " + std::to_string(idx[r]) + " out of range for " +
                       shape_string(A.shape()));
    }
    std::copy_n(&A[idx[r] * n], n, &out[r * n]);
  }
  const auto ia = a.id;
  return t.record(std::move(out), {ia}, [ia, idx, n](Tape& tp, std::uint32_t self) {
    const Tensor& g = tp.grad(self);
    Tensor& ga = tp.grad(ia);
    for (std::size_t r = 0; r < idx.size(); ++r) {
      for (std::size_t j = 0; j < n; ++j) ga[idx[r] * n + j] += g[r * n + j];
    }
  });
}

Var gather(Var a, std::span<const std::size_t> indices) {
  Tape& t = tape_of(a);
  const Tensor& A = t.value(a);
  if (A.rank() != 1) throw ShapeError("gather: expected vector, got " + shape_string(A.shape()));
  if (indices.empty()) throw ShapeError("gather: empty index set");
  std::vector<std::size_t> idx(indices.begin(), indices.end());
  Tensor out({idx.size()});
  for (std::size_t r = 0; r < idx.size(); ++r) {
    if (idx[r] >= A.size()) throw ShapeError("gather: index out of range for " + shape_string(A.shape()));
    out[r] = A[idx[r]];
  }
  const auto ia = a.id;
  return t.record(std::move(out), {ia}, [ia, idx](Tape& tp, std::uint32_t self) {
    const Tensor& g = tp.grad(self);
    Tensor& ga = tp.grad(ia);
    for (std::size_t r = 0; r < idx.size(); ++r) ga[idx[r]] += g[r];
  });
}

Var add_n(std::span<const Var> terms) {
  if (terms.empty()) throw ShapeError("add_n: no inputs");
  Tape& t = tape_of(terms[0]);
  Tensor out = t.value(terms[0]);
  std::vector<std::uint32_t> ids{terms[0].id};
  for (std::size_t k = 1; k < terms.size(); ++k) {
    const Tensor& v = tape_of(terms[k], terms[0]).value(terms[k]);
    if (v.shape() != out.shape()) mismatch("add_n", out, v);
    for (std::size_t i = 0; i < v.size(); ++i) out[i] += v[i];
    ids.push_back(terms[k].id);
  }
  return t.record(std::move(out), ids, [ids](Tape& tp, std::uint32_t self) {
    const Tensor& g = tp.grad(self);
    for (auto id : ids) accumulate(tp.grad(id), g);
  });
}

Var sum_rows(Var a) {
  Tape& t = tape_of(a);
  const Tensor& A = t.value(a);
  const std::size_t m = A.rows(), n = A.cols();
  Tensor out({n});
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) out[j] += A[i * n + j];
  }
  const auto ia = a.id;
  return t.record(std::move(out), {ia}, [ia, m, n](Tape& tp, std::uint32_t self) {
    const Tensor& g = tp.grad(self);
    Tensor& ga = tp.grad(ia);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) ga[i * n + j] += g[j];
    }
  });
}

Var flatten(Var a) {
  Tape& t = tape_of(a);
  const Tensor& A = t.value(a);
  Tensor out({A.size()}, A.data());
  const auto ia = a.id;
  return t.record(std::move(out), {ia}, [ia](Tape& tp, std::uint32_t self) {
    accumulate(tp.grad(ia), tp.grad(self));
  });
}

Var relu(Var a) {
  return unary(a, [](double x) { return x > 0.0 ? x : 0.0; },
               [](double x, double) { return x > 0.0 ? 1.0 : 0.0; });
}

Var leaky_relu(Var a, double slope) {
  return unary(a, [slope](double x) { return x > 0.0 ? x : slope * x; },
               [slope](double x, double) { return x > 0.0 ? 1.0 : slope; });
}

Var tanh(Var a) {
  return unary(a, [](double x) { return std::tanh(x); },
               [](double, double y) { return 1.0 - y * y; });
}

Var sigmoid(Var a) {
  return unary(a,
               [](double x) {
                 if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
                 const double e = std::exp(x);
                 return e / (1.0 + e);
               },
               [](double, double y) { return y * (1.0 - y); });
}

Var one_minus(Var a) {
  return unary(a, [](double x) { return 1.0 - x; }, [](double, double) { return -1.0; });
}

Var abs(Var a) {
  return unary(a, [](double x) { return std::fabs(x); },
               [](double x, double) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); });
}

Var softmax(Var a) {
  Tape& t = tape_of(a);
  const Tensor& x = t.value(a);
  if (x.rank() != 1) throw ShapeError("softmax: expected vector, got " + shape_string(x.shape()));
  const double mx = *std::max_element(x.values().begin(), x.values().end());
  Tensor out(x.shape());
  double z = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    out[i] = std::exp(x[i] - mx);
    z += out[i];
  }
  for (std::size_t i = 0; i < x.size(); ++i) out[i] /= z;
  const auto ia = a.id;
  return t.record(std::move(out), {ia}, [ia](Tape& tp, std::uint32_t self) {
    const Tensor& g = tp.grad(self);
    const Tensor& y = tp.value(self);
    double dot = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) dot += g[i] * y[i];
    Tensor& ga = tp.grad(ia);
    for (std::size_t i = 0; i < y.size(); ++i) ga[i] += y[i] * (g[i] - dot);
  });
}

Var dropout(Var a, double keep, std::uint64_t seed) {
  if (keep >= 1.0) return a;
  if (keep <= 0.0) throw std::invalid_argument("dropout: keep probability must be in (0, 1]");
  Tape& t = tape_of(a);
  const Tensor& x = t.value(a);
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution survive(keep);
  Tensor mask(x.shape());
  for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = survive(rng) ? 1.0 / keep : 0.0;
  Var m = t.constant(std::move(mask));
  return mul(a, m);
}

Var sum(Var a) {
  Tape& t = tape_of(a);
  const Tensor& x = t.value(a);
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) acc += x[i];
  const auto ia = a.id;
  return t.record(Tensor::scalar(acc), {ia}, [ia](Tape& tp, std::uint32_t self) {
    const double g = tp.grad(self)[0];
    Tensor& ga = tp.grad(ia);
    for (std::size_t i = 0; i < ga.size(); ++i) ga[i] += g;
  });
}

Var mean(Var a) {
  const double n = static_cast<double>(a.value().size());
  return scale(sum(a), 1.0 / n);
}

Var mae(Var prediction, Var truth) { return mean(abs(sub(prediction, truth))); }

}  // namespace gme::numkit
