#ifndef AVRA_PROBLEM_HPP
#define AVRA_PROBLEM_HPP

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "linalg.hpp"

namespace avra {

enum class LossKind { logistic, squared };

inline const char* loss_name(LossKind k) {
  return k == LossKind::logistic ? "logistic" : "squared";
}

/// Samples {(w_i, b_i)}: one feature row and one label per sample.
struct Dataset {
  SparseMatrix features;  // n x d, compressed row-major
  DenseVector labels;     // length n

  long n() const { return features.rows(); }
  long dim() const { return features.cols(); }
};

inline void validate_dataset(const Dataset& ds) {
  if (ds.n() < 1 || ds.dim() < 1) throw std::invalid_argument("dataset: needs n >= 1 and d >= 1");
  if (ds.labels.size() != ds.n())
    throw std::invalid_argument("dataset: " + std::to_string(ds.n()) + " rows but " +
                                std::to_string(ds.labels.size()) + " labels");
  for (long i = 0; i < ds.labels.size(); ++i) require_finite(ds.labels[i], "dataset labels");
}

struct SmoothnessConstants {
  DenseVector per_sample;  // L_i
  double component_max;    // L_Q = max_i L_i
  double mean_loss;        // Lipschitz constant of the averaged loss
};

/// L_i = ||w_i||^2 (squared loss) or ||w_i||^2/4 (logistic); the averaged
/// loss constant is lambda_max((1/n) sum_i w_i w_i^T), again /4 for logistic.
inline SmoothnessConstants compute_smoothness(const Dataset& ds, LossKind loss,
                                              double spectral_tol = 1e-10,
                                              long spectral_max_iters = 200000) {
  const long n = ds.n();
  SmoothnessConstants out;
  out.per_sample = DenseVector::Zero(n);
  const double factor = loss == LossKind::logistic ? 0.25 : 1.0;
  double lmax = 0.0;
  for (long i = 0; i < n; ++i) {
    double sq = 0.0;
    for (SparseMatrix::InnerIterator it(ds.features, i); it; ++it) sq += it.value() * it.value();
    out.per_sample[i] = factor * sq;
    lmax = std::max(lmax, out.per_sample[i]);
  }
  out.component_max = lmax;
  out.mean_loss =
      factor * spectral_norm_sq(ds.features, spectral_tol, spectral_max_iters) / static_cast<double>(n);
  return out;
}

/// The constrained ERM instance: minimize (1/n) sum f_i(x) + nu*||y||_1
/// subject to A x + B y = c.
struct Problem {
  Dataset data;
  LossKind loss = LossKind::squared;
  SparseMatrix A;
  SparseMatrix B;
  DenseVector c;
  double reg_weight = 0.0;  // nu

  DenseVector lipschitz_each;  // L_i
  double lipschitz_max = 0.0;  // L_Q
  double lipschitz_mean = 0.0;  // smoothness constant of the averaged loss
  double a_norm_sq = 0.0;       // power-iteration estimate of ||A||_2^2
  bool b_neg_identity = false;

  long n() const { return data.n(); }
  long dim() const { return data.dim(); }
  long y_dim() const { return B.cols(); }
  long constraint_rows() const { return A.rows(); }
};

struct ProblemOptions {
  double spectral_tol = 1e-10;
  long spectral_max_iters = 200000;
};

inline Problem make_problem(Dataset data, LossKind loss, SparseMatrix a, SparseMatrix b,
                            DenseVector c, double reg_weight, const ProblemOptions& opts = {}) {
  validate_dataset(data);
  if (loss == LossKind::logistic) {
    for (long i = 0; i < data.labels.size(); ++i) {
      if (data.labels[i] != 1.0 && data.labels[i] != -1.0)
        throw std::invalid_argument("make_problem: logistic loss requires labels in {-1,+1}, got " +
                                    std::to_string(data.labels[i]) + " at sample " +
                                    std::to_string(i));
    }
  }
  if (a.cols() != data.dim())
    throw std::invalid_argument("make_problem: A has " + std::to_string(a.cols()) +
                                " columns, dataset dimension is " + std::to_string(data.dim()));
  if (a.rows() != b.rows() || a.rows() != c.size())
    throw std::invalid_argument("make_problem: constraint rows disagree (A " +
                                std::to_string(a.rows()) + ", B " + std::to_string(b.rows()) +
                                ", c " + std::to_string(c.size()) + ")");
  if (!(reg_weight >= 0.0) || !std::isfinite(reg_weight))
    throw std::invalid_argument("make_problem: reg_weight must be a nonnegative real");

  Problem p;
  p.data = std::move(data);
  p.loss = loss;
  p.A = std::move(a);
  p.B = std::move(b);
  p.c = std::move(c);
  p.reg_weight = reg_weight;
  const SmoothnessConstants sc =
      compute_smoothness(p.data, loss, opts.spectral_tol, opts.spectral_max_iters);
  p.lipschitz_each = sc.per_sample;
  p.lipschitz_max = sc.component_max;
  p.lipschitz_mean = sc.mean_loss;
  if (!(p.lipschitz_mean > 0.0))
    throw std::invalid_argument("make_problem: averaged loss has zero smoothness constant");
  p.a_norm_sq = spectral_norm_sq(p.A, opts.spectral_tol, opts.spectral_max_iters);
  p.b_neg_identity = is_neg_identity(p.B);
  return p;
}

inline double sigmoid(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

inline double row_dot(const SparseMatrix& m, long i, const DenseVector& x) {
  double acc = 0.0;
  for (SparseMatrix::InnerIterator it(m, i); it; ++it) acc += it.value() * x[it.col()];
  return acc;
}

// Scalar s_i with grad f_i(x) = s_i * w_i.
inline double loss_gradient_scalar(const Problem& p, long i, double dot) {
  if (p.loss == LossKind::squared) return dot - p.data.labels[i];
  const double b = p.data.labels[i];
  return -b * sigmoid(-b * dot);
}

inline double loss_value(const Problem& p, long i, double dot) {
  if (p.loss == LossKind::squared) {
    const double r = dot - p.data.labels[i];
    return 0.5 * r * r;
  }
  const double t = p.data.labels[i] * dot;
  if (t >= 0.0) return std::log1p(std::exp(-t));
  return -t + std::log1p(std::exp(t));
}

inline void check_sample_index(const Problem& p, long i, const char* what) {
  if (i < 0 || i >= p.n())
    throw std::out_of_range(std::string(what) + ": sample index " + std::to_string(i) +
                            " outside [0," + std::to_string(p.n()) + ")");
}

inline void check_x_dim(const Problem& p, const DenseVector& x, const char* what) {
  if (x.size() != p.dim())
    throw std::invalid_argument(std::string(what) + ": x has length " + std::to_string(x.size()) +
                                ", problem dimension is " + std::to_string(p.dim()));
}

inline double component_loss(const Problem& p, long i, const DenseVector& x) {
  check_sample_index(p, i, "component_loss");
  check_x_dim(p, x, "component_loss");
  return loss_value(p, i, row_dot(p.data.features, i, x));
}

inline DenseVector component_gradient(const Problem& p, long i, const DenseVector& x) {
  check_sample_index(p, i, "component_gradient");
  check_x_dim(p, x, "component_gradient");
  const double s = loss_gradient_scalar(p, i, row_dot(p.data.features, i, x));
  DenseVector g = DenseVector::Zero(p.dim());
  for (SparseMatrix::InnerIterator it(p.data.features, i); it; ++it) g[it.col()] = s * it.value();
  return g;
}

/// Mean of the component gradients, accumulated in sample-index order.
/// Optionally exposes the per-sample gradient scalars (grad f_i = s_i w_i),
/// which the solvers cache at snapshot points.
inline DenseVector full_gradient(const Problem& p, const DenseVector& x,
                                 DenseVector* scalars = nullptr) {
  check_x_dim(p, x, "full_gradient");
  const long n = p.n();
  if (scalars) scalars->resize(n);
  DenseVector acc = DenseVector::Zero(p.dim());
  for (long i = 0; i < n; ++i) {
    const double s = loss_gradient_scalar(p, i, row_dot(p.data.features, i, x));
    if (scalars) (*scalars)[i] = s;
    for (SparseMatrix::InnerIterator it(p.data.features, i); it; ++it)
      acc[it.col()] += s * it.value();
  }
  return acc / static_cast<double>(n);
}

inline double mean_loss(const Problem& p, const DenseVector& x) {
  check_x_dim(p, x, "mean_loss");
  double acc = 0.0;
  for (long i = 0; i < p.n(); ++i) acc += loss_value(p, i, row_dot(p.data.features, i, x));
  return acc / static_cast<double>(p.n());
}

inline double objective(const Problem& p, const DenseVector& x, const DenseVector& y) {
  if (y.size() != p.y_dim())
    throw std::invalid_argument("objective: y has length " + std::to_string(y.size()) +
                                ", expected " + std::to_string(p.y_dim()));
  return mean_loss(p, x) + p.reg_weight * y.lpNorm<1>();
}

inline DenseVector constraint_residual(const Problem& p, const DenseVector& x,
                                       const DenseVector& y) {
  return matvec(p.A, x) + matvec(p.B, y) - p.c;
}

inline double constraint_violation(const Problem& p, const DenseVector& x, const DenseVector& y) {
  return constraint_residual(p, x, y).norm();
}

struct GapPoint {
  DenseVector x;
  DenseVector y;
  DenseVector dual;
};

/// Primal-dual gap between a candidate point and a reference point:
///   [f(x) + g(y) + <dual_cand, Ax+By-c>] - [f(x_cand) + g(y_cand) + <dual, Ax_cand+By_cand-c>].
inline double gap(const Problem& p, const GapPoint& candidate, const GapPoint& reference) {
  const double lhs = mean_loss(p, reference.x) + p.reg_weight * reference.y.lpNorm<1>() +
                     candidate.dual.dot(constraint_residual(p, reference.x, reference.y));
  const double rhs = mean_loss(p, candidate.x) + p.reg_weight * candidate.y.lpNorm<1>() +
                     reference.dual.dot(constraint_residual(p, candidate.x, candidate.y));
  return lhs - rhs;
}

}  // namespace avra

#endif
