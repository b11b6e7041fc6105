#ifndef AVRA_SYNTHETIC_HPP
#define AVRA_SYNTHETIC_HPP

#include <cmath>
#include <stdexcept>
#include <vector>

#include "data_io.hpp"
#include "problem.hpp"
#include "rng.hpp"

namespace avra {

struct SyntheticSpec {
  long n = 200;
  long d = 30;
  std::uint64_t seed = 42;
  LossKind loss = LossKind::logistic;
  double feature_scale = 1.0;
  double column_scale_spread = 1.0;  // >1 log-spaces per-column scales up to this factor
  double noise = 0.25;
};

/// Dense Gaussian rows with an optional per-column scale ramp; labels come
/// from a planted sparse weight vector plus noise (sign labels for logistic).
inline Dataset make_synthetic_dataset(const SyntheticSpec& spec) {
  if (spec.n < 1 || spec.d < 1) throw std::invalid_argument("make_synthetic_dataset: bad shape");
  CounterRng rng(spec.seed);

  std::vector<double> col_scale(spec.d, spec.feature_scale);
  if (spec.column_scale_spread > 1.0 && spec.d > 1) {
    const double log_span = std::log(spec.column_scale_spread);
    for (long j = 0; j < spec.d; ++j)
      col_scale[j] =
          spec.feature_scale * std::exp(log_span * static_cast<double>(j) / (spec.d - 1));
  }

  DenseVector planted = DenseVector::Zero(spec.d);
  for (long j = 0; j < spec.d; ++j)
    planted[j] = (j % 3 == 0) ? rng.normal() / col_scale[j] : 0.0;

  std::vector<Triplet> entries;
  entries.reserve(static_cast<std::size_t>(spec.n * spec.d));
  DenseVector labels(spec.n);
  for (long i = 0; i < spec.n; ++i) {
    double dot = 0.0;
    for (long j = 0; j < spec.d; ++j) {
      const double v = col_scale[j] * rng.normal();
      entries.emplace_back(i, j, v);
      dot += v * planted[j];
    }
    const double raw = dot + spec.noise * rng.normal();
    labels[i] = spec.loss == LossKind::logistic ? (raw >= 0.0 ? 1.0 : -1.0) : raw;
  }

  Dataset ds;
  ds.features = make_sparse(spec.n, spec.d, entries);
  ds.labels = labels;
  return ds;
}

inline FeatureGraph chain_graph(long d) {
  FeatureGraph g;
  for (long j = 0; j + 1 < d; ++j) {
    g.edges.emplace_back(j, j + 1);
    g.weights.push_back(1.0);
  }
  return g;
}

/// Fused-lasso style problem A x = y with A = [edge differences; identity],
/// B = -I, c = 0.
inline Problem make_fused_lasso_problem(Dataset ds, LossKind loss, const FeatureGraph& graph,
                                        double reg_weight, const ProblemOptions& opts = {}) {
  const long d = ds.dim();
  SparseMatrix penalty = build_penalty_matrix(graph, d);
  const long rows = penalty.rows();
  return make_problem(std::move(ds), loss, std::move(penalty), sparse_neg_identity(rows),
                      DenseVector::Zero(rows), reg_weight, opts);
}

/// Plain lasso shape: A = I, B = -I, c = 0.
inline Problem make_identity_lasso_problem(Dataset ds, LossKind loss, double reg_weight,
                                           const ProblemOptions& opts = {}) {
  const long d = ds.dim();
  return make_problem(std::move(ds), loss, sparse_identity(d), sparse_neg_identity(d),
                      DenseVector::Zero(d), reg_weight, opts);
}

// Fixed desk-scale instances shared by the verification suite and the tests.

inline Problem desk_logistic_problem() {
  SyntheticSpec spec;
  spec.n = 200;
  spec.d = 30;
  spec.seed = 20240711;
  spec.loss = LossKind::logistic;
  spec.noise = 0.5;
  return make_fused_lasso_problem(make_synthetic_dataset(spec), LossKind::logistic,
                                  chain_graph(spec.d), 1e-3);
}

inline Problem desk_squared_problem() {
  SyntheticSpec spec;
  spec.n = 100;
  spec.d = 20;
  spec.seed = 20240712;
  spec.loss = LossKind::squared;
  spec.noise = 0.1;
  return make_fused_lasso_problem(make_synthetic_dataset(spec), LossKind::squared,
                                  chain_graph(spec.d), 1e-2);
}

inline Problem high_smoothness_problem() {
  SyntheticSpec spec;
  spec.n = 400;
  spec.d = 25;
  spec.seed = 20240713;
  spec.loss = LossKind::squared;
  spec.feature_scale = 1.0;
  spec.column_scale_spread = 300.0;
  spec.noise = 1.0;
  return make_fused_lasso_problem(make_synthetic_dataset(spec), LossKind::squared,
                                  chain_graph(spec.d), 1e-3);
}

}  // namespace avra

#endif
