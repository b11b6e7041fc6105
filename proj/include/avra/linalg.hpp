#ifndef AVRA_LINALG_HPP
#define AVRA_LINALG_HPP

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace avra {

using DenseVector = Eigen::VectorXd;
using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;
using Triplet = Eigen::Triplet<double>;

class PowerIterationError : public std::runtime_error {
 public:
  PowerIterationError(long iters, double rq_prev, double rq_last)
      : std::runtime_error("spectral_norm_sq: no convergence after " + std::to_string(iters) +
                           " iterations (rayleigh quotients " + std::to_string(rq_prev) + " -> " +
                           std::to_string(rq_last) + ")"),
        rq_prev(rq_prev),
        rq_last(rq_last) {}
  double rq_prev;
  double rq_last;
};

class FactorizationError : public std::runtime_error {
 public:
  explicit FactorizationError(long pivot, double value)
      : std::runtime_error("factor_spd: non-positive pivot " + std::to_string(value) +
                           " at index " + std::to_string(pivot)),
        pivot(pivot) {}
  long pivot;
};

inline void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw std::invalid_argument(std::string(what) + ": non-finite value");
}

/// Builds a compressed row-major sparse matrix from triplets. Duplicate
/// coordinates are summed; exact zeros are pruned so no explicit zero is
/// stored; per-row column indices end up strictly increasing.
inline SparseMatrix make_sparse(Eigen::Index rows, Eigen::Index cols,
                                const std::vector<Triplet>& entries) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("make_sparse: negative dimension");
  for (const auto& t : entries) {
    if (t.row() < 0 || t.row() >= rows || t.col() < 0 || t.col() >= cols)
      throw std::invalid_argument("make_sparse: entry (" + std::to_string(t.row()) + "," +
                                  std::to_string(t.col()) + ") outside " + std::to_string(rows) +
                                  "x" + std::to_string(cols));
    require_finite(t.value(), "make_sparse");
  }
  SparseMatrix m(rows, cols);
  m.setFromTriplets(entries.begin(), entries.end());
  m.prune(0.0, 0.0);
  m.makeCompressed();
  return m;
}

inline SparseMatrix sparse_identity(Eigen::Index n) {
  SparseMatrix m(n, n);
  m.setIdentity();
  return m;
}

inline SparseMatrix sparse_neg_identity(Eigen::Index n) {
  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) t.emplace_back(i, i, -1.0);
  return make_sparse(n, n, t);
}

inline bool is_neg_identity(const SparseMatrix& m) {
  if (m.rows() != m.cols() || m.nonZeros() != m.rows()) return false;
  for (Eigen::Index i = 0; i < m.outerSize(); ++i) {
    SparseMatrix::InnerIterator it(m, i);
    if (!it || it.col() != i || it.value() != -1.0) return false;
  }
  return true;
}

inline DenseVector matvec(const SparseMatrix& m, const DenseVector& v) {
  if (m.cols() != v.size())
    throw std::invalid_argument("matvec: matrix has " + std::to_string(m.cols()) +
                                " columns, vector has length " + std::to_string(v.size()));
  return m * v;
}

inline DenseVector matvec_transpose(const SparseMatrix& m, const DenseVector& v) {
  if (m.rows() != v.size())
    throw std::invalid_argument("matvec_transpose: matrix has " + std::to_string(m.rows()) +
                                " rows, vector has length " + std::to_string(v.size()));
  return m.transpose() * v;
}

namespace detail {

inline double power_iterate(const SparseMatrix& m, DenseVector q, double tol, long max_iters) {
  q /= q.norm();
  double rq_prev = -1.0;
  for (long k = 0; k < max_iters; ++k) {
    const DenseVector z = m.transpose() * (m * q);
    const double rq = q.dot(z);
    const double zn = z.norm();
    if (zn == 0.0) return 0.0;  // M q vanished: lambda_max along the reachable space is 0
    if (k > 0 && std::abs(rq - rq_prev) <= tol * std::abs(rq)) return rq;
    rq_prev = rq;
    q = z / zn;
  }
  throw PowerIterationError(max_iters, rq_prev, q.dot(m.transpose() * (m * q)));
}

}  // namespace detail

/// Estimate of lambda_max(M^T M), i.e. the squared spectral norm of M, by
/// power iteration on M^T M with a relative Rayleigh-quotient stopping rule.
/// Two deterministic starts are used and the larger limit returned: the
/// normalized all-ones vector, and a fixed sign pattern that covers matrices
/// whose dominant eigenvector is orthogonal to the ones vector (the ones
/// vector spans the null space of any difference-row block, so starting
/// there alone stalls at a minor eigenvalue). Rayleigh quotients never
/// exceed lambda_max, so the max of the two limits is the sharper estimate.
inline double spectral_norm_sq(const SparseMatrix& m, double tol = 1e-6, long max_iters = 10000) {
  if (m.rows() == 0 || m.cols() == 0) throw std::invalid_argument("spectral_norm_sq: empty matrix");
  if (!(tol > 0.0)) throw std::invalid_argument("spectral_norm_sq: tol must be positive");
  const double from_ones = detail::power_iterate(m, DenseVector::Ones(m.cols()), tol, max_iters);
  DenseVector mixed(m.cols());
  for (long j = 0; j < m.cols(); ++j) mixed[j] = (j % 2 == 0 ? 1.0 : -1.0) + 1.0 / (2.0 + j);
  const double from_mixed = detail::power_iterate(m, std::move(mixed), tol, max_iters);
  return std::max(from_ones, from_mixed);
}

/// Cached dense Cholesky factorization of lbar*I + beta1*A^T A. The factor
/// is of the unscaled matrix; any per-iteration scaling is applied by the
/// caller at solve time.
class SpdFactorization {
 public:
  SpdFactorization() = default;

  Eigen::Index dim() const { return chol_.rows(); }

  DenseVector solve(const DenseVector& b) const {
    if (b.size() != chol_.rows())
      throw std::invalid_argument("solve_spd: factor dimension " + std::to_string(chol_.rows()) +
                                  ", right-hand side length " + std::to_string(b.size()));
    DenseVector x = b;
    const Eigen::Index d = chol_.rows();
    for (Eigen::Index i = 0; i < d; ++i) {
      double s = x[i];
      for (Eigen::Index j = 0; j < i; ++j) s -= chol_(i, j) * x[j];
      x[i] = s / chol_(i, i);
    }
    for (Eigen::Index i = d - 1; i >= 0; --i) {
      double s = x[i];
      for (Eigen::Index j = i + 1; j < d; ++j) s -= chol_(j, i) * x[j];
      x[i] = s / chol_(i, i);
    }
    return x;
  }

 private:
  Eigen::MatrixXd chol_;  // lower triangle holds L with L L^T = lbar I + beta1 A^T A

  friend SpdFactorization factor_spd(const SparseMatrix&, double, double, Eigen::Index);
};

inline SpdFactorization factor_spd(const SparseMatrix& a, double lbar, double beta1,
                                   Eigen::Index max_dense_dim = 4096) {
  if (!(lbar > 0.0)) throw std::invalid_argument("factor_spd: lbar must be positive");
  if (beta1 < 0.0) throw std::invalid_argument("factor_spd: beta1 must be nonnegative");
  const Eigen::Index d = a.cols();
  if (d > max_dense_dim)
    throw std::invalid_argument("factor_spd: dimension " + std::to_string(d) +
                                " exceeds the dense factorization threshold " +
                                std::to_string(max_dense_dim) +
                                "; use the linearized x-update (chi=1) instead");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
  if (beta1 > 0.0) {
    for (Eigen::Index r = 0; r < a.outerSize(); ++r) {
      for (SparseMatrix::InnerIterator i(a, r); i; ++i) {
        for (SparseMatrix::InnerIterator j(a, r); j; ++j) {
          m(i.col(), j.col()) += beta1 * (i.value() * j.value());
        }
      }
    }
  }
  m.diagonal().array() += lbar;

  // In-place lower Cholesky.
  for (Eigen::Index k = 0; k < d; ++k) {
    double diag = m(k, k);
    for (Eigen::Index j = 0; j < k; ++j) diag -= m(k, j) * m(k, j);
    if (!(diag > 0.0) || !std::isfinite(diag)) throw FactorizationError(k, diag);
    const double lkk = std::sqrt(diag);
    m(k, k) = lkk;
    for (Eigen::Index i = k + 1; i < d; ++i) {
      double s = m(i, k);
      for (Eigen::Index j = 0; j < k; ++j) s -= m(i, j) * m(k, j);
      m(i, k) = s / lkk;
    }
  }
  SpdFactorization f;
  f.chol_ = std::move(m);
  return f;
}

inline DenseVector solve_spd(const SpdFactorization& f, const DenseVector& b) { return f.solve(b); }

}  // namespace avra

#endif
