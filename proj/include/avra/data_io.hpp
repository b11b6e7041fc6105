#ifndef AVRA_DATA_IO_HPP
#define AVRA_DATA_IO_HPP

#include <bit>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "problem.hpp"

namespace avra {

class ParseError : public std::runtime_error {
 public:
  ParseError(long line, long column, const std::string& what)
      : std::runtime_error("parse error at line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ": " + what),
        line(line),
        column(column) {}
  long line;
  long column;
};

// One text line: label followed by strictly increasing (1-based index, value) pairs.
struct LibsvmRecord {
  double label = 0.0;
  std::vector<std::pair<long, double>> features;
};

namespace detail {

inline const char* skip_spaces(const char* p, const char* end) {
  while (p < end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
  return p;
}

inline double parse_double_token(const char* begin, const char* end, long line, long col) {
  double v = 0.0;
  const auto res = std::from_chars(begin, end, v);
  if (res.ec != std::errc() || res.ptr != end)
    throw ParseError(line, col, "malformed number '" + std::string(begin, end) + "'");
  if (!std::isfinite(v)) throw ParseError(line, col, "non-finite value");
  return v;
}

inline LibsvmRecord parse_libsvm_line(const std::string& text, long line) {
  const char* p = text.data();
  const char* end = text.data() + text.size();
  LibsvmRecord rec;

  p = skip_spaces(p, end);
  const char* tok = p;
  while (p < end && *p != ' ' && *p != '\t' && *p != '\r') ++p;
  rec.label = parse_double_token(tok, p, line, tok - text.data() + 1);

  long prev_index = 0;
  while (true) {
    p = skip_spaces(p, end);
    if (p >= end) break;
    tok = p;
    const char* colon = nullptr;
    while (p < end && *p != ' ' && *p != '\t' && *p != '\r') {
      if (*p == ':' && !colon) colon = p;
      ++p;
    }
    const long col = tok - text.data() + 1;
    if (!colon || colon == tok || colon + 1 == p)
      throw ParseError(line, col, "expected index:value, got '" + std::string(tok, p) + "'");
    long idx = 0;
    const auto res = std::from_chars(tok, colon, idx);
    if (res.ec != std::errc() || res.ptr != colon)
      throw ParseError(line, col, "malformed feature index '" + std::string(tok, colon) + "'");
    if (idx < 1) throw ParseError(line, col, "feature indices are 1-based, got " + std::to_string(idx));
    if (idx <= prev_index)
      throw ParseError(line, col, "feature index " + std::to_string(idx) +
                                      " not greater than previous " + std::to_string(prev_index));
    prev_index = idx;
    rec.features.emplace_back(idx, parse_double_token(colon + 1, p, line, colon + 1 - text.data() + 1));
  }
  return rec;
}

}  // namespace detail

/// Streaming LIBSVM parser. One record per non-empty line. When dim_override
/// is positive it fixes the attribute count; otherwise the largest index seen
/// decides it.
inline Dataset parse_libsvm(std::istream& in, long dim_override = 0) {
  std::vector<double> labels;
  std::vector<long> row_start{0};
  std::vector<long> cols;
  std::vector<double> vals;
  long max_index = 0;

  std::string text;
  long line = 0;
  while (std::getline(in, text)) {
    ++line;
    bool blank = true;
    for (char ch : text)
      if (ch != ' ' && ch != '\t' && ch != '\r') {
        blank = false;
        break;
      }
    if (blank) continue;
    LibsvmRecord rec = detail::parse_libsvm_line(text, line);
    labels.push_back(rec.label);
    for (const auto& [idx, v] : rec.features) {
      if (dim_override > 0 && idx > dim_override)
        throw ParseError(line, 1,
                         "feature index " + std::to_string(idx) + " exceeds dimension override " +
                             std::to_string(dim_override));
      max_index = std::max(max_index, idx);
      cols.push_back(idx - 1);
      vals.push_back(v);
    }
    row_start.push_back(static_cast<long>(cols.size()));
  }
  if (labels.empty()) throw ParseError(line, 1, "empty dataset");

  const long n = static_cast<long>(labels.size());
  const long d = dim_override > 0 ? dim_override : max_index;
  Dataset ds;
  ds.features.resize(n, d);
  {
    Eigen::VectorXi counts(n);
    for (long i = 0; i < n; ++i) counts[i] = static_cast<int>(row_start[i + 1] - row_start[i]);
    ds.features.reserve(counts);
    for (long i = 0; i < n; ++i)
      for (long k = row_start[i]; k < row_start[i + 1]; ++k)
        if (vals[k] != 0.0) ds.features.insert(i, cols[k]) = vals[k];
    ds.features.makeCompressed();
  }
  ds.labels = Eigen::Map<const DenseVector>(labels.data(), n);
  validate_dataset(ds);
  return ds;
}

inline Dataset parse_libsvm_file(const std::string& path, long dim_override = 0) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open dataset file: " + path);
  return parse_libsvm(in, dim_override);
}

inline std::string format_shortest(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline void serialize_libsvm(const Dataset& ds, std::ostream& out) {
  for (long i = 0; i < ds.n(); ++i) {
    out << format_shortest(ds.labels[i]);
    for (SparseMatrix::InnerIterator it(ds.features, i); it; ++it)
      out << ' ' << (it.col() + 1) << ':' << format_shortest(it.value());
    out << '\n';
  }
}

// ---- binary dataset cache -------------------------------------------------
//
// Layout: magic "AVRA1", little-endian u64 n, d, nnz, then the CSR arrays of
// the feature matrix (row offsets, column indices, values) and the labels.

namespace detail {

inline void write_u64(std::ostream& out, std::uint64_t v) {
  char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(b, 8);
}

inline std::uint64_t read_u64(std::istream& in) {
  unsigned char b[8];
  in.read(reinterpret_cast<char*>(b), 8);
  if (!in) throw std::runtime_error("dataset cache: truncated file");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return v;
}

inline void write_f64(std::ostream& out, double v) { write_u64(out, std::bit_cast<std::uint64_t>(v)); }

inline double read_f64(std::istream& in) { return std::bit_cast<double>(read_u64(in)); }

}  // namespace detail

inline void save_dataset_cache(const Dataset& ds, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write dataset cache: " + path);
  out.write("AVRA1", 5);
  const long n = ds.n();
  const long nnz = ds.features.nonZeros();
  detail::write_u64(out, static_cast<std::uint64_t>(n));
  detail::write_u64(out, static_cast<std::uint64_t>(ds.dim()));
  detail::write_u64(out, static_cast<std::uint64_t>(nnz));
  for (long i = 0; i <= n; ++i)
    detail::write_u64(out, static_cast<std::uint64_t>(ds.features.outerIndexPtr()[i]));
  for (long k = 0; k < nnz; ++k)
    detail::write_u64(out, static_cast<std::uint64_t>(ds.features.innerIndexPtr()[k]));
  for (long k = 0; k < nnz; ++k) detail::write_f64(out, ds.features.valuePtr()[k]);
  for (long i = 0; i < n; ++i) detail::write_f64(out, ds.labels[i]);
  if (!out) throw std::runtime_error("dataset cache: write failed: " + path);
}

inline Dataset load_dataset_cache(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open dataset cache: " + path);
  char magic[5];
  in.read(magic, 5);
  if (!in || std::string(magic, 5) != "AVRA1")
    throw std::runtime_error("dataset cache: bad magic in " + path);
  const long n = static_cast<long>(detail::read_u64(in));
  const long d = static_cast<long>(detail::read_u64(in));
  const long nnz = static_cast<long>(detail::read_u64(in));
  if (n < 1 || d < 1 || nnz < 0) throw std::runtime_error("dataset cache: bad header in " + path);

  std::vector<long> row_start(n + 1);
  for (long i = 0; i <= n; ++i) row_start[i] = static_cast<long>(detail::read_u64(in));
  if (row_start[0] != 0 || row_start[n] != nnz)
    throw std::runtime_error("dataset cache: inconsistent row offsets in " + path);
  std::vector<long> cols(nnz);
  for (long k = 0; k < nnz; ++k) cols[k] = static_cast<long>(detail::read_u64(in));
  std::vector<double> vals(nnz);
  for (long k = 0; k < nnz; ++k) vals[k] = detail::read_f64(in);

  Dataset ds;
  ds.features.resize(n, d);
  Eigen::VectorXi counts(n);
  for (long i = 0; i < n; ++i) {
    if (row_start[i + 1] < row_start[i])
      throw std::runtime_error("dataset cache: decreasing row offsets in " + path);
    counts[i] = static_cast<int>(row_start[i + 1] - row_start[i]);
  }
  ds.features.reserve(counts);
  for (long i = 0; i < n; ++i) {
    long prev = -1;
    for (long k = row_start[i]; k < row_start[i + 1]; ++k) {
      if (cols[k] <= prev || cols[k] >= d)
        throw std::runtime_error("dataset cache: bad column index in " + path);
      prev = cols[k];
      ds.features.insert(i, cols[k]) = vals[k];
    }
  }
  ds.features.makeCompressed();
  ds.labels.resize(n);
  for (long i = 0; i < n; ++i) ds.labels[i] = detail::read_f64(in);
  if (!in) throw std::runtime_error("dataset cache: truncated file: " + path);
  return ds;
}

// ---- feature graph and penalty matrix -------------------------------------

/// Undirected attribute graph: edges (i, j) with i < j over column indices.
struct FeatureGraph {
  std::vector<std::pair<long, long>> edges;
  std::vector<double> weights;
};

/// Connects attribute pairs whose absolute Pearson correlation reaches the
/// threshold. Constant columns correlate with nothing (never NaN).
inline FeatureGraph build_feature_graph(const Dataset& ds, double threshold) {
  if (!(threshold > 0.0 && threshold < 1.0))
    throw std::invalid_argument("build_feature_graph: threshold must lie in (0,1)");
  validate_dataset(ds);
  const long d = ds.dim();
  if (d > 20000)
    throw std::invalid_argument(
        "build_feature_graph: dense correlation over " + std::to_string(d) +
        " attributes is not supported (limit 20000)");
  const long n = ds.n();
  const double nd = static_cast<double>(n);

  DenseVector sum = DenseVector::Zero(d);
  DenseVector sumsq = DenseVector::Zero(d);
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(d, d);  // upper triangle used
  for (long r = 0; r < n; ++r) {
    for (SparseMatrix::InnerIterator i(ds.features, r); i; ++i) {
      sum[i.col()] += i.value();
      sumsq[i.col()] += i.value() * i.value();
      for (SparseMatrix::InnerIterator j = i; j; ++j) gram(i.col(), j.col()) += i.value() * j.value();
    }
  }

  FeatureGraph g;
  for (long i = 0; i < d; ++i) {
    const double vi = nd * sumsq[i] - sum[i] * sum[i];
    if (!(vi > 0.0)) continue;
    for (long j = i + 1; j < d; ++j) {
      const double vj = nd * sumsq[j] - sum[j] * sum[j];
      if (!(vj > 0.0)) continue;
      const double cov = nd * gram(i, j) - sum[i] * sum[j];
      const double r = cov / std::sqrt(vi * vj);
      if (std::abs(r) >= threshold) {
        g.edges.emplace_back(i, j);
        g.weights.push_back(1.0);
      }
    }
  }
  return g;
}

/// Stacks one signed difference row per edge over an identity block:
/// row k of the edge part has +w at column i and -w at column j.
inline SparseMatrix build_penalty_matrix(const FeatureGraph& g, long d) {
  const long e = static_cast<long>(g.edges.size());
  if (g.weights.size() != g.edges.size())
    throw std::invalid_argument("build_penalty_matrix: edge/weight size mismatch");
  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(2 * e + d));
  for (long k = 0; k < e; ++k) {
    const auto [i, j] = g.edges[k];
    if (i < 0 || j < 0 || i >= d || j >= d || i == j)
      throw std::invalid_argument("build_penalty_matrix: edge (" + std::to_string(i) + "," +
                                  std::to_string(j) + ") invalid for dimension " + std::to_string(d));
    if (!(g.weights[k] > 0.0))
      throw std::invalid_argument("build_penalty_matrix: weights must be positive");
    t.emplace_back(k, i, g.weights[k]);
    t.emplace_back(k, j, -g.weights[k]);
  }
  for (long i = 0; i < d; ++i) t.emplace_back(e + i, i, 1.0);
  return make_sparse(e + d, d, t);
}

}  // namespace avra

#endif
