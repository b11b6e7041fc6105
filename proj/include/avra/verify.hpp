#ifndef AVRA_VERIFY_HPP
#define AVRA_VERIFY_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "solvers.hpp"
#include "synthetic.hpp"

namespace avra {

/// Result of one executable check. Failed checks always carry a witness that
/// reproduces the worst case through the same operation.
struct CheckReport {
  std::string name;
  bool pass = true;
  double margin = std::numeric_limits<double>::infinity();
  std::string witness;
};

namespace witness {

inline std::string scalar(const std::string& key, double v) {
  return key + " = " + format_double17(v) + "\n";
}

inline std::string integer(const std::string& key, long v) {
  return key + " = " + std::to_string(v) + "\n";
}

inline std::string vector_field(const std::string& key, const DenseVector& v) {
  std::string out = key + " = ";
  for (long k = 0; k < v.size(); ++k) {
    if (k) out += ",";
    out += format_double17(v[k]);
  }
  out += "\n";
  return out;
}

struct Data {
  std::map<std::string, std::vector<double>> fields;

  double scalar_at(const std::string& key) const { return fields.at(key).at(0); }

  DenseVector vector_at(const std::string& key) const {
    const auto& f = fields.at(key);
    DenseVector v(static_cast<long>(f.size()));
    for (std::size_t k = 0; k < f.size(); ++k) v[static_cast<long>(k)] = f[k];
    return v;
  }
};

inline Data parse(const std::string& text) {
  Data d;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    std::string key = line.substr(0, eq);
    while (!key.empty() && key.back() == ' ') key.pop_back();
    std::vector<double> values;
    std::string rest = line.substr(eq + 1);
    std::istringstream vs(rest);
    std::string tok;
    while (std::getline(vs, tok, ',')) values.push_back(std::stod(tok));
    d.fields[key] = std::move(values);
  }
  return d;
}

}  // namespace witness

// ---- variance bound --------------------------------------------------------

struct VarianceState {
  DenseVector x_mid;
  DenseVector x_snap;
};

// Exact expected squared deviation of the variance-reduced gradient against
// the smoothness bound 2 L_Q (f(x_snap) - f(x_mid) - <grad f(x_mid), x_snap - x_mid>),
// enumerated over every component.
inline double variance_bound_margin(const Problem& p, const VarianceState& st, double slack,
                                    double floor) {
  const DenseVector v_snap = full_gradient(p, st.x_snap);
  const DenseVector grad_mid = full_gradient(p, st.x_mid);
  double lhs = 0.0;
  for (long i = 0; i < p.n(); ++i)
    lhs += (svrg_gradient(p, i, st.x_mid, st.x_snap, v_snap) - grad_mid).squaredNorm();
  lhs /= static_cast<double>(p.n());
  const double rhs = 2.0 * p.lipschitz_max *
                     (mean_loss(p, st.x_snap) - mean_loss(p, st.x_mid) -
                      grad_mid.dot(st.x_snap - st.x_mid));
  return rhs * (1.0 + slack) + floor - lhs;
}

inline CheckReport check_variance_bound(const Problem& p, const std::vector<VarianceState>& states,
                                        double slack = 1e-8, double floor = 1e-12) {
  if (states.empty()) throw std::invalid_argument("check_variance_bound: no states");
  CheckReport rep{"variance-bound", true, std::numeric_limits<double>::infinity(), {}};
  std::size_t worst = 0;
  for (std::size_t k = 0; k < states.size(); ++k) {
    const double margin = variance_bound_margin(p, states[k], slack, floor);
    if (margin < rep.margin) {
      rep.margin = margin;
      worst = k;
    }
  }
  rep.pass = rep.margin >= 0.0;
  rep.witness = witness::integer("state", static_cast<long>(worst)) +
                witness::scalar("slack", slack) + witness::scalar("floor", floor) +
                witness::vector_field("x_mid", states[worst].x_mid) +
                witness::vector_field("x_snap", states[worst].x_snap);
  return rep;
}

inline double replay_variance_margin(const Problem& p, const witness::Data& w) {
  return variance_bound_margin(
      p, VarianceState{w.vector_at("x_mid"), w.vector_at("x_snap")}, w.scalar_at("slack"),
      w.scalar_at("floor"));
}

// ---- finite differences and the quadratic upper bound ----------------------

inline CheckReport check_gradient_fd(const Problem& p, long points = 20, double h = 1e-5,
                                     std::uint64_t seed = 1u) {
  if (!(h > 0.0)) throw std::invalid_argument("check_gradient_fd: h must be positive");
  CheckReport rep{"gradient-finite-difference", true, std::numeric_limits<double>::infinity(), {}};
  CounterRng rng(seed);
  DenseVector worst_x;
  for (long k = 0; k < points; ++k) {
    DenseVector x(p.dim());
    for (long j = 0; j < p.dim(); ++j) x[j] = rng.normal();
    const DenseVector g = full_gradient(p, x);
    DenseVector fd(p.dim());
    for (long j = 0; j < p.dim(); ++j) {
      DenseVector xp = x, xm = x;
      xp[j] += h;
      xm[j] -= h;
      fd[j] = (mean_loss(p, xp) - mean_loss(p, xm)) / (2.0 * h);
    }
    const double rel = (fd - g).norm() / std::max(1.0, g.norm());
    const double margin = 1e-5 - rel;
    if (margin < rep.margin) {
      rep.margin = margin;
      worst_x = x;
    }

    // quadratic upper bound with the averaged-loss constant
    DenseVector z(p.dim());
    for (long j = 0; j < p.dim(); ++j) z[j] = rng.normal();
    const double upper = mean_loss(p, x) + g.dot(z - x) +
                         0.5 * p.lipschitz_mean * (z - x).squaredNorm();
    const double bound_margin = upper * (1.0 + 1e-8) + 1e-12 - mean_loss(p, z);
    if (bound_margin < rep.margin) {
      rep.margin = bound_margin;
      worst_x = x;
    }
  }
  rep.pass = rep.margin >= 0.0;
  rep.witness = witness::scalar("h", h) + witness::integer("points", points) +
                witness::vector_field("x", worst_x);
  return rep;
}

// ---- weight schedule -------------------------------------------------------

struct ScheduleCheckStep {
  long s;
  MomentumWeights w;
};

inline double schedule_step_margin(long s, const MomentumWeights& prev,
                                   const MomentumWeights& next) {
  double margin = 1e-12 - std::abs(next.agg + next.cur + next.snap - 1.0);
  margin = std::min(margin, prev.agg - next.agg);                       // strictly decreasing
  margin = std::min(margin, prev.cur - next.cur);                       // strictly decreasing
  margin = std::min(margin, next.snap - prev.snap);                     // strictly increasing
  margin = std::min(margin, 2.0 / static_cast<double>(s + 3) - next.cur);  // Lemma-style cap
  margin = std::min(margin, std::min({next.agg, next.cur, next.snap}));
  margin = std::min(margin, 1.0 - std::max({next.agg, next.cur, next.snap}));
  return margin;
}

/// Iterates the weight recursion from (7/30, 2/3, 1/10): open-simplex
/// membership, strict monotonicities and cur_s <= 2/(s+2) at every step.
/// For N >= 3 also sweeps theta_s >= 1 >= rho_s under beta1 = N, beta2 = 1/N
/// (the claim is false for N <= 2, where theta_N < rho_N).
inline CheckReport check_schedule_properties(long n_steps, bool inject_corruption = false) {
  if (n_steps < 1) throw std::invalid_argument("check_schedule_properties: N must be >= 1");
  CheckReport rep{"schedule-properties", true, std::numeric_limits<double>::infinity(), {}};
  MomentumWeights w{7.0 / 30.0, 2.0 / 3.0, 1.0 / 10.0};
  long worst_s = 1;
  MomentumWeights worst_prev = w;
  MomentumWeights worst_next = w;

  std::vector<double> cur_by_s{w.cur};
  for (long s = 1; s <= n_steps; ++s) {
    MomentumWeights next = advance_weights(w);
    if (inject_corruption) next.cur *= 1.05;  // test hook: breaks the simplex and the cap
    const double margin = schedule_step_margin(s, w, next);
    if (margin < rep.margin) {
      rep.margin = margin;
      worst_s = s;
      worst_prev = w;
      worst_next = next;
    }
    cur_by_s.push_back(next.cur);
    w = next;
    if (inject_corruption && margin < 0.0) break;
  }

  if (n_steps >= 3) {
    const double big_n = static_cast<double>(n_steps);
    for (long s = 1; s <= n_steps; ++s) {
      const double theta = big_n * cur_by_s[static_cast<std::size_t>(s - 1)];
      const double rho = (1.0 / big_n) / cur_by_s[static_cast<std::size_t>(s - 1)];
      const double margin = std::min(theta - 1.0, 1.0 - rho);
      if (margin < rep.margin) {
        rep.margin = margin;
        worst_s = s;
      }
    }
  }

  rep.pass = rep.margin >= 0.0;
  rep.witness = witness::integer("s", worst_s) + witness::scalar("agg", worst_prev.agg) +
                witness::scalar("cur", worst_prev.cur) + witness::scalar("snap", worst_prev.snap) +
                witness::scalar("next_agg", worst_next.agg) +
                witness::scalar("next_cur", worst_next.cur) +
                witness::scalar("next_snap", worst_next.snap);
  return rep;
}

inline double replay_schedule_margin(const witness::Data& w) {
  const MomentumWeights prev{w.scalar_at("agg"), w.scalar_at("cur"), w.scalar_at("snap")};
  const MomentumWeights next{w.scalar_at("next_agg"), w.scalar_at("next_cur"),
                             w.scalar_at("next_snap")};
  return schedule_step_margin(static_cast<long>(w.scalar_at("s")), prev, next);
}

// ---- subproblem stationarity ------------------------------------------------

/// x stationarity: v + chi*theta*A^T(A x_prev + B y_prev - c)
///                 + (1-chi)*theta*A^T(A x_new + B y_prev - c)
///                 + A^T dual_prev + eta (x_new - x_prev) = 0,
/// relative to the magnitude of its terms; y optimality: per-coordinate
/// subgradient inclusion of the shrinkage step.
inline CheckReport check_subproblem_optimality(const Problem& p,
                                               const std::vector<InnerStepRecord>& steps,
                                               double x_tol = 1e-8, double y_tol = 1e-12) {
  if (steps.empty()) throw std::invalid_argument("check_subproblem_optimality: empty trajectory");
  CheckReport rep{"subproblem-optimality", true, std::numeric_limits<double>::infinity(), {}};
  long worst_index = 0;
  for (std::size_t k = 0; k < steps.size(); ++k) {
    const InnerStepRecord& r = steps[k];
    const DenseVector mixed =
        r.linearize ? DenseVector(matvec(p.A, r.x_prev) + matvec(p.B, r.y_prev) - p.c)
                    : DenseVector(matvec(p.A, r.x_new) + matvec(p.B, r.y_prev) - p.c);
    const DenseVector term_penalty = r.theta * matvec_transpose(p.A, mixed);
    const DenseVector term_dual = matvec_transpose(p.A, r.dual_prev);
    const DenseVector term_prox = r.eta * (r.x_new - r.x_prev);
    const DenseVector resid = r.grad_est + term_penalty + term_dual + term_prox;
    const double scale = std::max(
        1.0, r.grad_est.norm() + term_penalty.norm() + term_dual.norm() + term_prox.norm());
    const double x_margin = x_tol - resid.norm() / scale;
    if (x_margin < rep.margin) {
      rep.margin = x_margin;
      worst_index = static_cast<long>(k);
    }

    const DenseVector z = matvec(p.A, r.x_new) - p.c + r.dual_prev / r.theta;
    const double tau = p.reg_weight / r.theta;
    for (long j = 0; j < z.size(); ++j) {
      double y_margin;
      if (r.y_new[j] != 0.0) {
        const double sub = p.reg_weight * (r.y_new[j] > 0.0 ? 1.0 : -1.0) +
                           r.theta * (r.y_new[j] - z[j]);
        y_margin = y_tol * std::max({1.0, p.reg_weight, r.theta * std::abs(z[j])}) - std::abs(sub);
      } else {
        y_margin = tau * (1.0 + y_tol) + y_tol - std::abs(z[j]);
      }
      if (y_margin < rep.margin) {
        rep.margin = y_margin;
        worst_index = static_cast<long>(k);
      }
    }
  }
  rep.pass = rep.margin >= 0.0;
  const InnerStepRecord& r = steps[static_cast<std::size_t>(worst_index)];
  rep.witness = witness::integer("s", r.s) + witness::integer("t", r.t) +
                witness::scalar("theta", r.theta) + witness::scalar("eta", r.eta) +
                witness::scalar("linearize", r.linearize ? 1.0 : 0.0) +
                witness::vector_field("x_prev", r.x_prev) +
                witness::vector_field("x_new", r.x_new) +
                witness::vector_field("y_prev", r.y_prev) +
                witness::vector_field("y_new", r.y_new) +
                witness::vector_field("dual_prev", r.dual_prev) +
                witness::vector_field("grad_est", r.grad_est);
  return rep;
}

// ---- straight-line transcription of the accelerated recursion ---------------

/// Independent dense re-implementation of the full recursion used as an
/// agreement oracle. Shares nothing with the solver path except input data:
/// dense algebra, its own gradients, its own shrinkage, LLT solves for the
/// non-linearized x step.
struct TranscribedRun {
  std::vector<DenseVector> x_steps, y_steps, dual_steps;  // one entry per inner step
  DenseVector x_out, y_out, dual_out;
};

inline TranscribedRun transcribe_accelerated_run(const Problem& p, int n_outer, long m,
                                                 bool linearize, std::uint64_t seed,
                                                 double w_cur_init = 2.0 / 3.0,
                                                 double w_snap_init = 0.1) {
  const long n = p.n(), d = p.dim();
  Eigen::MatrixXd feat = Eigen::MatrixXd(p.data.features);
  Eigen::MatrixXd a_mat = Eigen::MatrixXd(p.A);
  Eigen::MatrixXd b_mat = Eigen::MatrixXd(p.B);
  const DenseVector& c = p.c;
  const double nu = p.reg_weight;

  const auto grad_component = [&](long i, const DenseVector& x) -> DenseVector {
    const double dot = feat.row(i).dot(x);
    double s;
    if (p.loss == LossKind::squared) {
      s = dot - p.data.labels[i];
    } else {
      const double t = p.data.labels[i] * dot;
      const double sig = t <= 0.0 ? 1.0 / (1.0 + std::exp(t)) : std::exp(-t) / (1.0 + std::exp(-t));
      s = -p.data.labels[i] * sig;
    }
    return s * feat.row(i).transpose();
  };
  const auto grad_full = [&](const DenseVector& x) -> DenseVector {
    DenseVector g = DenseVector::Zero(d);
    for (long i = 0; i < n; ++i) g += grad_component(i, x);
    return g / static_cast<double>(n);
  };
  const auto shrink = [&](const DenseVector& v, double tau) -> DenseVector {
    DenseVector out(v.size());
    for (long k = 0; k < v.size(); ++k)
      out[k] = v[k] > tau ? v[k] - tau : (v[k] < -tau ? v[k] + tau : 0.0);
    return out;
  };

  const double beta1 = static_cast<double>(n_outer);
  const double beta2 = 1.0 / static_cast<double>(n_outer);
  const double lipschitz = p.lipschitz_max / w_snap_init + p.lipschitz_mean;
  double w_cur = w_cur_init, w_snap = w_snap_init, w_agg = 1.0 - w_cur_init - w_snap_init;

  DenseVector x_snap = DenseVector::Zero(d), y_snap = -c,
              dual_snap = DenseVector::Zero(c.size());
  DenseVector x = x_snap, y = y_snap, dual = dual_snap;
  DenseVector x_agg = x_snap, y_agg = y_snap, dual_agg = dual_snap;
  CounterRng rng(seed);
  TranscribedRun run;

  for (int s = 1; s <= n_outer; ++s) {
    const double theta = beta1 * w_cur;
    const double rho = beta2 / w_cur;
    const double eta = (lipschitz + (linearize ? beta1 * p.a_norm_sq : 0.0)) * w_cur;
    const DenseVector v_snap = grad_full(x_snap);
    DenseVector sum_x = DenseVector::Zero(d), sum_y = DenseVector::Zero(y.size()),
                sum_dual = DenseVector::Zero(dual.size());
    for (long t = 1; t <= m; ++t) {
      const DenseVector x_mid = w_agg * x_agg + w_cur * x + w_snap * x_snap;
      const long i = rng.uniform_index(n);
      const DenseVector v = grad_component(i, x_mid) - grad_component(i, x_snap) + v_snap;
      if (linearize) {
        x = x - (a_mat.transpose() * dual + v +
                 theta * a_mat.transpose() * (a_mat * x + b_mat * y - c)) /
                    eta;
      } else {
        const Eigen::MatrixXd lhs =
            eta * Eigen::MatrixXd::Identity(d, d) + theta * a_mat.transpose() * a_mat;
        x = lhs.llt().solve(eta * x - v - a_mat.transpose() * dual -
                            theta * a_mat.transpose() * (b_mat * y - c));
      }
      x_agg = w_agg * x_agg + w_cur * x + w_snap * x_snap;
      y = shrink(a_mat * x - c + dual / theta, nu / theta);
      y_agg = w_agg * y_agg + w_cur * y + w_snap * y_snap;
      dual = dual + rho * (a_mat * x + b_mat * y - c);
      dual_agg = w_agg * dual_agg + w_cur * dual + w_snap * dual_snap;
      sum_x += x_agg;
      sum_y += y_agg;
      sum_dual += dual_agg;
      run.x_steps.push_back(x);
      run.y_steps.push_back(y);
      run.dual_steps.push_back(dual);
    }
    x_snap = sum_x / static_cast<double>(m);
    y_snap = sum_y / static_cast<double>(m);
    dual_snap = sum_dual / static_cast<double>(m);
    const double c2 = w_cur * w_cur;
    const double cur_next = (std::sqrt(c2 * c2 + 4.0 * c2) - c2) / 2.0;
    const double agg_next = w_agg * (1.0 - cur_next);
    const double snap_next = (1.0 - w_agg) * (1.0 - cur_next);
    w_agg = agg_next;
    w_cur = cur_next;
    w_snap = snap_next;
  }
  const double mass = w_snap * static_cast<double>(m);
  run.x_out = x_agg / (1.0 + mass) + x_snap * (mass / (1.0 + mass));
  run.y_out = y_agg / (1.0 + mass) + y_snap * (mass / (1.0 + mass));
  run.dual_out = dual_agg / (1.0 + mass) + dual_snap * (mass / (1.0 + mass));
  return run;
}

inline double relative_gap(const DenseVector& a, const DenseVector& b) {
  return (a - b).norm() / std::max(1.0, b.norm());
}

inline Problem tiny_single_sample_problem() {
  std::vector<Triplet> t{{0, 0, 0.9}, {0, 1, -0.4}, {0, 2, 0.25}, {0, 3, 0.7}, {0, 4, -1.1}};
  Dataset ds;
  ds.features = make_sparse(1, 5, t);
  ds.labels = DenseVector::Constant(1, 1.0);
  return make_fused_lasso_problem(std::move(ds), LossKind::squared, chain_graph(5), 0.05);
}

// ---- reduction equivalences --------------------------------------------------

/// Pinned-schedule accelerated loop vs the standalone variance-reduced loop:
/// bitwise trace and output equality under a shared seed. Then the m = 1,
/// n = 1 configuration against the dense transcription (agreement to 1e-12),
/// and a different-seed sanity split.
inline CheckReport check_reduction_equivalence(const Problem& p, std::uint64_t seed) {
  CheckReport rep{"reduction-equivalence", true, std::numeric_limits<double>::infinity(), {}};
  double worst_bitwise = 0.0;
  long worst_row = -1;

  SvrgAdmmOptions svrg;
  svrg.outer_steps = 3;
  svrg.inner_steps = 0;
  const SolverOutput pinned = run_asvrg_admm_pinned(p, svrg, seed);
  const SolverOutput standalone = run_svrg_admm(p, svrg, seed);
  if (pinned.trace.size() != standalone.trace.size()) {
    worst_bitwise = 1.0;
  } else {
    for (std::size_t k = 0; k < pinned.trace.size(); ++k) {
      const bool same = pinned.trace[k].passes == standalone.trace[k].passes &&
                        pinned.trace[k].objective == standalone.trace[k].objective &&
                        pinned.trace[k].violation == standalone.trace[k].violation;
      if (!same) {
        worst_bitwise = 1.0;
        worst_row = static_cast<long>(k);
        break;
      }
    }
  }
  if (pinned.x != standalone.x || pinned.y != standalone.y || pinned.dual != standalone.dual)
    worst_bitwise = std::max(worst_bitwise, 1.0);
  rep.margin = std::min(rep.margin, worst_bitwise == 0.0 ? 0.0 : -worst_bitwise);

  const Problem tiny = tiny_single_sample_problem();
  AsvrgOptions acc;
  acc.outer_steps = 50;
  acc.inner_steps = 1;
  acc.linearize = true;
  std::vector<InnerStepRecord> steps;
  acc.observer = [&steps](const InnerStepRecord& r) { steps.push_back(r); };
  const SolverOutput impl = run_asvrg_admm(tiny, acc, seed);
  const TranscribedRun ref = transcribe_accelerated_run(tiny, 50, 1, true, seed);
  double worst_rel = 0.0;
  for (std::size_t k = 0; k < steps.size() && k < ref.x_steps.size(); ++k) {
    worst_rel = std::max(worst_rel, relative_gap(steps[k].x_new, ref.x_steps[k]));
    worst_rel = std::max(worst_rel, relative_gap(steps[k].y_new, ref.y_steps[k]));
    worst_rel = std::max(worst_rel, relative_gap(steps[k].dual_new, ref.dual_steps[k]));
  }
  if (steps.size() != ref.x_steps.size()) worst_rel = 1.0;
  worst_rel = std::max(worst_rel, relative_gap(impl.x, ref.x_out));
  worst_rel = std::max(worst_rel, relative_gap(impl.y, ref.y_out));
  rep.margin = std::min(rep.margin, 1e-12 - worst_rel);

  const SolverOutput other = run_asvrg_admm_pinned(p, svrg, seed ^ 0x5bd1e995u);
  bool differs = other.trace.size() != pinned.trace.size();
  for (std::size_t k = 0; !differs && k < other.trace.size(); ++k)
    differs = other.trace[k].objective != pinned.trace[k].objective;
  if (!differs) rep.margin = std::min(rep.margin, -1.0);

  rep.pass = rep.margin >= 0.0;
  rep.witness = witness::integer("trace_row", worst_row) +
                witness::scalar("bitwise_gap", worst_bitwise) +
                witness::scalar("transcription_gap", worst_rel) +
                witness::integer("seed", static_cast<long>(seed));
  return rep;
}

// ---- suite -------------------------------------------------------------------

inline std::vector<CheckReport> run_verification_suite(std::uint64_t seed,
                                                       bool corrupt_schedule = false) {
  std::vector<CheckReport> reports;
  reports.push_back(check_schedule_properties(1000, corrupt_schedule));

  const Problem logistic = desk_logistic_problem();
  const Problem squared = desk_squared_problem();

  reports.push_back(check_gradient_fd(logistic, 20, 1e-5, seed));
  {
    CheckReport r = check_gradient_fd(squared, 20, 1e-5, seed ^ 0x9e3779b9u);
    r.name = "gradient-finite-difference-squared";
    reports.push_back(r);
  }

  {
    CounterRng rng(seed);
    std::vector<VarianceState> states;
    for (int k = 0; k < 100; ++k) {
      VarianceState st{DenseVector(logistic.dim()), DenseVector(logistic.dim())};
      for (long j = 0; j < logistic.dim(); ++j) {
        st.x_mid[j] = rng.normal();
        st.x_snap[j] = rng.normal();
      }
      states.push_back(std::move(st));
    }
    reports.push_back(check_variance_bound(logistic, states));
  }

  for (const bool linearize : {true, false}) {
    std::vector<InnerStepRecord> steps;
    AsvrgOptions opt;
    opt.outer_steps = 1;
    opt.inner_steps = 100;
    opt.linearize = linearize;
    opt.observer = [&steps](const InnerStepRecord& r) { steps.push_back(r); };
    run_asvrg_admm(squared, opt, seed);
    CheckReport r = check_subproblem_optimality(squared, steps);
    r.name = linearize ? "subproblem-optimality-linearized" : "subproblem-optimality-exact";
    reports.push_back(r);
  }

  reports.push_back(check_reduction_equivalence(squared, seed));
  return reports;
}

inline std::string format_report(const CheckReport& r) {
  std::string line = std::string(r.pass ? "[PASS] " : "[FAIL] ") + r.name +
                     "  margin=" + format_double17(r.margin);
  if (!r.pass) line += "\n  witness:\n" + r.witness;
  return line;
}

}  // namespace avra

#endif
