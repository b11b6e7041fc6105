#ifndef AVRA_SOLVERS_HPP
#define AVRA_SOLVERS_HPP

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "problem.hpp"
#include "rng.hpp"
#include "schedule.hpp"
#include "trace.hpp"

namespace avra {

inline constexpr const char* kAsvrgAdmmId = "asvrg-admm";
inline constexpr const char* kSvrgAdmmId = "svrg-admm";
inline constexpr const char* kSadmmId = "sadmm";
inline constexpr const char* kAdmmId = "admm";

class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& solver, int outer, long inner, double value)
      : std::runtime_error(solver + ": divergence at outer step " + std::to_string(outer) +
                           ", inner step " + std::to_string(inner) + " (objective " +
                           std::to_string(value) + ")"),
        outer(outer),
        inner(inner),
        value(value) {}
  int outer;
  long inner;
  double value;
};

/// Iterate bundle: current triple, aggregate triple, middle point and the
/// snapshot triple with its cached full gradient.
struct SolverState {
  DenseVector x, y, dual;
  DenseVector x_agg, y_agg, dual_agg;
  DenseVector x_mid;
  DenseVector x_snap, y_snap, dual_snap;
  DenseVector v_snap;        // full gradient at x_snap
  DenseVector snap_scalars;  // per-sample gradient scalars at x_snap
  CounterRng rng;
  long t = 0;
};

/// Feasible start: x = 0 and y = -c (so A x + B y - c = 0 exactly for B = -I),
/// dual = 0; aggregates and snapshot equal the start triple.
inline SolverState init_solver_state(const Problem& p, std::uint64_t seed) {
  if (!p.b_neg_identity)
    throw std::invalid_argument(
        "init_solver_state: feasible initialization is implemented for B = -I only");
  SolverState st{.x = DenseVector::Zero(p.dim()),
                 .y = -p.c,
                 .dual = DenseVector::Zero(p.constraint_rows()),
                 .x_agg = DenseVector::Zero(p.dim()),
                 .y_agg = -p.c,
                 .dual_agg = DenseVector::Zero(p.constraint_rows()),
                 .x_mid = DenseVector::Zero(p.dim()),
                 .x_snap = DenseVector::Zero(p.dim()),
                 .y_snap = -p.c,
                 .dual_snap = DenseVector::Zero(p.constraint_rows()),
                 .v_snap = DenseVector::Zero(p.dim()),
                 .snap_scalars = DenseVector::Zero(p.n()),
                 .rng = CounterRng(seed)};
  if (constraint_violation(p, st.x_snap, st.y_snap) > 1e-10)
    throw std::logic_error("init_solver_state: snapshot triple is not feasible");
  return st;
}

inline DenseVector soft_threshold(const DenseVector& v, double tau) {
  if (!(tau >= 0.0)) throw std::invalid_argument("soft_threshold: tau must be nonnegative");
  DenseVector out(v.size());
  for (long k = 0; k < v.size(); ++k) {
    if (v[k] > tau)
      out[k] = v[k] - tau;
    else if (v[k] < -tau)
      out[k] = v[k] + tau;
    else
      out[k] = 0.0;
  }
  return out;
}

/// grad f_i(x_mid) - grad f_i(x_snap) + v_snap.
inline DenseVector svrg_gradient(const Problem& p, long i, const DenseVector& x_mid,
                                 const DenseVector& x_snap, const DenseVector& v_snap) {
  DenseVector g = component_gradient(p, i, x_mid);
  g -= component_gradient(p, i, x_snap);
  g += v_snap;
  return g;
}

// Same combination with grad f_i(x_snap) rebuilt from the cached snapshot
// scalar; bit-identical to svrg_gradient.
inline DenseVector svrg_gradient_cached(const Problem& p, long i, const DenseVector& x_mid,
                                        double snap_scalar, const DenseVector& v_snap) {
  DenseVector g = component_gradient(p, i, x_mid);
  for (SparseMatrix::InnerIterator it(p.data.features, i); it; ++it)
    g[it.col()] -= snap_scalar * it.value();
  g += v_snap;
  return g;
}

/// x - (A^T dual + v + theta A^T r_prev) / eta, where r_prev = A x + B y - c.
inline DenseVector x_update_linearized(const Problem& p, double eta, double theta,
                                       const DenseVector& x_prev, const DenseVector& grad_est,
                                       const DenseVector& dual_prev,
                                       const DenseVector& residual_prev) {
  if (!(eta > 0.0)) throw std::invalid_argument("x_update_linearized: eta must be positive");
  const DenseVector pull = matvec_transpose(p.A, dual_prev + theta * residual_prev);
  return x_prev - (grad_est + pull) / eta;
}

/// Solution of (eta I + theta A^T A) x = eta x_prev - v - A^T dual - theta A^T (B y_prev - c),
/// realized through the cached factorization of lipschitz*I + beta1*A^T A and
/// the identity (eta I + theta A^T A)^{-1} = cur^{-1} (lipschitz I + beta1 A^T A)^{-1}.
inline DenseVector x_update_exact(const Problem& p, const WeightSchedule& ws,
                                  const SpdFactorization& factor, const DenseVector& x_prev,
                                  const DenseVector& grad_est, const DenseVector& dual_prev,
                                  const DenseVector& y_prev) {
  if (ws.linearize)
    throw std::invalid_argument("x_update_exact: schedule requests the linearized update");
  const DenseVector offset = matvec(p.B, y_prev) - p.c;
  const DenseVector pull = matvec_transpose(p.A, dual_prev + ws.theta * offset);
  const DenseVector rhs = ws.eta * x_prev - grad_est - pull;
  return solve_spd(factor, rhs) / ws.w.cur;
}

/// Closed-form y step for B = -I and the l1 regularizer:
/// soft_threshold(A x - c + dual/theta, nu/theta).
inline DenseVector y_update(const Problem& p, double theta, const DenseVector& ax_new,
                            const DenseVector& dual_prev) {
  if (!p.b_neg_identity)
    throw std::invalid_argument(
        "y_update: closed form requires B = -I with the l1 regularizer; other (B, g) pairs are "
        "unsupported");
  if (!(theta > 0.0)) throw std::invalid_argument("y_update: theta must be positive");
  return soft_threshold(ax_new - p.c + dual_prev / theta, p.reg_weight / theta);
}

inline DenseVector dual_update(double rho, const DenseVector& dual_prev,
                               const DenseVector& residual_new) {
  return dual_prev + rho * residual_new;
}

inline DenseVector convex_combine(double w_agg, const DenseVector& agg, double w_cur,
                                  const DenseVector& cur, double w_snap, const DenseVector& snap) {
  if (w_agg == 0.0 && w_snap == 0.0 && w_cur == 1.0) return cur;  // pinned: exact copy
  return w_agg * agg + w_cur * cur + w_snap * snap;
}

/// Full per-step context handed to an observer; intended for desk-scale
/// verification runs, every vector is copied.
struct InnerStepRecord {
  int s = 0;
  long t = 0;
  long sample = 0;
  double theta = 0.0, rho = 0.0, eta = 0.0;
  bool linearize = true;
  MomentumWeights w{0, 1, 0};
  DenseVector x_prev, y_prev, dual_prev;
  DenseVector x_agg_prev, x_snap;
  DenseVector x_mid, grad_est;
  DenseVector x_new, y_new, dual_new, x_agg_new;
};

using StepObserver = std::function<void(const InnerStepRecord&)>;

/// One inner iteration: middle point, sampled variance-reduced gradient,
/// x step, aggregate x, y step, aggregate y, dual step, aggregate dual,
/// in that order, all with the same weight triple.
inline void inner_step(SolverState& st, const WeightSchedule& ws, const Problem& p,
                       const SpdFactorization* factor, const StepObserver& observer = {}) {
  const bool observing = static_cast<bool>(observer);
  InnerStepRecord rec;
  if (observing) {
    rec.s = ws.s;
    rec.t = st.t + 1;
    rec.theta = ws.theta;
    rec.rho = ws.rho;
    rec.eta = ws.eta;
    rec.linearize = ws.linearize;
    rec.w = ws.w;
    rec.x_prev = st.x;
    rec.y_prev = st.y;
    rec.dual_prev = st.dual;
    rec.x_agg_prev = st.x_agg;
    rec.x_snap = st.x_snap;
  }

  st.x_mid = convex_combine(ws.w.agg, st.x_agg, ws.w.cur, st.x, ws.w.snap, st.x_snap);
  const long i = st.rng.uniform_index(p.n());
  const DenseVector grad_est = svrg_gradient_cached(p, i, st.x_mid, st.snap_scalars[i], st.v_snap);

  DenseVector x_new;
  if (ws.linearize) {
    const DenseVector residual_prev = matvec(p.A, st.x) + matvec(p.B, st.y) - p.c;
    x_new = x_update_linearized(p, ws.eta, ws.theta, st.x, grad_est, st.dual, residual_prev);
  } else {
    x_new = x_update_exact(p, ws, *factor, st.x, grad_est, st.dual, st.y);
  }
  DenseVector x_agg_new = convex_combine(ws.w.agg, st.x_agg, ws.w.cur, x_new, ws.w.snap, st.x_snap);
  const DenseVector ax_new = matvec(p.A, x_new);
  DenseVector y_new = y_update(p, ws.theta, ax_new, st.dual);
  DenseVector y_agg_new = convex_combine(ws.w.agg, st.y_agg, ws.w.cur, y_new, ws.w.snap, st.y_snap);
  const DenseVector residual_new = ax_new + matvec(p.B, y_new) - p.c;
  DenseVector dual_new = dual_update(ws.rho, st.dual, residual_new);
  DenseVector dual_agg_new =
      convex_combine(ws.w.agg, st.dual_agg, ws.w.cur, dual_new, ws.w.snap, st.dual_snap);

  if (observing) {
    rec.sample = i;
    rec.x_mid = st.x_mid;
    rec.grad_est = grad_est;
    rec.x_new = x_new;
    rec.y_new = y_new;
    rec.dual_new = dual_new;
    rec.x_agg_new = x_agg_new;
    observer(rec);
  }

  st.x = std::move(x_new);
  st.y = std::move(y_new);
  st.dual = std::move(dual_new);
  st.x_agg = std::move(x_agg_new);
  st.y_agg = std::move(y_agg_new);
  st.dual_agg = std::move(dual_agg_new);
  ++st.t;
}

struct RunGuard {
  std::string solver;
  double objective_limit = 0.0;

  void check(int outer, long inner, double obj, double viol) const {
    if (!std::isfinite(obj) || !std::isfinite(viol) || obj > objective_limit)
      throw DivergenceError(solver, outer, inner, obj);
  }
};

inline long trace_cadence(long m) { return std::max<long>(1, (m + 3) / 4); }

/// One outer iteration: snapshot full gradient, m inner steps, then snapshot
/// averaging of the aggregate triples accumulated in t order.
inline void outer_step(SolverState& st, const WeightSchedule& ws, const Problem& p,
                       const SpdFactorization* factor, TraceRecorder& rec, const RunGuard& guard,
                       const StepObserver& observer = {}) {
  st.v_snap = full_gradient(p, st.x_snap, &st.snap_scalars);
  rec.charge_full_pass();
  if (rec.at_pass_boundary()) {
    const double obj = objective(p, st.x_agg, st.y_agg);
    const double viol = constraint_violation(p, st.x_agg, st.y_agg);
    guard.check(ws.s, 0, obj, viol);
    rec.record(obj, viol);
  }

  const long m = ws.inner_steps;
  const long cadence = trace_cadence(m);
  DenseVector sum_x = DenseVector::Zero(p.dim());
  DenseVector sum_y = DenseVector::Zero(p.y_dim());
  DenseVector sum_dual = DenseVector::Zero(p.constraint_rows());
  for (long t = 1; t <= m; ++t) {
    inner_step(st, ws, p, factor, observer);
    sum_x += st.x_agg;
    sum_y += st.y_agg;
    sum_dual += st.dual_agg;
    rec.charge_stochastic_gradient();
    if (rec.at_pass_boundary() || t % cadence == 0) {
      const double obj = objective(p, st.x_agg, st.y_agg);
      const double viol = constraint_violation(p, st.x_agg, st.y_agg);
      guard.check(ws.s, t, obj, viol);
      rec.record(obj, viol);
    }
  }
  const double md = static_cast<double>(m);
  st.x_snap = sum_x / md;
  st.y_snap = sum_y / md;
  st.dual_snap = sum_dual / md;
}

struct SolverOutput {
  DenseVector x, y, dual;
  std::vector<TraceRecord> trace;
};

struct AsvrgOptions {
  int outer_steps = 10;   // N
  long inner_steps = 0;   // m; 0 picks n
  bool linearize = true;  // chi = 1
  double w_cur_init = 2.0 / 3.0;
  double w_snap_init = 0.1;
  bool appendix_output_blend = false;  // alternative output weighting for comparisons
  StepObserver observer;
};

namespace detail {

inline SolverOutput init_only_output(const Problem& p, std::uint64_t seed,
                                     const std::string& solver_id) {
  SolverState st = init_solver_state(p, seed);
  TraceRecorder rec(solver_id, seed, p.n());
  rec.record(objective(p, st.x_snap, st.y_snap), constraint_violation(p, st.x_snap, st.y_snap));
  return SolverOutput{st.x_snap, st.y_snap, st.dual_snap, rec.take()};
}

}  // namespace detail

/// Accelerated variance-reduced loop over an explicit schedule (one entry per
/// outer step plus the final entry whose weights form the output blend).
inline SolverOutput run_accelerated_loop(const Problem& p,
                                         const std::vector<WeightSchedule>& schedules,
                                         std::uint64_t seed, const std::string& solver_id,
                                         bool appendix_blend = false,
                                         const StepObserver& observer = {}) {
  if (schedules.empty()) throw std::invalid_argument("run_accelerated_loop: empty schedule");
  const int n_outer = static_cast<int>(schedules.size()) - 1;
  if (n_outer == 0) return detail::init_only_output(p, seed, solver_id);
  const long m = schedules.front().inner_steps;

  SpdFactorization factor;
  const bool linearize = schedules.front().linearize;
  if (!linearize) factor = factor_spd(p.A, schedules.front().lipschitz, schedules.front().beta1);

  SolverState st = init_solver_state(p, seed);
  TraceRecorder rec(solver_id, seed, p.n());
  const double initial_obj = objective(p, st.x_snap, st.y_snap);
  rec.record(initial_obj, constraint_violation(p, st.x_snap, st.y_snap));
  const RunGuard guard{solver_id, 1e3 * std::max(initial_obj, 1.0)};

  for (int s = 1; s <= n_outer; ++s)
    outer_step(st, schedules[static_cast<std::size_t>(s - 1)], p, linearize ? nullptr : &factor,
               rec, guard, observer);

  const MomentumWeights& w_next = schedules.back().w;
  const double snap_mass = w_next.snap * static_cast<double>(m);
  SolverOutput out;
  if (snap_mass == 0.0) {
    out.x = st.x_agg;
    out.y = st.y_agg;
    out.dual = st.dual_agg;
  } else {
    const double c_agg =
        appendix_blend ? w_next.agg / (w_next.agg + snap_mass) : 1.0 / (1.0 + snap_mass);
    const double c_snap =
        appendix_blend ? snap_mass / (w_next.agg + snap_mass) : snap_mass / (1.0 + snap_mass);
    out.x = c_agg * st.x_agg + c_snap * st.x_snap;
    out.y = c_agg * st.y_agg + c_snap * st.y_snap;
    out.dual = c_agg * st.dual_agg + c_snap * st.dual_snap;
  }
  {
    const double obj = objective(p, out.x, out.y);
    const double viol = constraint_violation(p, out.x, out.y);
    guard.check(n_outer, m, obj, viol);
    rec.record(obj, viol);
  }
  out.trace = rec.take();
  return out;
}

inline SolverOutput run_asvrg_admm(const Problem& p, const AsvrgOptions& opt, std::uint64_t seed) {
  if (opt.outer_steps < 0) throw std::invalid_argument("run_asvrg_admm: negative outer step count");
  if (opt.outer_steps == 0) return detail::init_only_output(p, seed, kAsvrgAdmmId);
  const long m = opt.inner_steps > 0 ? opt.inner_steps : p.n();
  const auto schedules = make_schedule(
      p, ScheduleConfig{opt.outer_steps, m, opt.linearize, opt.w_cur_init, opt.w_snap_init});
  return run_accelerated_loop(p, schedules, seed, kAsvrgAdmmId, opt.appendix_output_blend,
                              opt.observer);
}

struct SvrgAdmmOptions {
  int outer_steps = 10;
  long inner_steps = 0;  // 0 picks n
  bool linearize = true;
  double beta = 1.0;
  double eta = 0.0;  // 0 picks L_Q + L_f + chi * beta * ||A||_2^2
};

inline double resolve_svrg_eta(const Problem& p, const SvrgAdmmOptions& opt) {
  if (opt.eta > 0.0) return opt.eta;
  return p.lipschitz_max + p.lipschitz_mean + (opt.linearize ? opt.beta * p.a_norm_sq : 0.0);
}

/// The accelerated loop driven by the constant pinned schedule; bit-identical
/// to the standalone run_svrg_admm under a shared seed.
inline SolverOutput run_asvrg_admm_pinned(const Problem& p, const SvrgAdmmOptions& opt,
                                          std::uint64_t seed, const StepObserver& observer = {}) {
  if (opt.outer_steps == 0) return detail::init_only_output(p, seed, kSvrgAdmmId);
  const long m = opt.inner_steps > 0 ? opt.inner_steps : p.n();
  const WeightSchedule ws =
      pinned_schedule(opt.beta, resolve_svrg_eta(p, opt), opt.linearize, m, opt.outer_steps);
  std::vector<WeightSchedule> schedules(static_cast<std::size_t>(opt.outer_steps) + 1, ws);
  for (std::size_t k = 0; k < schedules.size(); ++k) schedules[k].s = static_cast<int>(k) + 1;
  return run_accelerated_loop(p, schedules, seed, kSvrgAdmmId, false, observer);
}

/// Standalone variance-reduced loop without momentum: snapshot full gradient,
/// m plain inner steps with constant theta = rho = beta, snapshot averaging
/// of the iterates in t order.
inline SolverOutput run_svrg_admm(const Problem& p, const SvrgAdmmOptions& opt,
                                  std::uint64_t seed) {
  if (opt.outer_steps < 0) throw std::invalid_argument("run_svrg_admm: negative outer step count");
  if (opt.outer_steps == 0) return detail::init_only_output(p, seed, kSvrgAdmmId);
  const long m = opt.inner_steps > 0 ? opt.inner_steps : p.n();
  const double eta = resolve_svrg_eta(p, opt);
  const double beta = opt.beta;
  const WeightSchedule ws = pinned_schedule(beta, eta, opt.linearize, m, opt.outer_steps);

  SpdFactorization factor;
  if (!opt.linearize) factor = factor_spd(p.A, eta, beta);

  SolverState st = init_solver_state(p, seed);
  TraceRecorder rec(kSvrgAdmmId, seed, p.n());
  const double initial_obj = objective(p, st.x_snap, st.y_snap);
  rec.record(initial_obj, constraint_violation(p, st.x_snap, st.y_snap));
  const RunGuard guard{kSvrgAdmmId, 1e3 * std::max(initial_obj, 1.0)};
  const long cadence = trace_cadence(m);

  for (int s = 1; s <= opt.outer_steps; ++s) {
    st.v_snap = full_gradient(p, st.x_snap, &st.snap_scalars);
    rec.charge_full_pass();
    if (rec.at_pass_boundary()) {
      const double obj = objective(p, st.x, st.y);
      const double viol = constraint_violation(p, st.x, st.y);
      guard.check(s, 0, obj, viol);
      rec.record(obj, viol);
    }
    DenseVector sum_x = DenseVector::Zero(p.dim());
    DenseVector sum_y = DenseVector::Zero(p.y_dim());
    DenseVector sum_dual = DenseVector::Zero(p.constraint_rows());
    for (long t = 1; t <= m; ++t) {
      const long i = st.rng.uniform_index(p.n());
      const DenseVector grad_est = svrg_gradient_cached(p, i, st.x, st.snap_scalars[i], st.v_snap);
      DenseVector x_new;
      if (opt.linearize) {
        const DenseVector residual_prev = matvec(p.A, st.x) + matvec(p.B, st.y) - p.c;
        x_new = x_update_linearized(p, eta, beta, st.x, grad_est, st.dual, residual_prev);
      } else {
        x_new = x_update_exact(p, ws, factor, st.x, grad_est, st.dual, st.y);
      }
      const DenseVector ax_new = matvec(p.A, x_new);
      DenseVector y_new = y_update(p, beta, ax_new, st.dual);
      const DenseVector residual_new = ax_new + matvec(p.B, y_new) - p.c;
      DenseVector dual_new = dual_update(beta, st.dual, residual_new);
      st.x = std::move(x_new);
      st.y = std::move(y_new);
      st.dual = std::move(dual_new);
      ++st.t;
      sum_x += st.x;
      sum_y += st.y;
      sum_dual += st.dual;
      rec.charge_stochastic_gradient();
      if (rec.at_pass_boundary() || t % cadence == 0) {
        const double obj = objective(p, st.x, st.y);
        const double viol = constraint_violation(p, st.x, st.y);
        guard.check(s, t, obj, viol);
        rec.record(obj, viol);
      }
    }
    const double md = static_cast<double>(m);
    st.x_snap = sum_x / md;
    st.y_snap = sum_y / md;
    st.dual_snap = sum_dual / md;
  }

  SolverOutput out{st.x, st.y, st.dual, {}};
  {
    const double obj = objective(p, out.x, out.y);
    const double viol = constraint_violation(p, out.x, out.y);
    guard.check(opt.outer_steps, m, obj, viol);
    rec.record(obj, viol);
  }
  out.trace = rec.take();
  return out;
}

struct SadmmOptions {
  double passes = 20.0;
  double beta = 1.0;
  double eta0 = 0.0;  // 0 picks L_Q + beta * ||A||_2^2
};

/// Plain stochastic loop: raw single-sample gradient, prox weight growing as
/// eta0 * sqrt(t) (step size decaying as 1/sqrt(t)).
inline SolverOutput run_sadmm(const Problem& p, const SadmmOptions& opt, std::uint64_t seed) {
  if (!(opt.passes >= 0.0)) throw std::invalid_argument("run_sadmm: negative pass budget");
  const double eta0 = opt.eta0 > 0.0 ? opt.eta0 : p.lipschitz_max + opt.beta * p.a_norm_sq;
  const double beta = opt.beta;
  if (!(beta > 0.0)) throw std::invalid_argument("run_sadmm: beta must be positive");

  SolverState st = init_solver_state(p, seed);
  TraceRecorder rec(kSadmmId, seed, p.n());
  const double initial_obj = objective(p, st.x, st.y);
  rec.record(initial_obj, constraint_violation(p, st.x, st.y));
  const RunGuard guard{kSadmmId, 1e3 * std::max(initial_obj, 1.0)};

  const long total = std::lround(opt.passes * static_cast<double>(p.n()));
  const long cadence = trace_cadence(p.n());
  for (long t = 1; t <= total; ++t) {
    const long i = st.rng.uniform_index(p.n());
    const DenseVector grad = component_gradient(p, i, st.x);
    const double eta_t = eta0 * std::sqrt(static_cast<double>(t));
    const DenseVector residual_prev = matvec(p.A, st.x) + matvec(p.B, st.y) - p.c;
    DenseVector x_new = x_update_linearized(p, eta_t, beta, st.x, grad, st.dual, residual_prev);
    const DenseVector ax_new = matvec(p.A, x_new);
    DenseVector y_new = y_update(p, beta, ax_new, st.dual);
    const DenseVector residual_new = ax_new + matvec(p.B, y_new) - p.c;
    st.dual = dual_update(beta, st.dual, residual_new);
    st.x = std::move(x_new);
    st.y = std::move(y_new);
    ++st.t;
    rec.charge_stochastic_gradient();
    if (rec.at_pass_boundary() || t % cadence == 0) {
      const double obj = objective(p, st.x, st.y);
      const double viol = constraint_violation(p, st.x, st.y);
      guard.check(0, t, obj, viol);
      rec.record(obj, viol);
    }
  }
  SolverOutput out{st.x, st.y, st.dual, {}};
  rec.record(objective(p, out.x, out.y), constraint_violation(p, out.x, out.y));
  out.trace = rec.take();
  return out;
}

struct DeterministicAdmmOptions {
  long iters = 10000;
  double beta = 1.0;
  double eta = 0.0;  // 0 picks L_f + beta * ||A||_2^2
  bool sqrt_decay = false;
};

/// Full-gradient linearized x step, exact y step, dual step with beta. The
/// long-horizon convergence reference for the stochastic solvers.
inline SolverOutput run_deterministic_admm(const Problem& p, const DeterministicAdmmOptions& opt) {
  if (opt.iters < 0) throw std::invalid_argument("run_deterministic_admm: negative iteration count");
  const double eta0 = opt.eta > 0.0 ? opt.eta : p.lipschitz_mean + opt.beta * p.a_norm_sq;
  const double beta = opt.beta;
  if (!(beta > 0.0)) throw std::invalid_argument("run_deterministic_admm: beta must be positive");

  SolverState st = init_solver_state(p, 0);
  TraceRecorder rec(kAdmmId, 0, p.n());
  const double initial_obj = objective(p, st.x, st.y);
  rec.record(initial_obj, constraint_violation(p, st.x, st.y));
  const RunGuard guard{kAdmmId, 1e3 * std::max(initial_obj, 1.0)};

  for (long t = 1; t <= opt.iters; ++t) {
    const DenseVector grad = full_gradient(p, st.x);
    const double eta_t = opt.sqrt_decay ? eta0 * std::sqrt(static_cast<double>(t)) : eta0;
    const DenseVector residual_prev = matvec(p.A, st.x) + matvec(p.B, st.y) - p.c;
    DenseVector x_new = x_update_linearized(p, eta_t, beta, st.x, grad, st.dual, residual_prev);
    const DenseVector ax_new = matvec(p.A, x_new);
    DenseVector y_new = y_update(p, beta, ax_new, st.dual);
    const DenseVector residual_new = ax_new + matvec(p.B, y_new) - p.c;
    st.dual = dual_update(beta, st.dual, residual_new);
    st.x = std::move(x_new);
    st.y = std::move(y_new);
    ++st.t;
    rec.charge_full_pass();
    const double obj = objective(p, st.x, st.y);
    const double viol = constraint_violation(p, st.x, st.y);
    guard.check(0, t, obj, viol);
    rec.record(obj, viol);
  }
  SolverOutput out{st.x, st.y, st.dual, {}};
  rec.record(objective(p, out.x, out.y), constraint_violation(p, out.x, out.y));
  out.trace = rec.take();
  return out;
}

}  // namespace avra

#endif
