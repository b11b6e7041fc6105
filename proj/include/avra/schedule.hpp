#ifndef AVRA_SCHEDULE_HPP
#define AVRA_SCHEDULE_HPP

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "problem.hpp"

namespace avra {

/// Convex weights of the momentum combinations: aggregate point, current
/// iterate, snapshot point. Always positive with sum 1.
struct MomentumWeights {
  double agg;
  double cur;
  double snap;
};

inline void validate_weights(const MomentumWeights& w, const char* what) {
  const bool open_unit = w.agg > 0.0 && w.agg < 1.0 && w.cur > 0.0 && w.cur < 1.0 &&
                         w.snap > 0.0 && w.snap < 1.0;
  if (!open_unit || std::abs(w.agg + w.cur + w.snap - 1.0) > 1e-12)
    throw std::invalid_argument(std::string(what) +
                                ": weights must lie in (0,1) and sum to 1, got (" +
                                std::to_string(w.agg) + ", " + std::to_string(w.cur) + ", " +
                                std::to_string(w.snap) + ")");
}

/// One step of the weight recursion:
///   cur'  = (sqrt(cur^4 + 4 cur^2) - cur^2) / 2
///   agg'  = agg * (1 - cur')
///   snap' = (1 - agg) * (1 - cur')
/// The new triple again lies in the open simplex; cur decreases, snap grows.
inline MomentumWeights advance_weights(const MomentumWeights& w) {
  validate_weights(w, "advance_weights");
  const double c2 = w.cur * w.cur;
  const double cur_next = (std::sqrt(c2 * c2 + 4.0 * c2) - c2) / 2.0;
  return MomentumWeights{w.agg * (1.0 - cur_next), cur_next, (1.0 - w.agg) * (1.0 - cur_next)};
}

/// Per-outer-iteration parameter bundle.
struct WeightSchedule {
  int s = 1;  // outer index, 1-based
  MomentumWeights w{0.0, 1.0, 0.0};
  double theta = 0.0;  // penalty weight on the constraint quadratic
  double rho = 0.0;    // dual ascent step
  double eta = 0.0;    // proximal weight of the x subproblem
  double beta1 = 0.0;  // penalty scale (theta = beta1 * cur)
  double beta2 = 0.0;  // dual scale (rho = beta2 / cur)
  double lipschitz = 0.0;  // smoothness bound backing eta
  bool linearize = true;   // replace the quadratic penalty by its linearization in the x step
  long inner_steps = 1;    // m
  int outer_steps = 1;     // N
};

struct ScheduleConfig {
  int outer_steps = 10;        // N
  long inner_steps = 1;        // m
  bool linearize = true;
  double w_cur_init = 2.0 / 3.0;
  double w_snap_init = 0.1;
};

/// Schedules for s = 1..N+1 with beta1 = N, beta2 = 1/N and the smoothness
/// bound L_Q / snap_weight(1) + L_f fixed across all s. The extra (N+1)-th
/// entry carries the weights used by the output combination.
inline std::vector<WeightSchedule> make_schedule(const Problem& p, const ScheduleConfig& cfg) {
  if (cfg.outer_steps < 1) throw std::invalid_argument("make_schedule: need at least one outer step");
  if (cfg.inner_steps < 1) throw std::invalid_argument("make_schedule: need at least one inner step");
  if (!(cfg.w_cur_init > 0.0) || cfg.w_cur_init > 2.0 / 3.0)
    throw std::invalid_argument("make_schedule: initial current-iterate weight must lie in (0, 2/3]");
  if (!(cfg.w_snap_init > 0.0) || !(cfg.w_snap_init < 1.0 / 3.0))
    throw std::invalid_argument("make_schedule: initial snapshot weight must lie in (0, 1/3)");

  const int n_outer = cfg.outer_steps;
  const double beta1 = static_cast<double>(n_outer);
  const double beta2 = 1.0 / static_cast<double>(n_outer);
  const double lipschitz = p.lipschitz_max / cfg.w_snap_init + p.lipschitz_mean;
  const double eta_scale = lipschitz + (cfg.linearize ? beta1 * p.a_norm_sq : 0.0);

  MomentumWeights w{1.0 - cfg.w_cur_init - cfg.w_snap_init, cfg.w_cur_init, cfg.w_snap_init};
  validate_weights(w, "make_schedule");

  std::vector<WeightSchedule> out;
  out.reserve(static_cast<std::size_t>(n_outer) + 1);
  for (int s = 1; s <= n_outer + 1; ++s) {
    WeightSchedule ws;
    ws.s = s;
    ws.w = w;
    ws.theta = beta1 * w.cur;
    ws.rho = beta2 / w.cur;
    ws.eta = eta_scale * w.cur;
    ws.beta1 = beta1;
    ws.beta2 = beta2;
    ws.lipschitz = lipschitz;
    ws.linearize = cfg.linearize;
    ws.inner_steps = cfg.inner_steps;
    ws.outer_steps = n_outer;
    out.push_back(ws);
    w = advance_weights(w);
  }
  return out;
}

/// Constant schedule with all weight on the current iterate; theta = rho.
/// This is the plain variance-reduced regime without momentum.
inline WeightSchedule pinned_schedule(double beta, double eta, bool linearize, long inner_steps,
                                      int outer_steps) {
  if (!(beta > 0.0)) throw std::invalid_argument("pinned_schedule: beta must be positive");
  if (!(eta > 0.0)) throw std::invalid_argument("pinned_schedule: eta must be positive");
  WeightSchedule ws;
  ws.w = MomentumWeights{0.0, 1.0, 0.0};
  ws.theta = beta;
  ws.rho = beta;
  ws.eta = eta;
  ws.beta1 = beta;
  ws.beta2 = beta;
  ws.lipschitz = eta;
  ws.linearize = linearize;
  ws.inner_steps = inner_steps;
  ws.outer_steps = outer_steps;
  return ws;
}

}  // namespace avra

#endif
