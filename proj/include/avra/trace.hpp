#ifndef AVRA_TRACE_HPP
#define AVRA_TRACE_HPP

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace avra {

/// One benchmark sample. Pass counts are fractional (a stochastic gradient
/// costs 1/n of a pass, a full gradient costs one pass). The seconds field
/// is measured wall time; it is informational and excluded from every
/// determinism contract.
struct TraceRecord {
  std::string solver;
  std::uint64_t seed = 0;
  double passes = 0.0;
  double objective = 0.0;
  double violation = 0.0;
  double seconds = 0.0;
};

// 17 significant digits: round-trip exact decimal form used by every
// serialized artifact (CSV traces, witnesses).
inline std::string format_double17(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

/// Collects trace records with strictly increasing pass counts. A record
/// arriving at the pass count of the previous one replaces it.
class TraceRecorder {
 public:
  TraceRecorder(std::string solver, std::uint64_t seed, long samples)
      : solver_(std::move(solver)),
        seed_(seed),
        samples_(samples),
        start_(std::chrono::steady_clock::now()) {}

  void charge_full_pass() { passes_ += 1.0; }
  void charge_stochastic_gradient() { passes_ += 1.0 / static_cast<double>(samples_); }

  double passes() const { return passes_; }

  bool at_pass_boundary() const {
    return trace_.empty() || std::floor(passes_) > std::floor(trace_.back().passes);
  }

  void record(double objective, double violation) {
    TraceRecord r;
    r.solver = solver_;
    r.seed = seed_;
    r.passes = passes_;
    r.objective = objective;
    r.violation = violation;
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    if (!trace_.empty() && trace_.back().passes == r.passes)
      trace_.back() = r;
    else
      trace_.push_back(r);
  }

  const std::vector<TraceRecord>& trace() const { return trace_; }
  std::vector<TraceRecord> take() { return std::move(trace_); }

 private:
  std::string solver_;
  std::uint64_t seed_;
  long samples_;
  double passes_ = 0.0;
  std::chrono::steady_clock::time_point start_;
  std::vector<TraceRecord> trace_;
};

}  // namespace avra

#endif
