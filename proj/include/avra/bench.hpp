#ifndef AVRA_BENCH_HPP
#define AVRA_BENCH_HPP

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "data_io.hpp"
#include "solvers.hpp"
#include "synthetic.hpp"
#include "version.hpp"

namespace avra {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  // instance
  std::string dataset;
  long dimension_override = 0;
  std::string synthetic;  // "gaussian" or empty
  long synthetic_n = 1000;
  long synthetic_d = 50;
  std::uint64_t synthetic_seed = 42;
  double synthetic_scale = 1.0;
  double synthetic_spread = 1.0;
  double synthetic_noise = 0.25;
  LossKind loss = LossKind::logistic;
  double nu = 1e-4;
  double graph_threshold = 0.5;

  // runs
  std::vector<std::string> solvers;
  std::vector<std::uint64_t> seeds;
  double max_passes = 20.0;
  std::string outdir = "bench-out";
  long threads = 0;

  // per-solver knobs; 0 means "derive"
  long asvrg_outer = 0;
  long asvrg_inner = 0;
  bool asvrg_linearize = true;
  double asvrg_w_cur_init = 2.0 / 3.0;
  double asvrg_w_snap_init = 0.1;
  bool asvrg_appendix_blend = false;
  long svrg_outer = 0;
  long svrg_inner = 0;
  bool svrg_linearize = true;
  double svrg_beta = 1.0;
  double svrg_eta = 0.0;
  double sadmm_beta = 1.0;
  double sadmm_eta0 = 0.0;
  double admm_beta = 1.0;
  double admm_eta = 0.0;
  long admm_iters = 0;
  bool admm_sqrt_decay = false;
};

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && (s[a] == ' ' || s[a] == '\t')) ++a;
  while (b > a && (s[b - 1] == ' ' || s[b - 1] == '\t' || s[b - 1] == '\r')) --b;
  return s.substr(a, b - a);
}

inline double to_double(const std::string& v, const std::string& key, long line) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("line " + std::to_string(line) + ": key '" + key +
                      "' expects a number, got '" + v + "'");
  }
}

inline long to_long(const std::string& v, const std::string& key, long line) {
  try {
    std::size_t used = 0;
    const long d = std::stol(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("line " + std::to_string(line) + ": key '" + key +
                      "' expects an integer, got '" + v + "'");
  }
}

inline bool to_bool(const std::string& v, const std::string& key, long line) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ConfigError("line " + std::to_string(line) + ": key '" + key +
                    "' expects true/false, got '" + v + "'");
}

inline std::vector<std::string> to_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok = trim(tok);
    if (!tok.empty()) out.push_back(tok);
  }
  return out;
}

}  // namespace detail

inline const std::vector<std::string>& known_solver_ids() {
  static const std::vector<std::string> ids{kAsvrgAdmmId, kSvrgAdmmId, kSadmmId, kAdmmId};
  return ids;
}

/// Flat key = value configuration; '#' starts a comment, lists are
/// comma-separated. Unknown and duplicate keys are errors.
inline RunConfig parse_config_text(const std::string& text) {
  RunConfig cfg;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string raw;
  long line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string entry = detail::trim(raw);
    if (entry.empty()) continue;
    const auto eq = entry.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line) + ": expected key = value");
    const std::string key = detail::trim(entry.substr(0, eq));
    const std::string value = detail::trim(entry.substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(line) + ": empty key");
    if (!seen.insert(key).second)
      throw ConfigError("line " + std::to_string(line) + ": duplicate key '" + key + "'");

    if (key == "dataset") cfg.dataset = value;
    else if (key == "dimension_override") cfg.dimension_override = detail::to_long(value, key, line);
    else if (key == "synthetic") cfg.synthetic = value;
    else if (key == "synthetic_n") cfg.synthetic_n = detail::to_long(value, key, line);
    else if (key == "synthetic_d") cfg.synthetic_d = detail::to_long(value, key, line);
    else if (key == "synthetic_seed")
      cfg.synthetic_seed = static_cast<std::uint64_t>(detail::to_long(value, key, line));
    else if (key == "synthetic_scale") cfg.synthetic_scale = detail::to_double(value, key, line);
    else if (key == "synthetic_spread") cfg.synthetic_spread = detail::to_double(value, key, line);
    else if (key == "synthetic_noise") cfg.synthetic_noise = detail::to_double(value, key, line);
    else if (key == "loss") {
      if (value == "logistic") cfg.loss = LossKind::logistic;
      else if (value == "squared") cfg.loss = LossKind::squared;
      else
        throw ConfigError("line " + std::to_string(line) + ": loss must be logistic or squared");
    } else if (key == "nu") cfg.nu = detail::to_double(value, key, line);
    else if (key == "graph_threshold") cfg.graph_threshold = detail::to_double(value, key, line);
    else if (key == "solvers") cfg.solvers = detail::to_list(value);
    else if (key == "seeds") {
      cfg.seeds.clear();
      for (const std::string& s : detail::to_list(value))
        cfg.seeds.push_back(static_cast<std::uint64_t>(detail::to_long(s, key, line)));
    } else if (key == "max_passes") cfg.max_passes = detail::to_double(value, key, line);
    else if (key == "outdir") cfg.outdir = value;
    else if (key == "threads") cfg.threads = detail::to_long(value, key, line);
    else if (key == "asvrg.outer") cfg.asvrg_outer = detail::to_long(value, key, line);
    else if (key == "asvrg.inner") cfg.asvrg_inner = detail::to_long(value, key, line);
    else if (key == "asvrg.linearize") cfg.asvrg_linearize = detail::to_bool(value, key, line);
    else if (key == "asvrg.w_cur_init") cfg.asvrg_w_cur_init = detail::to_double(value, key, line);
    else if (key == "asvrg.w_snap_init")
      cfg.asvrg_w_snap_init = detail::to_double(value, key, line);
    else if (key == "asvrg.appendix_blend")
      cfg.asvrg_appendix_blend = detail::to_bool(value, key, line);
    else if (key == "svrg.outer") cfg.svrg_outer = detail::to_long(value, key, line);
    else if (key == "svrg.inner") cfg.svrg_inner = detail::to_long(value, key, line);
    else if (key == "svrg.linearize") cfg.svrg_linearize = detail::to_bool(value, key, line);
    else if (key == "svrg.beta") cfg.svrg_beta = detail::to_double(value, key, line);
    else if (key == "svrg.eta") cfg.svrg_eta = detail::to_double(value, key, line);
    else if (key == "sadmm.beta") cfg.sadmm_beta = detail::to_double(value, key, line);
    else if (key == "sadmm.eta0") cfg.sadmm_eta0 = detail::to_double(value, key, line);
    else if (key == "admm.beta") cfg.admm_beta = detail::to_double(value, key, line);
    else if (key == "admm.eta") cfg.admm_eta = detail::to_double(value, key, line);
    else if (key == "admm.iters") cfg.admm_iters = detail::to_long(value, key, line);
    else if (key == "admm.sqrt_decay") cfg.admm_sqrt_decay = detail::to_bool(value, key, line);
    else
      throw ConfigError("line " + std::to_string(line) + ": unknown key '" + key + "'");
  }

  if (cfg.dataset.empty() == cfg.synthetic.empty())
    throw ConfigError("config must set exactly one of 'dataset' and 'synthetic'");
  if (!cfg.synthetic.empty() && cfg.synthetic != "gaussian")
    throw ConfigError("unknown synthetic instance '" + cfg.synthetic + "' (supported: gaussian)");
  if (cfg.solvers.empty()) throw ConfigError("config needs at least one solver");
  for (const std::string& s : cfg.solvers) {
    const auto& ids = known_solver_ids();
    if (std::find(ids.begin(), ids.end(), s) == ids.end())
      throw ConfigError("unknown solver '" + s +
                        "' (known: asvrg-admm, svrg-admm, sadmm, admm)");
  }
  if (cfg.seeds.empty()) throw ConfigError("config needs at least one seed");
  if (!(cfg.max_passes > 0.0)) throw ConfigError("max_passes must be positive");
  if (!(cfg.nu >= 0.0)) throw ConfigError("nu must be nonnegative");
  if (!(cfg.graph_threshold > 0.0 && cfg.graph_threshold < 1.0))
    throw ConfigError("graph_threshold must lie in (0,1)");
  return cfg;
}

struct BenchInstance {
  Problem problem;
  std::string kind;  // "dataset" or "synthetic"
  std::string path;
  std::uint64_t checksum = 0;
  long graph_edges = 0;
};

inline std::string read_file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline bool looks_like_cache(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  char magic[5] = {};
  in.read(magic, 5);
  return in && std::string(magic, 5) == "AVRA1";
}

inline Dataset load_dataset_any(const std::string& path, long dim_override = 0) {
  if (looks_like_cache(path)) return load_dataset_cache(path);
  return parse_libsvm_file(path, dim_override);
}

inline BenchInstance build_instance(const RunConfig& cfg) {
  BenchInstance inst;
  Dataset ds;
  if (!cfg.dataset.empty()) {
    const std::string bytes = read_file_bytes(cfg.dataset);
    inst.checksum = fnv1a64(bytes.data(), bytes.size());
    inst.kind = "dataset";
    inst.path = cfg.dataset;
    std::istringstream in(bytes);
    ds = looks_like_cache(cfg.dataset) ? load_dataset_cache(cfg.dataset)
                                       : parse_libsvm(in, cfg.dimension_override);
  } else {
    inst.kind = "synthetic";
    SyntheticSpec spec;
    spec.n = cfg.synthetic_n;
    spec.d = cfg.synthetic_d;
    spec.seed = cfg.synthetic_seed;
    spec.loss = cfg.loss;
    spec.feature_scale = cfg.synthetic_scale;
    spec.column_scale_spread = cfg.synthetic_spread;
    spec.noise = cfg.synthetic_noise;
    ds = make_synthetic_dataset(spec);
  }
  const FeatureGraph graph = build_feature_graph(ds, cfg.graph_threshold);
  inst.graph_edges = static_cast<long>(graph.edges.size());
  inst.problem = make_fused_lasso_problem(std::move(ds), cfg.loss, graph, cfg.nu);
  return inst;
}

inline long derive_outer_steps(const RunConfig& cfg, long configured) {
  if (configured > 0) return configured;
  // one full gradient plus m = n stochastic gradients per outer step
  return std::max<long>(1, std::lround(cfg.max_passes / 2.0));
}

inline SolverOutput execute_solver(const Problem& p, const RunConfig& cfg,
                                   const std::string& solver, std::uint64_t seed) {
  if (solver == kAsvrgAdmmId) {
    AsvrgOptions opt;
    opt.outer_steps = static_cast<int>(derive_outer_steps(cfg, cfg.asvrg_outer));
    opt.inner_steps = cfg.asvrg_inner;
    opt.linearize = cfg.asvrg_linearize;
    opt.w_cur_init = cfg.asvrg_w_cur_init;
    opt.w_snap_init = cfg.asvrg_w_snap_init;
    opt.appendix_output_blend = cfg.asvrg_appendix_blend;
    return run_asvrg_admm(p, opt, seed);
  }
  if (solver == kSvrgAdmmId) {
    SvrgAdmmOptions opt;
    opt.outer_steps = static_cast<int>(derive_outer_steps(cfg, cfg.svrg_outer));
    opt.inner_steps = cfg.svrg_inner;
    opt.linearize = cfg.svrg_linearize;
    opt.beta = cfg.svrg_beta;
    opt.eta = cfg.svrg_eta;
    return run_svrg_admm(p, opt, seed);
  }
  if (solver == kSadmmId) {
    SadmmOptions opt;
    opt.passes = cfg.max_passes;
    opt.beta = cfg.sadmm_beta;
    opt.eta0 = cfg.sadmm_eta0;
    return run_sadmm(p, opt, seed);
  }
  if (solver == kAdmmId) {
    DeterministicAdmmOptions opt;
    opt.iters = cfg.admm_iters > 0 ? cfg.admm_iters
                                   : static_cast<long>(std::floor(cfg.max_passes));
    opt.beta = cfg.admm_beta;
    opt.eta = cfg.admm_eta;
    opt.sqrt_decay = cfg.admm_sqrt_decay;
    return run_deterministic_admm(p, opt);
  }
  throw ConfigError("unknown solver '" + solver + "'");
}

// ---- serialization ----------------------------------------------------------

inline void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

inline std::string trace_csv_text(const std::vector<TraceRecord>& trace) {
  std::string out = "solver,seed,passes,objective,violation,seconds\n";
  for (const TraceRecord& r : trace) {
    out += r.solver;
    out += ',';
    out += std::to_string(r.seed);
    out += ',';
    out += format_double17(r.passes);
    out += ',';
    out += format_double17(r.objective);
    out += ',';
    out += format_double17(r.violation);
    // wall time lives in the manifest; the CSV stays bit-reproducible
    out += ",0\n";
  }
  return out;
}

struct AggregateRow {
  std::string solver;
  double passes;
  double objective;
  double violation;
};

/// Per solver: union of every recorded pass value across seeds, mean of the
/// last-observation-carried-forward objective and violation at each grid
/// point.
inline std::vector<AggregateRow> aggregate_traces(
    const std::vector<std::string>& solver_order,
    const std::map<std::string, std::vector<std::vector<TraceRecord>>>& by_solver) {
  std::vector<AggregateRow> rows;
  for (const std::string& solver : solver_order) {
    const auto it = by_solver.find(solver);
    if (it == by_solver.end() || it->second.empty()) continue;
    const auto& runs = it->second;
    std::vector<double> grid;
    for (const auto& run : runs)
      for (const TraceRecord& r : run) grid.push_back(r.passes);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    for (const double g : grid) {
      double obj = 0.0, viol = 0.0;
      for (const auto& run : runs) {
        std::size_t last = 0;
        for (std::size_t k = 0; k < run.size() && run[k].passes <= g; ++k) last = k;
        obj += run[last].objective;
        viol += run[last].violation;
      }
      const double count = static_cast<double>(runs.size());
      rows.push_back(AggregateRow{solver, g, obj / count, viol / count});
    }
  }
  return rows;
}

inline std::string aggregate_csv_text(const std::vector<AggregateRow>& rows) {
  std::string out = "solver,passes,objective,violation,seconds\n";
  for (const AggregateRow& r : rows)
    out += r.solver + ',' + format_double17(r.passes) + ',' + format_double17(r.objective) + ',' +
           format_double17(r.violation) + ",0\n";
  return out;
}

inline std::string solver_color(const std::string& id) {
  if (id == kAsvrgAdmmId) return "#d62728";
  if (id == kSvrgAdmmId) return "#1f77b4";
  if (id == kSadmmId) return "#2ca02c";
  if (id == kAdmmId) return "#7f7f7f";
  return "#8c564b";
}

inline std::string format_tick(double v) {
  char buf[48];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 4);
  return std::string(buf, res.ptr);
}

/// Static SVG: objective (log scale) against effective passes, one polyline
/// per solver. No timestamps or other non-reproducible content.
inline std::string render_svg(const std::vector<std::string>& solver_order,
                              const std::vector<AggregateRow>& rows, const std::string& title) {
  const double width = 860.0, height = 540.0;
  const double left = 80.0, right = 820.0, top = 50.0, bottom = 480.0;

  double xmax = 1.0, ymin = std::numeric_limits<double>::infinity(), ymax = 0.0;
  for (const AggregateRow& r : rows) {
    xmax = std::max(xmax, r.passes);
    if (r.objective > 0.0) {
      ymin = std::min(ymin, r.objective);
      ymax = std::max(ymax, r.objective);
    }
  }
  if (!(ymin < ymax)) {
    ymin = ymin == std::numeric_limits<double>::infinity() ? 1e-1 : ymin * 0.5;
    ymax = ymin * 10.0;
  }
  const double ly0 = std::log10(ymin), ly1 = std::log10(ymax);
  const auto xs = [&](double p) { return left + (right - left) * (p / xmax); };
  const auto ys = [&](double v) {
    const double l = std::log10(std::max(v, 1e-300));
    return bottom - (bottom - top) * ((l - ly0) / std::max(ly1 - ly0, 1e-12));
  };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + format_tick(width) +
         "\" height=\"" + format_tick(height) + "\" viewBox=\"0 0 860 540\">\n";
  svg += "<rect width=\"860\" height=\"540\" fill=\"white\"/>\n";
  svg += "<text x=\"430\" y=\"28\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"16\">" + title + "</text>\n";
  svg += "<line x1=\"80\" y1=\"480\" x2=\"820\" y2=\"480\" stroke=\"black\"/>\n";
  svg += "<line x1=\"80\" y1=\"50\" x2=\"80\" y2=\"480\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 5; ++k) {
    const double p = xmax * k / 5.0;
    svg += "<line x1=\"" + format_tick(xs(p)) + "\" y1=\"480\" x2=\"" + format_tick(xs(p)) +
           "\" y2=\"485\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + format_tick(xs(p)) +
           "\" y=\"500\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" +
           format_tick(p) + "</text>\n";
    const double lv = ly0 + (ly1 - ly0) * k / 5.0;
    const double v = std::pow(10.0, lv);
    svg += "<line x1=\"75\" y1=\"" + format_tick(ys(v)) + "\" x2=\"80\" y2=\"" +
           format_tick(ys(v)) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"70\" y=\"" + format_tick(ys(v) + 4.0) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" + format_tick(v) +
           "</text>\n";
  }
  svg += "<text x=\"450\" y=\"525\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\">effective passes</text>\n";
  svg += "<text x=\"24\" y=\"265\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\" transform=\"rotate(-90 24 265)\">objective</text>\n";

  double legend_y = 60.0;
  for (const std::string& solver : solver_order) {
    std::string points;
    for (const AggregateRow& r : rows) {
      if (r.solver != solver || !(r.objective > 0.0)) continue;
      points += format_tick(xs(r.passes)) + "," + format_tick(ys(r.objective)) + " ";
    }
    if (points.empty()) continue;
    svg += "<polyline fill=\"none\" stroke=\"" + solver_color(solver) +
           "\" stroke-width=\"1.8\" points=\"" + points + "\"/>\n";
    svg += "<line x1=\"700\" y1=\"" + format_tick(legend_y) + "\" x2=\"730\" y2=\"" +
           format_tick(legend_y) + "\" stroke=\"" + solver_color(solver) +
           "\" stroke-width=\"3\"/>\n";
    svg += "<text x=\"736\" y=\"" + format_tick(legend_y + 4.0) +
           "\" font-family=\"sans-serif\" font-size=\"12\">" + solver + "</text>\n";
    legend_y += 18.0;
  }
  svg += "</svg>\n";
  return svg;
}

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return std::string(buf, 16);
}

// ---- benchmark driver ---------------------------------------------------------

struct BenchResult {
  std::filesystem::path outdir;
  std::vector<std::filesystem::path> trace_files;
  std::filesystem::path aggregate_file;
  std::filesystem::path plot_file;
  std::filesystem::path manifest_file;
  long diverged = 0;
};

inline BenchResult run_benchmark(const std::string& config_text,
                                 const std::string& outdir_override = "") {
  const RunConfig cfg = parse_config_text(config_text);
  const BenchInstance inst = build_instance(cfg);
  const Problem& p = inst.problem;

  const std::filesystem::path outdir = outdir_override.empty() ? cfg.outdir : outdir_override;
  std::filesystem::create_directories(outdir);

  struct Job {
    std::string solver;
    std::uint64_t seed;
  };
  struct JobResult {
    std::string status = "ok";
    std::string error;
    std::vector<TraceRecord> trace;
    double wall_seconds = 0.0;
  };
  std::vector<Job> jobs;
  for (const std::string& s : cfg.solvers)
    for (const std::uint64_t seed : cfg.seeds) jobs.push_back(Job{s, seed});
  std::vector<JobResult> results(jobs.size());

  const long hw = static_cast<long>(std::max(1u, std::thread::hardware_concurrency()));
  const long pool = std::max<long>(1, cfg.threads > 0 ? cfg.threads : hw);
  std::atomic<std::size_t> cursor{0};
  const auto worker = [&]() {
    while (true) {
      const std::size_t k = cursor.fetch_add(1);
      if (k >= jobs.size()) return;
      const auto t0 = std::chrono::steady_clock::now();
      try {
        SolverOutput out = execute_solver(p, cfg, jobs[k].solver, jobs[k].seed);
        results[k].trace = std::move(out.trace);
      } catch (const DivergenceError& e) {
        results[k].status = "diverged";
        results[k].error = e.what();
      }
      results[k].wall_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
  };
  {
    std::vector<std::thread> threads;
    for (long t = 1; t < pool; ++t) threads.emplace_back(worker);
    worker();
    for (auto& th : threads) th.join();
  }

  BenchResult res;
  res.outdir = outdir;
  std::map<std::string, std::vector<std::vector<TraceRecord>>> by_solver;
  nlohmann::ordered_json runs_json = nlohmann::ordered_json::array();
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    const std::string file = "trace-" + jobs[k].solver + "-seed" + std::to_string(jobs[k].seed) +
                             ".csv";
    const std::filesystem::path path = outdir / file;
    write_file_atomic(path, trace_csv_text(results[k].trace));
    res.trace_files.push_back(path);
    nlohmann::ordered_json rj;
    rj["solver"] = jobs[k].solver;
    rj["seed"] = jobs[k].seed;
    rj["file"] = file;
    rj["status"] = results[k].status;
    if (!results[k].error.empty()) rj["error"] = results[k].error;
    rj["wall_seconds"] = results[k].wall_seconds;
    runs_json.push_back(rj);
    if (results[k].status == "ok")
      by_solver[jobs[k].solver].push_back(results[k].trace);
    else
      ++res.diverged;
  }

  const std::vector<AggregateRow> agg = aggregate_traces(cfg.solvers, by_solver);
  res.aggregate_file = outdir / "aggregate.csv";
  write_file_atomic(res.aggregate_file, aggregate_csv_text(agg));
  res.plot_file = outdir / "plot.svg";
  const std::string title = inst.kind == "dataset"
                                ? std::filesystem::path(inst.path).filename().string()
                                : ("synthetic " + cfg.synthetic);
  write_file_atomic(res.plot_file, render_svg(cfg.solvers, agg, title));

  nlohmann::ordered_json man;
  man["library"] = "avra";
  man["version"] = version();
  man["config_hash"] = "fnv1a64:" + hex64(fnv1a64(config_text.data(), config_text.size()));
  man["config_text"] = config_text;
  nlohmann::ordered_json inst_json;
  inst_json["kind"] = inst.kind;
  if (inst.kind == "dataset") {
    inst_json["path"] = inst.path;
    inst_json["checksum"] = "fnv1a64:" + hex64(inst.checksum);
  } else {
    inst_json["generator"] = cfg.synthetic;
    inst_json["seed"] = cfg.synthetic_seed;
  }
  inst_json["instances"] = p.n();
  inst_json["attributes"] = p.dim();
  inst_json["feature_nonzeros"] = static_cast<long>(p.data.features.nonZeros());
  inst_json["graph_edges"] = inst.graph_edges;
  inst_json["penalty_rows"] = p.constraint_rows();
  inst_json["loss"] = loss_name(p.loss);
  inst_json["nu"] = cfg.nu;
  inst_json["graph_threshold"] = cfg.graph_threshold;
  inst_json["lipschitz_mean"] = p.lipschitz_mean;
  inst_json["lipschitz_max"] = p.lipschitz_max;
  man["instance"] = inst_json;
  nlohmann::ordered_json resolved;
  for (const std::string& s : cfg.solvers) {
    nlohmann::ordered_json o;
    if (s == kAsvrgAdmmId) {
      o["outer"] = derive_outer_steps(cfg, cfg.asvrg_outer);
      o["inner"] = cfg.asvrg_inner > 0 ? cfg.asvrg_inner : p.n();
      o["linearize"] = cfg.asvrg_linearize;
      o["w_cur_init"] = cfg.asvrg_w_cur_init;
      o["w_snap_init"] = cfg.asvrg_w_snap_init;
    } else if (s == kSvrgAdmmId) {
      SvrgAdmmOptions tmp;
      tmp.linearize = cfg.svrg_linearize;
      tmp.beta = cfg.svrg_beta;
      tmp.eta = cfg.svrg_eta;
      o["outer"] = derive_outer_steps(cfg, cfg.svrg_outer);
      o["inner"] = cfg.svrg_inner > 0 ? cfg.svrg_inner : p.n();
      o["linearize"] = cfg.svrg_linearize;
      o["beta"] = cfg.svrg_beta;
      o["eta"] = resolve_svrg_eta(p, tmp);
    } else if (s == kSadmmId) {
      o["beta"] = cfg.sadmm_beta;
      o["eta0"] = cfg.sadmm_eta0 > 0.0 ? cfg.sadmm_eta0
                                       : p.lipschitz_max + cfg.sadmm_beta * p.a_norm_sq;
      o["passes"] = cfg.max_passes;
    } else if (s == kAdmmId) {
      o["beta"] = cfg.admm_beta;
      o["eta"] = cfg.admm_eta > 0.0 ? cfg.admm_eta
                                    : p.lipschitz_mean + cfg.admm_beta * p.a_norm_sq;
      o["iters"] = cfg.admm_iters > 0 ? cfg.admm_iters
                                      : static_cast<long>(std::floor(cfg.max_passes));
      o["sqrt_decay"] = cfg.admm_sqrt_decay;
    }
    resolved[s] = o;
  }
  man["solver_options"] = resolved;
  man["seeds"] = cfg.seeds;
  man["solvers"] = cfg.solvers;
  man["runs"] = runs_json;
  nlohmann::ordered_json outputs;
  outputs["aggregate"] = "aggregate.csv";
  outputs["plot"] = "plot.svg";
  man["outputs"] = outputs;
  res.manifest_file = outdir / "manifest.json";
  write_file_atomic(res.manifest_file, man.dump(2) + "\n");
  return res;
}

inline BenchResult run_benchmark_file(const std::string& config_path,
                                      const std::string& outdir_override = "") {
  return run_benchmark(read_file_bytes(config_path), outdir_override);
}

/// Reruns the exact configuration embedded in a manifest. CSV outputs are
/// byte-identical to the original run.
inline BenchResult replay_manifest(const std::string& manifest_path,
                                   const std::string& outdir_override) {
  const nlohmann::json man = nlohmann::json::parse(read_file_bytes(manifest_path));
  if (!man.contains("config_text"))
    throw std::runtime_error("manifest has no embedded config: " + manifest_path);
  return run_benchmark(man["config_text"].get<std::string>(), outdir_override);
}

// ---- dataset inspection ---------------------------------------------------------

struct DatasetSummary {
  long instances = 0;
  long attributes = 0;
  long nonzeros = 0;
  double lf_squared = 0.0;   // lambda_max((1/n) sum w w^T)
  double lf_logistic = 0.0;  // same with the 1/4 curvature factor
};

inline DatasetSummary summarize_dataset(const Dataset& ds) {
  DatasetSummary s;
  s.instances = ds.n();
  s.attributes = ds.dim();
  s.nonzeros = static_cast<long>(ds.features.nonZeros());
  const double base =
      spectral_norm_sq(ds.features, 1e-10, 200000) / static_cast<double>(ds.n());
  s.lf_squared = base;
  s.lf_logistic = base / 4.0;
  return s;
}

inline DatasetSummary inspect_dataset(const std::string& path, long dim_override = 0) {
  return summarize_dataset(load_dataset_any(path, dim_override));
}

inline std::string format_summary(const DatasetSummary& s) {
  std::string out;
  out += "instances      " + std::to_string(s.instances) + "\n";
  out += "attributes     " + std::to_string(s.attributes) + "\n";
  out += "nonzeros       " + std::to_string(s.nonzeros) + "\n";
  out += "L_f (squared)  " + format_double17(s.lf_squared) + "\n";
  out += "L_f (logistic) " + format_double17(s.lf_logistic) + "\n";
  return out;
}

}  // namespace avra

#endif
