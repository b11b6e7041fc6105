#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "avra/bench.hpp"
#include "avra/verify.hpp"
#include "avra/version.hpp"

int main(int argc, char** argv) {
  CLI::App app{"avra: accelerated variance-reduced ADMM benchmark harness"};
  app.set_version_flag("--version", std::string(AVRA_VERSION));
  app.require_subcommand(1);

  std::string config_path;
  CLI::App* run = app.add_subcommand("run", "run a benchmark described by a config file");
  run->add_option("--config", config_path, "path to the config file")->required();

  std::uint64_t seed = 12345;
  bool corrupt_schedule = false;
  CLI::App* verify = app.add_subcommand("verify", "run the executable check suite");
  verify->add_option("--seed", seed, "seed for the randomized checks");
  verify
      ->add_flag("--corrupt-schedule", corrupt_schedule,
                 "test hook: inject a broken weight recursion")
      ->group("");

  std::string dataset_path;
  long dim_override = 0;
  CLI::App* inspect = app.add_subcommand("inspect", "print dataset shape and smoothness constants");
  inspect->add_option("dataset", dataset_path, "LIBSVM text file or AVRA1 cache")->required();
  inspect->add_option("--dimension", dim_override, "explicit attribute count override");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      const avra::BenchResult res = avra::run_benchmark_file(config_path);
      std::cout << "wrote " << res.trace_files.size() << " trace files, aggregate, plot and "
                << "manifest under " << res.outdir.string() << "\n";
      if (res.diverged > 0)
        std::cout << res.diverged << " run(s) diverged; see manifest for details\n";
      return 0;
    }
    if (*verify) {
      const auto reports = avra::run_verification_suite(seed, corrupt_schedule);
      bool all_pass = true;
      for (const auto& r : reports) {
        std::cout << avra::format_report(r) << "\n";
        all_pass = all_pass && r.pass;
      }
      std::cout << (all_pass ? "all checks passed\n" : "some checks FAILED\n");
      return all_pass ? 0 : 1;
    }
    if (*inspect) {
      std::cout << avra::format_summary(avra::inspect_dataset(dataset_path, dim_override));
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
