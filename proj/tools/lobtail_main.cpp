// lobtail command-line driver. Talks to the library through the C API only.

#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "lobtail/lobtail.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFatal = 1;
constexpr int kExitUsage = 2;

int report_failure(lt_status s) {
  std::fprintf(stderr, "lobtail: %s: %s\n", lt_status_name(s), lt_last_error());
  return (s == LT_ERR_CONFIG || s == LT_ERR_INVALID_ARGUMENT) ? kExitUsage : kExitFatal;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heavy-tail analytics for limit order book volume profiles"};
  app.set_version_flag("--version", std::string(lt_version()));
  app.require_subcommand(1);

  std::string config_path, days;
  unsigned jobs = 0;
  auto* run = app.add_subcommand("run", "Run the per-day fitting pipeline");
  run->add_option("--config", config_path, "Run configuration (JSON)")->required();
  run->add_option("--days", days, "Trading days to process, A..B (YYYY-MM-DD)");
  run->add_option("--jobs", jobs, "Worker threads (default: config value)");

  std::string study, out_dir = "simstudy_out";
  std::uint64_t seed = 0;
  std::size_t replicates = 0;
  unsigned study_jobs = 0;
  auto* sim = app.add_subcommand("simstudy", "Run a synthetic estimator study");
  sim->add_option("name", study, "gev_compare | gpd_compare | ks_case")->required();
  auto* seed_opt = sim->add_option("--seed", seed, "Master seed");
  auto* reps_opt = sim->add_option("--replicates", replicates, "Replicates per case");
  sim->add_option("--out", out_dir, "Output directory");
  sim->add_option("--jobs", study_jobs, "Worker threads (0: all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  if (run->parsed()) {
    int exit_code = kExitFatal;
    const lt_status s =
        lt_run_pipeline(config_path.c_str(), days.empty() ? nullptr : days.c_str(), jobs, &exit_code);
    if (s != LT_OK) return report_failure(s);
    if (exit_code != 0) {
      std::fprintf(stderr, "lobtail: run finished with errors: %s\n", lt_last_error());
    }
    return exit_code;
  }

  lt_simstudy_options opts{};
  opts.seed = seed;
  opts.has_seed = seed_opt->count() > 0;
  opts.replicates = replicates;
  opts.has_replicates = reps_opt->count() > 0;
  opts.out_dir = out_dir.c_str();
  opts.jobs = study_jobs;
  int all_passed = 0;
  const lt_status s = lt_run_simstudy(study.c_str(), &opts, &all_passed);
  if (s != LT_OK) return report_failure(s);
  std::printf("%s: anchors %s (see %s)\n", study.c_str(), all_passed ? "passed" : "FAILED",
              out_dir.c_str());
  return kExitOk;
}
