#pragma once

// Seeded estimator-comparison studies on synthetic data.

#include <cstdint>
#include <string>
#include <vector>

#include "lobtail/core.hpp"

namespace lobtail {

// Summary of one (case, method, parameter) over all replicates.
struct StudyRow {
  std::string scenario;  // e.g. "gamma=0.2,n=50"
  std::string method;
  std::string param;
  double truth = 0.0;
  std::size_t replicates = 0;
  std::size_t failures = 0;
  double mean = 0.0;
  double bias = 0.0;
  double variance = 0.0;
  double median = 0.0;
  double sd = 0.0;
};

struct AnchorCheck {
  std::string name;
  std::string claim;
  bool passed = false;
  std::string detail;
};

struct StudyResult {
  std::string study;
  std::uint64_t seed = 0;
  std::vector<StudyRow> rows;
  std::vector<AnchorCheck> anchors;
};

struct GevStudyConfig {
  std::vector<double> gammas = {-0.3, 0.0, 0.2, 0.5};
  double mu = 0.0;
  double sigma = 1.0;
  std::vector<std::size_t> sample_sizes = {50, 10000};
  std::size_t replicates = 20;
  std::uint64_t seed = 2010;
  unsigned jobs = 0;  // 0: hardware concurrency
};

StudyResult gev_method_comparison(const GevStudyConfig& cfg);

struct GpdStudyConfig {
  std::vector<double> gammas = {-0.3, 0.0, 0.2, 0.5};
  double sigma = 1.0;
  std::size_t n = 500;
  std::size_t replicates = 20;
  std::vector<double> epm_start_percentiles = {0.0, 0.5, 0.75};
  std::uint64_t seed = 2010;
  unsigned jobs = 0;
};

StudyResult gpd_method_comparison(const GpdStudyConfig& cfg);

struct KsStudyConfig {
  StableParams params{1.6, 0.5, 20.0, 100.0};
  std::size_t n_full = 3888;
  std::size_t n_sub = 200;
  std::size_t replicates = 20;      // synthetic "days" per scenario
  std::size_t sub_replicates = 20;  // subsamples per day
  double level = 0.10;
  double contamination = 0.03;  // share of values replaced by the atom
  std::uint64_t seed = 2010;
  unsigned jobs = 0;
};

// Scenarios: well_specified, rounded (integer volumes), contaminated (an atom
// at delta + gamma carrying `contamination` of the mass). Rows report
// rejection rates and mean p-values.
StudyResult ks_case_study(const KsStudyConfig& cfg);

}  // namespace lobtail
