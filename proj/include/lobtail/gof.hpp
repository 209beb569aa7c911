#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "lobtail/core.hpp"

namespace lobtail {

using Cdf = std::function<double(double)>;

struct KsResult {
  double statistic = 0.0;
  double pvalue = 1.0;
};

// One-sample KS against `cdf`. Throws if the cdf decreases on the sorted data.
KsResult ks_statistic(std::span<const double> data, const Cdf& cdf);

// Asymptotic Kolmogorov survival function P(K > t).
double kolmogorov_sf(double t);

// CDF of a fitted model (GPD fits are evaluated on excesses).
Cdf fitted_cdf(const FitResult& fit);

struct PercentileRow {
  double p;
  double empirical_quantile;
  double model_cdf;
};

std::vector<double> default_probes();  // 0.1 .. 0.9, 0.95, 0.99

std::vector<PercentileRow> percentile_comparison(std::span<const double> data, const Cdf& cdf,
                                                 std::span<const double> probes);

struct KsSubsampleResult {
  double pvalue_full = 0.0;
  double pvalue_sub_mean = 0.0;
  std::vector<double> pvalue_sub;  // per replicate
};

// Full-sample KS p-value vs the mean over seeded subsamples drawn without
// replacement.
KsSubsampleResult ks_subsample_study(std::span<const double> data, const FitResult& fit,
                                     std::size_t subsample_n, std::size_t replicates,
                                     std::uint64_t seed);

}  // namespace lobtail
