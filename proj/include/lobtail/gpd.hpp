#pragma once

// Generalized Pareto distribution: F(x) = 1 - (1 + gamma (x-mu)/sigma)^(-1/gamma).
// gamma > 0 is the heavy-tailed side. All fitters take excesses over the
// threshold and report mu = 0.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "lobtail/core.hpp"

namespace lobtail {

double gpd_cdf(double x, const GpdParams& p);
double gpd_pdf(double x, const GpdParams& p);
double gpd_quantile(double q, const GpdParams& p);  // q in (0,1)
std::vector<double> gpd_sample(const GpdParams& p, std::size_t n, std::uint64_t seed);

double gpd_loglik(std::span<const double> excesses, double gamma, double sigma);

// Profile MLE in theta = gamma/sigma. Covariance is over (gamma, sigma).
FitResult fit_gpd_mle(std::span<const double> excesses);

// Inverse observed information at (gamma, sigma); nullopt if singular.
std::optional<SymMatrix> gpd_observed_covariance(std::span<const double> excesses, double gamma,
                                                 double sigma);
// Asymptotic covariance of the MLE, valid for gamma > -1/2.
SymMatrix gpd_asymptotic_covariance(double gamma, double sigma, std::size_t j);

FitResult fit_gpd_mom(std::span<const double> excesses);

FitResult fit_gpd_pickands(std::span<const double> excesses);

struct EpmOptions {
  double start_percentile = 0.5;
  double eta = 0.0;
  double zeta = 1.0;
  std::size_t max_pairs = 2'000'000;  // pairs are thinned above this
  std::uint64_t seed = 0x9d2c5680u;
};

FitResult fit_gpd_epm(std::span<const double> excesses, const EpmOptions& opts = {});

struct EpmPair {
  double gamma;  // system convention (heavy tail > 0)
  double sigma;
};

// One EPM pair on ascending-sorted data; ranks are 1-based with i < j.
// nullopt when the pair is inadmissible or the root cannot be bracketed.
std::optional<EpmPair> epm_pair(std::span<const double> sorted, std::size_t i, std::size_t j,
                                double eta, double zeta);

}  // namespace lobtail
