#pragma once

// Generalized extreme value distribution: H(x) = exp(-(1 + gamma (x-mu)/sigma)^(-1/gamma)).

#include <cstdint>
#include <span>
#include <vector>

#include "lobtail/core.hpp"

namespace lobtail {

double gev_cdf(double x, const GevParams& p);
double gev_pdf(double x, const GevParams& p);
double gev_quantile(double q, const GevParams& p);  // q in (0,1)
std::vector<double> gev_sample(const GevParams& p, std::size_t n, std::uint64_t seed);

// Sum of log densities; -inf when any point lies outside the support.
double gev_loglik(std::span<const double> data, const GevParams& p);

struct LMoments {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double lambda3 = 0.0;
  double tau3 = 0.0;
};

// Unbiased sample L-moments from order statistics. n >= 3.
LMoments sample_lmoments(std::span<const double> data);

// r-th sample L-moment, n >= r >= 1.
double sample_lmoment(std::span<const double> data, int r);

// tau3 of a GEV with shape gamma.
double gev_tau3(double gamma);

FitResult fit_gev_lmom(std::span<const double> data);

struct GevMleOptions {
  double gamma_lo = -1.0;
  double gamma_hi = 5.0;
};
FitResult fit_gev_mle(std::span<const double> data, const GevMleOptions& opts = {});

struct GevMixedOptions {
  double gamma_lo = -0.5;
  double gamma_hi = 0.5;
};
FitResult fit_gev_mixed(std::span<const double> data, const GevMixedOptions& opts = {});

// Profile pieces of the mixed estimator, exposed for testing.
namespace gev_profile {

// (mu, sigma) implied by the L-moment constraints at shape gamma.
GevParams constrained_params(const LMoments& lm, double gamma);

// Profile log-likelihood and its analytic derivative in gamma.
double loglik(std::span<const double> data, const LMoments& lm, double gamma);
double dloglik(std::span<const double> data, const LMoments& lm, double gamma);

}  // namespace gev_profile

}  // namespace lobtail
