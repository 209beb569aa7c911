#pragma once

// Alpha-stable distributions in the S_alpha(beta, gamma, delta; 0)
// parameterization and McCulloch's quantile estimator.

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "lobtail/core.hpp"

namespace lobtail {

std::complex<double> stable_cf(double theta, const StableParams& p);

// Integral representation with adaptive Gauss-Kronrod quadrature.
// Absolute accuracy about 1e-8; throws Error{Numeric} otherwise.
double stable_cdf(double x, const StableParams& p);

// Quantile by root finding on stable_cdf. q in (0,1).
double stable_quantile(double q, const StableParams& p);

// Chambers-Mallows-Stuck generator.
std::vector<double> stable_sample(const StableParams& p, std::size_t n, std::uint64_t seed);

// Linear interpolation of order statistics at plotting positions
// (i - 0.5)/n; probabilities outside [0.5/n, 1 - 0.5/n] clamp.
double sample_quantile(std::span<const double> data, double prob);
// Same, for data already sorted ascending.
double sorted_quantile(std::span<const double> sorted, double prob);

struct McCullochOptions {
  bool iqr_scaling = false;  // fit on x / IQR and back-transform
  bool refine = true;        // polish the table inversion on exact quantiles
};

// Requires n >= 20. Throws Error{Domain, "degenerate scale"} on zero IQR.
FitResult fit_mcculloch(std::span<const double> data, const McCullochOptions& opts = {});

namespace mcculloch {

// Bilinear lookups in the published tables. `interior` is cleared when the
// query had to be clamped to the table boundary.
double alpha_from_nu(double nu_alpha, double nu_beta, bool* interior = nullptr);
double beta_from_nu(double nu_alpha, double nu_beta, bool* interior = nullptr);
double nu_c(double alpha, double beta, bool* interior = nullptr);
double nu_zeta(double alpha, double beta, bool* interior = nullptr);

inline constexpr double kNuAlphaMin = 2.439;
inline constexpr double kNuAlphaMax = 25.0;
inline constexpr double kAlphaMin = 0.5;

}  // namespace mcculloch

}  // namespace lobtail
