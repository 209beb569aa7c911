#include "lobtail/gev.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/special_functions/digamma.hpp>

#include "numeric.hpp"

namespace lobtail {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLn2 = std::numbers::ln2;
constexpr double kEulerGamma = std::numbers::egamma;
// Below this |gamma| the Gumbel limit is used in closed-form expressions.
constexpr double kGumbelEps = 1e-10;

// gamma / (2^gamma - 1), continuous at 0.
double r_gamma(double g) {
  if (std::fabs(g) < kGumbelEps) return 1.0 / kLn2;
  return g / std::expm1(g * kLn2);
}

// (1 - Gamma(1 - g)) / g, continuous at 0 with limit -Euler gamma.
double c_gamma(double g) {
  if (std::fabs(g) < kGumbelEps) return -kEulerGamma;
  return -std::expm1(std::lgamma(1.0 - g)) / g;
}

double mean_of(std::span<const double> d) {
  double s = 0.0;
  for (double v : d) s += v;
  return s / static_cast<double>(d.size());
}

double sd_of(std::span<const double> d, double m) {
  double s = 0.0;
  for (double v : d) s += (v - m) * (v - m);
  return std::sqrt(s / static_cast<double>(d.size() - 1));
}

}  // namespace

double gev_cdf(double x, const GevParams& p) {
  validate(p);
  const double z = (x - p.mu) / p.sigma;
  if (std::fabs(p.gamma) < kGumbelEps) return std::exp(-std::exp(-z));
  const double gz = p.gamma * z;
  if (!(gz > -1.0)) return p.gamma > 0 ? 0.0 : 1.0;
  return std::exp(-std::exp(-std::log1p(gz) / p.gamma));
}

double gev_pdf(double x, const GevParams& p) {
  validate(p);
  const double z = (x - p.mu) / p.sigma;
  if (std::fabs(p.gamma) < kGumbelEps) return std::exp(-z - std::exp(-z)) / p.sigma;
  const double gz = p.gamma * z;
  if (!(gz > -1.0)) return 0.0;
  const double lt = std::log1p(gz);
  return std::exp(-(1.0 + 1.0 / p.gamma) * lt - std::exp(-lt / p.gamma)) / p.sigma;
}

double gev_quantile(double q, const GevParams& p) {
  require(q > 0.0 && q < 1.0, "gev_quantile: q must be in (0,1)");
  validate(p);
  const double y = -std::log(-std::log(q));  // Gumbel quantile
  if (std::fabs(p.gamma) < kGumbelEps) return p.mu + p.sigma * y;
  return p.mu + p.sigma * std::expm1(p.gamma * y) / p.gamma;
}

std::vector<double> gev_sample(const GevParams& p, std::size_t n, std::uint64_t seed) {
  validate(p);
  Rng rng(seed);
  std::vector<double> out(n);
  for (auto& x : out) x = gev_quantile(rng.uniform(), p);
  return out;
}

double gev_loglik(std::span<const double> data, const GevParams& p) {
  if (!(p.sigma > 0.0) || !std::isfinite(p.sigma) || !std::isfinite(p.mu) ||
      !std::isfinite(p.gamma)) {
    return -kInf;
  }
  const double ls = std::log(p.sigma);
  double ll = 0.0;
  if (std::fabs(p.gamma) < kGumbelEps) {
    for (double x : data) {
      const double z = (x - p.mu) / p.sigma;
      ll += -ls - z - std::exp(-z);
    }
    return ll;
  }
  const double a = 1.0 + 1.0 / p.gamma;
  for (double x : data) {
    const double gz = p.gamma * (x - p.mu) / p.sigma;
    if (!(gz > -1.0)) return -kInf;
    const double lt = std::log1p(gz);
    ll += -ls - a * lt - std::exp(-lt / p.gamma);
  }
  return ll;
}

// ---------------------------------------------------------------------------
// L-moments
// ---------------------------------------------------------------------------

namespace {

// Unbiased probability-weighted moments b_0..b_{r-1} of sorted data.
std::vector<double> pwm(std::span<const double> s, int r) {
  const std::size_t n = s.size();
  std::vector<double> b(static_cast<std::size_t>(r), 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    // weight_k = C(i, k) / C(n-1, k) for 0-based rank i.
    double w = 1.0;
    for (int k = 0; k < r; ++k) {
      if (k > 0) {
        w *= static_cast<double>(i) - (k - 1);
        w /= static_cast<double>(n - 1) - (k - 1);
      }
      if (w == 0.0) break;
      b[static_cast<std::size_t>(k)] += w * s[i];
    }
  }
  for (double& v : b) v /= static_cast<double>(n);
  return b;
}

double binom(int n, int k) {
  double c = 1.0;
  for (int j = 1; j <= k; ++j) c = c * (n - k + j) / j;
  return c;
}

}  // namespace

double sample_lmoment(std::span<const double> data, int r) {
  require(r >= 1, "sample_lmoment: r must be >= 1");
  require(data.size() >= static_cast<std::size_t>(r), "sample_lmoment: need n >= r");
  std::vector<double> s(data.begin(), data.end());
  std::sort(s.begin(), s.end());
  const std::vector<double> b = pwm(s, r);
  // lambda_r = sum_k (-1)^(r-1-k) C(r-1, k) C(r-1+k, k) b_k
  double lam = 0.0;
  for (int k = 0; k < r; ++k) {
    const double sign = ((r - 1 - k) % 2 == 0) ? 1.0 : -1.0;
    lam += sign * binom(r - 1, k) * binom(r - 1 + k, k) * b[static_cast<std::size_t>(k)];
  }
  return lam;
}

LMoments sample_lmoments(std::span<const double> data) {
  require(data.size() >= 3, "sample_lmoments: need n >= 3");
  std::vector<double> s(data.begin(), data.end());
  std::sort(s.begin(), s.end());
  const std::vector<double> b = pwm(s, 3);
  LMoments lm;
  lm.lambda1 = b[0];
  lm.lambda2 = 2.0 * b[1] - b[0];
  lm.lambda3 = 6.0 * b[2] - 6.0 * b[1] + b[0];
  if (!(lm.lambda2 > 0.0)) fail(ErrorCode::Domain, "degenerate sample: lambda2 = 0");
  lm.tau3 = lm.lambda3 / lm.lambda2;
  return lm;
}

double gev_tau3(double gamma) {
  if (std::fabs(gamma) < kGumbelEps) return 2.0 * std::log(3.0) / kLn2 - 3.0;
  return 2.0 * std::expm1(gamma * std::log(3.0)) / std::expm1(gamma * kLn2) - 3.0;
}

namespace gev_profile {

GevParams constrained_params(const LMoments& lm, double gamma) {
  const double sigma = lm.lambda2 * r_gamma(gamma) / std::exp(std::lgamma(1.0 - gamma));
  return {lm.lambda1 + sigma * c_gamma(gamma), sigma, gamma};
}

double loglik(std::span<const double> data, const LMoments& lm, double gamma) {
  // Removable singularity at 0: switch to the Gumbel likelihood.
  const double g = std::fabs(gamma) < 1e-4 ? 0.0 : gamma;
  return gev_loglik(data, constrained_params(lm, g));
}

double dloglik(std::span<const double> data, const LMoments& lm, double g) {
  const GevParams p = constrained_params(lm, g);
  const double psi = boost::math::digamma(1.0 - g);
  const double gam = std::exp(std::lgamma(1.0 - g));
  const double two_g = std::exp(g * kLn2);
  const double dlog_sigma = 1.0 / g - two_g * kLn2 / (two_g - 1.0) + psi;
  const double dsigma = p.sigma * dlog_sigma;
  const double dmu = dsigma * (1.0 - gam) / g + p.sigma * (gam * psi / g - (1.0 - gam) / (g * g));
  const double k = static_cast<double>(data.size());
  double sum_lt = 0.0, sum_dt_t = 0.0, sum_tail = 0.0;
  for (double x : data) {
    const double s = (x - p.mu) / p.sigma;
    const double ds = -dmu / p.sigma - s * dsigma / p.sigma;
    const double t = 1.0 + g * s;
    if (!(t > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    const double dt = s + g * ds;
    const double lt = std::log(t);
    sum_lt += lt;
    sum_dt_t += dt / t;
    sum_tail += std::exp(-lt / g) * (lt / (g * g) - dt / (g * t));
  }
  return -k * dlog_sigma + sum_lt / (g * g) - (1.0 + 1.0 / g) * sum_dt_t - sum_tail;
}

}  // namespace gev_profile

// ---------------------------------------------------------------------------
// Estimators
// ---------------------------------------------------------------------------

FitResult fit_gev_lmom(std::span<const double> data) {
  require(data.size() >= 10, "fit_gev_lmom: need at least 10 observations");
  const LMoments lm = sample_lmoments(data);
  FitResult fit;
  fit.family = Family::Gev;
  fit.method = Method::LMoments;
  fit.sample_size = data.size();

  const double lo = -1.0, hi = 1.0;
  const double tlo = gev_tau3(lo), thi = gev_tau3(hi);
  if (!(lm.tau3 >= tlo && lm.tau3 <= thi)) {
    fail(ErrorCode::Domain, "fit_gev_lmom: tau3 = " + std::to_string(lm.tau3) +
                                " outside the solvable range");
  }
  const double g = num::bisect([&](double x) { return gev_tau3(x) - lm.tau3; }, lo, hi, 1e-15);
  fit.params = gev_profile::constrained_params(lm, g);
  fit.converged = std::fabs(g - lo) > 1e-9 && std::fabs(g - hi) > 1e-9;
  if (!fit.converged) fit.notes.push_back("shape estimate at bracket boundary");
  return fit;
}

FitResult fit_gev_mixed(std::span<const double> data, const GevMixedOptions& opts) {
  require(data.size() >= 10, "fit_gev_mixed: need at least 10 observations");
  require(opts.gamma_lo < opts.gamma_hi, "fit_gev_mixed: empty gamma bracket");
  const LMoments lm = sample_lmoments(data);
  auto neg = [&](double g) { return -gev_profile::loglik(data, lm, g); };

  std::vector<double> grid(101);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid[i] = opts.gamma_lo + (opts.gamma_hi - opts.gamma_lo) * static_cast<double>(i) / 100.0;
  }
  const num::Min1D best = num::grid_then_golden(neg, grid, 1e-12);
  if (!std::isfinite(best.fx)) {
    fail(ErrorCode::Domain, "fit_gev_mixed: profile likelihood undefined on the whole bracket");
  }
  const double g = std::fabs(best.x) < 1e-4 ? 0.0 : best.x;

  FitResult fit;
  fit.family = Family::Gev;
  fit.method = Method::MixedLMoments;
  fit.sample_size = data.size();
  fit.params = gev_profile::constrained_params(lm, g);
  const double edge = 1e-6 * (opts.gamma_hi - opts.gamma_lo);
  fit.converged = g - opts.gamma_lo > edge && opts.gamma_hi - g > edge;
  if (!fit.converged) fit.notes.push_back("shape estimate at bracket boundary");
  return fit;
}

FitResult fit_gev_mle(std::span<const double> data, const GevMleOptions& opts) {
  require(data.size() >= 20, "fit_gev_mle: need at least 20 observations");
  require(opts.gamma_lo < opts.gamma_hi, "fit_gev_mle: empty gamma bracket");

  // Optimize on standardized data so finite-difference steps are well scaled.
  const double m = mean_of(data);
  const double s = sd_of(data, m);
  if (!(s > 0.0)) fail(ErrorCode::Domain, "fit_gev_mle: constant data");
  std::vector<double> z(data.size());
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = (data[i] - m) / s;

  auto objective = [&](std::span<const double> v) {
    if (v[2] < opts.gamma_lo || v[2] > opts.gamma_hi) return kInf;
    const double ll = gev_loglik(z, {v[0], std::exp(v[1]), v[2]});
    return std::isfinite(ll) ? -ll : kInf;
  };

  std::vector<std::vector<double>> starts;
  std::vector<std::string> notes;
  try {
    const FitResult lmf = fit_gev_lmom(z);
    const auto& p = std::get<GevParams>(lmf.params);
    starts.push_back({p.mu, std::log(p.sigma), std::clamp(p.gamma, opts.gamma_lo, opts.gamma_hi)});
  } catch (const Error& e) {
    notes.push_back(std::string("L-moment start unavailable: ") + e.what());
  }
  // Gumbel moment matching on the standardized scale.
  const double sg = std::sqrt(6.0) / std::numbers::pi;
  for (double g0 : {0.0, 0.1, -0.1}) {
    if (g0 < opts.gamma_lo || g0 > opts.gamma_hi) continue;
    starts.push_back({-kEulerGamma * sg, std::log(sg), g0});
  }

  num::BfgsResult best;
  best.fx = kInf;
  for (const auto& x0 : starts) {
    const double f0 = objective(x0);
    if (!std::isfinite(f0)) continue;
    num::BfgsResult r = num::bfgs(objective, x0, 1e-8, 1000);
    if (r.fx < best.fx) best = std::move(r);
  }
  if (!std::isfinite(best.fx)) fail(ErrorCode::Domain, "fit_gev_mle: every start violates the support");

  FitResult fit;
  fit.family = Family::Gev;
  fit.method = Method::Mle;
  fit.sample_size = data.size();
  const double sig_z = std::exp(best.x[1]);
  fit.params = GevParams{m + s * best.x[0], s * sig_z, best.x[2]};
  fit.converged = best.converged;
  fit.notes = std::move(notes);
  if (!best.converged) fit.notes.push_back("optimizer did not converge; best point returned");
  const double edge = 1e-6 * (opts.gamma_hi - opts.gamma_lo);
  if (best.x[2] - opts.gamma_lo < edge || opts.gamma_hi - best.x[2] < edge) {
    fit.notes.push_back("shape estimate at bound");
  }

  // Observed information in (mu, sigma, gamma) on the standardized scale.
  auto nll_plain = [&](std::span<const double> v) {
    const double ll = gev_loglik(z, {v[0], v[1], v[2]});
    return std::isfinite(ll) ? -ll : kInf;
  };
  const std::vector<double> at = {best.x[0], sig_z, best.x[2]};
  const SymMatrix h = num::fd_hessian(nll_plain, at);
  bool finite = true;
  for (double v : h.data) finite = finite && std::isfinite(v);
  if (finite) {
    if (auto inv = num::invert_spd(h)) {
      const double d[3] = {s, s, 1.0};
      for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) (*inv)(i, j) *= d[i] * d[j];
      }
      fit.covariance = std::move(*inv);
    }
  }
  if (!fit.covariance) fit.notes.push_back("observed information not positive definite");
  return fit;
}

}  // namespace lobtail
