#include "lobtail/gpd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "numeric.hpp"

namespace lobtail {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLn2 = std::numbers::ln2;
constexpr double kExpEps = 1e-12;  // |gamma| below this uses the exponential branch

void require_excesses(std::span<const double> y, std::size_t min_n, const char* who) {
  require(y.size() >= min_n, std::string(who) + ": need at least " + std::to_string(min_n) +
                                 " excesses");
  for (double v : y) {
    require(v > 0.0 && std::isfinite(v), std::string(who) + ": excesses must be positive");
  }
}

FitResult make_fit(Method m, std::size_t n) {
  FitResult f;
  f.family = Family::Gpd;
  f.method = m;
  f.sample_size = n;
  return f;
}

}  // namespace

double gpd_cdf(double x, const GpdParams& p) {
  validate(p);
  const double z = (x - p.mu) / p.sigma;
  if (!(z > 0.0)) return 0.0;
  if (std::fabs(p.gamma) < kExpEps) return -std::expm1(-z);
  const double gz = p.gamma * z;
  if (!(gz > -1.0)) return 1.0;
  return -std::expm1(-std::log1p(gz) / p.gamma);
}

double gpd_pdf(double x, const GpdParams& p) {
  validate(p);
  const double z = (x - p.mu) / p.sigma;
  if (z < 0.0) return 0.0;
  if (std::fabs(p.gamma) < kExpEps) return std::exp(-z) / p.sigma;
  const double gz = p.gamma * z;
  if (!(gz > -1.0)) return 0.0;
  return std::exp(-(1.0 / p.gamma + 1.0) * std::log1p(gz)) / p.sigma;
}

double gpd_quantile(double q, const GpdParams& p) {
  require(q > 0.0 && q < 1.0, "gpd_quantile: q must be in (0,1)");
  validate(p);
  const double e = -std::log1p(-q);  // Exp(1) quantile
  if (std::fabs(p.gamma) < kExpEps) return p.mu + p.sigma * e;
  return p.mu + p.sigma * std::expm1(p.gamma * e) / p.gamma;
}

std::vector<double> gpd_sample(const GpdParams& p, std::size_t n, std::uint64_t seed) {
  validate(p);
  Rng rng(seed);
  std::vector<double> out(n);
  for (auto& x : out) x = gpd_quantile(rng.uniform(), p);
  return out;
}

double gpd_loglik(std::span<const double> y, double gamma, double sigma) {
  if (!(sigma > 0.0)) return -kInf;
  const double ls = std::log(sigma);
  double ll = 0.0;
  if (std::fabs(gamma) < kExpEps) {
    for (double v : y) ll += -ls - v / sigma;
    return ll;
  }
  for (double v : y) {
    const double gz = gamma * v / sigma;
    if (!(gz > -1.0)) return -kInf;
    ll += -ls - (1.0 / gamma + 1.0) * std::log1p(gz);
  }
  return ll;
}

// ---------------------------------------------------------------------------
// MLE
// ---------------------------------------------------------------------------

namespace {

// gamma(theta) = mean(log(1 + theta y)); sigma(theta) = gamma / theta.
struct Profile {
  double gamma;
  double sigma;
};

Profile profile_at(std::span<const double> y, double theta, double ybar) {
  double s = 0.0;
  for (double v : y) s += std::log1p(theta * v);
  const double g = s / static_cast<double>(y.size());
  if (theta == 0.0) return {0.0, ybar};
  return {g, g / theta};
}

double neg_profile_loglik(std::span<const double> y, double theta, double ybar) {
  const Profile pr = profile_at(y, theta, ybar);
  if (!std::isfinite(pr.gamma) || pr.gamma < -1.0 || !(pr.sigma > 0.0)) return kInf;
  return static_cast<double>(y.size()) * (std::log(pr.sigma) + pr.gamma + 1.0);
}

SymMatrix observed_information(std::span<const double> y, double g, double sigma) {
  // Second derivatives of -loglik in (gamma, sigma).
  double l = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  for (double v : y) {
    const double z = v / sigma;
    const double t = 1.0 + g * z;
    l += std::log(t);
    s1 += z / t;
    s2 += z * z / (t * t);
    s3 += z / (t * t);
  }
  const double j = static_cast<double>(y.size());
  SymMatrix info(2);
  info(0, 0) = -(-2.0 * l / (g * g * g) + 2.0 * s1 / (g * g) + (1.0 + 1.0 / g) * s2);
  info(0, 1) = info(1, 0) = -(-s1 / (g * sigma) + (1.0 + 1.0 / g) * s3 / sigma);
  info(1, 1) = -(j / (sigma * sigma) - (g + 1.0) * s1 / (sigma * sigma) -
                 (g + 1.0) * s3 / (sigma * sigma));
  return info;
}

}  // namespace

std::optional<SymMatrix> gpd_observed_covariance(std::span<const double> y, double gamma,
                                                 double sigma) {
  SymMatrix info(2);
  if (std::fabs(gamma) < 1e-4) {
    // The closed form has removable 1/gamma singularities; average across 0.
    const SymMatrix a = observed_information(y, 1e-4, sigma);
    const SymMatrix b = observed_information(y, -1e-4, sigma);
    for (std::size_t k = 0; k < 4; ++k) info.data[k] = 0.5 * (a.data[k] + b.data[k]);
  } else {
    info = observed_information(y, gamma, sigma);
  }
  return num::invert_spd(info);
}

SymMatrix gpd_asymptotic_covariance(double gamma, double sigma, std::size_t j) {
  require(gamma > -0.5, "asymptotic covariance needs gamma > -1/2");
  const double a = 1.0 + gamma;
  const double inv_j = 1.0 / static_cast<double>(j);
  SymMatrix c(2);
  c(0, 0) = inv_j * a * a;
  c(0, 1) = c(1, 0) = -inv_j * a * sigma;
  c(1, 1) = inv_j * 2.0 * a * sigma * sigma;
  return c;
}

FitResult fit_gpd_mle(std::span<const double> y) {
  require_excesses(y, 5, "fit_gpd_mle");
  double ybar = 0.0, ymax = 0.0;
  for (double v : y) {
    ybar += v;
    ymax = std::max(ymax, v);
  }
  ybar /= static_cast<double>(y.size());

  // theta must keep 1 + theta y > 0 for all y.
  const double theta_min = -(1.0 - 1e-9) / ymax;
  std::vector<double> grid;
  for (double w = 1.0; w > 1e-7; w *= 0.7) grid.push_back(theta_min * w);
  grid.push_back(theta_min * (1.0 - 1e-4));
  grid.push_back(theta_min * (1.0 - 1e-2));
  grid.push_back(0.0);
  for (int k = -40; k <= 40; ++k) grid.push_back(std::pow(2.0, 0.5 * k) / ybar);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  const num::Min1D best = num::grid_then_golden(
      [&](double th) { return neg_profile_loglik(y, th, ybar); }, grid, 1e-13);
  if (!std::isfinite(best.fx)) fail(ErrorCode::Numeric, "fit_gpd_mle: profile undefined");

  const Profile pr = profile_at(y, best.x, ybar);
  FitResult fit = make_fit(Method::Mle, y.size());
  fit.params = GpdParams{pr.gamma, pr.sigma, 0.0};
  const bool at_lower = best.x <= grid.front() * (1.0 - 1e-6) || pr.gamma <= -1.0 + 1e-6;
  const bool at_upper = best.x >= grid.back() * (1.0 - 1e-6);
  fit.converged = !at_lower && !at_upper;
  if (!fit.converged) fit.notes.push_back("profile maximum on the search boundary");
  if (auto cov = gpd_observed_covariance(y, pr.gamma, pr.sigma)) {
    fit.covariance = std::move(*cov);
  } else {
    fit.notes.push_back("observed information not positive definite");
  }
  return fit;
}

// ---------------------------------------------------------------------------
// Method of moments
// ---------------------------------------------------------------------------

FitResult fit_gpd_mom(std::span<const double> y) {
  require_excesses(y, 2, "fit_gpd_mom");
  double m = 0.0;
  for (double v : y) m += v;
  m /= static_cast<double>(y.size());
  double s2 = 0.0;
  for (double v : y) s2 += (v - m) * (v - m);
  s2 /= static_cast<double>(y.size() - 1);
  if (!(s2 > 0.0)) fail(ErrorCode::Domain, "fit_gpd_mom: zero sample variance");
  const double ratio = m * m / s2;
  FitResult fit = make_fit(Method::Mom, y.size());
  const double g = 0.5 * (1.0 - ratio);
  fit.params = GpdParams{g, 0.5 * m * (1.0 + ratio), 0.0};
  fit.converged = true;
  if (g >= 0.25) fit.notes.push_back("shape >= 1/4: population variance of the estimator undefined");
  return fit;
}

// ---------------------------------------------------------------------------
// Pickands and EPM
//
// Both follow the percentile-matching CDF 1 - (1 - k x/sigma)^(1/k) with
// ascending order statistics, so internally k = -gamma. Results are negated
// on the way out.
// ---------------------------------------------------------------------------

FitResult fit_gpd_pickands(std::span<const double> y) {
  require_excesses(y, 4, "fit_gpd_pickands");
  std::vector<double> s(y.begin(), y.end());
  std::sort(s.begin(), s.end());
  const std::size_t j = s.size();
  const double a = s[j / 2 - 1];
  const double b = s[(3 * j) / 4 - 1];
  const double r = (b - a) / a;
  if (!(r > 0.0) || !std::isfinite(r)) {
    fail(ErrorCode::Domain, "estimator undefined for this sample");
  }
  const double k = -std::log(r) / kLn2;
  // sigma = k a^2 / (2a - b), written to stay finite as r -> 1.
  const double sigma = std::fabs(r - 1.0) < 1e-12 ? a / kLn2 : a * (-std::log(r)) / ((1.0 - r) * kLn2);
  FitResult fit = make_fit(Method::Pickands, y.size());
  fit.params = GpdParams{-k, sigma, 0.0};
  fit.converged = true;
  return fit;
}

std::optional<EpmPair> epm_pair(std::span<const double> s, std::size_t i, std::size_t j,
                                double eta, double zeta) {
  const std::size_t n = s.size();
  if (!(i >= 1 && i < j && j <= n)) return std::nullopt;
  const double xi = s[i - 1], xj = s[j - 1];
  if (!(xi < xj) || !(xi > 0.0)) return std::nullopt;
  const double pi_ = (static_cast<double>(i) - eta) / (static_cast<double>(n) + zeta);
  const double pj_ = (static_cast<double>(j) - eta) / (static_cast<double>(n) + zeta);
  if (!(pi_ > 0.0 && pj_ < 1.0)) return std::nullopt;
  const double ci = std::log1p(-pi_), cj = std::log1p(-pj_);

  const double d = cj * xi - ci * xj;
  if (d == 0.0) return EpmPair{0.0, -xi / ci};

  // Solve in r = x_(j)/delta, which is scale-free: r in (0,1) for a bounded
  // support (d < 0), r < 0 for a heavy tail (d > 0). h -> +inf at the far end
  // of each branch and h ~ r d / x_(j) < 0 next to r = 0.
  const double rho = xi / xj;
  auto h = [&](double r) { return ci * std::log1p(-r) - cj * std::log1p(-r * rho); };
  const double sgn = d < 0 ? 1.0 : -1.0;
  double near = 0.5 * sgn, far = d < 0 ? 1.0 : -1.0;
  double f_near = h(near);
  for (int it = 0; it < 1100 && !(f_near < 0.0); ++it) {
    near *= 0.5;
    f_near = h(near);
  }
  if (!(f_near < 0.0)) return std::nullopt;
  if (d > 0) {
    for (int it = 0; it < 1000 && !(h(far) > 0.0); ++it) far *= 2.0;
  }
  if (!(h(far) > 0.0)) return std::nullopt;
  double lo = near, hi = far;  // h(lo) < 0 < h(hi)
  for (int it = 0; it < 2000; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    const double fm = h(mid);
    if (std::isnan(fm)) return std::nullopt;
    if (fm < 0.0) {
      lo = mid;
    } else if (fm > 0.0) {
      hi = mid;
    } else {
      lo = hi = mid;
    }
  }
  const double r = 0.5 * (lo + hi);
  const double k = std::log1p(-r * rho) / ci;
  const double sigma = k * xj / r;
  if (!std::isfinite(k) || !(sigma > 0.0)) return std::nullopt;
  return EpmPair{-k, sigma};
}

FitResult fit_gpd_epm(std::span<const double> y, const EpmOptions& opts) {
  require_excesses(y, 4, "fit_gpd_epm");
  require(opts.start_percentile >= 0.0 && opts.start_percentile < 1.0,
          "fit_gpd_epm: start percentile must be in [0,1)");
  std::vector<double> s(y.begin(), y.end());
  std::sort(s.begin(), s.end());
  const std::size_t n = s.size();

  std::vector<std::size_t> ranks;
  for (std::size_t r = 1; r <= n; ++r) {
    const double p = (static_cast<double>(r) - opts.eta) / (static_cast<double>(n) + opts.zeta);
    if (p > opts.start_percentile && p > 0.0 && p < 1.0) ranks.push_back(r);
  }
  const std::size_t m = ranks.size();
  const double total_pairs = 0.5 * static_cast<double>(m) * static_cast<double>(m > 0 ? m - 1 : 0);
  if (total_pairs < 1.0) fail(ErrorCode::Domain, "fit_gpd_epm: no admissible pairs");

  std::vector<double> ks, sigmas;
  std::size_t dropped = 0, skipped_ties = 0;
  auto visit = [&](std::size_t i, std::size_t j) {
    if (!(s[i - 1] < s[j - 1])) {
      ++skipped_ties;
      return;
    }
    if (auto pr = epm_pair(s, i, j, opts.eta, opts.zeta)) {
      ks.push_back(pr->gamma);
      sigmas.push_back(pr->sigma);
    } else {
      ++dropped;
    }
  };

  FitResult fit = make_fit(Method::Epm, n);
  if (total_pairs <= static_cast<double>(opts.max_pairs)) {
    ks.reserve(static_cast<std::size_t>(total_pairs));
    sigmas.reserve(static_cast<std::size_t>(total_pairs));
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = a + 1; b < m; ++b) visit(ranks[a], ranks[b]);
    }
  } else {
    Rng rng(opts.seed);
    for (std::size_t t = 0; t < opts.max_pairs; ++t) {
      std::size_t a = rng.below(m), b = rng.below(m - 1);
      if (b >= a) ++b;
      if (a > b) std::swap(a, b);
      visit(ranks[a], ranks[b]);
    }
    fit.notes.push_back("pairs thinned to " + std::to_string(opts.max_pairs));
  }
  if (ks.empty()) fail(ErrorCode::Domain, "fit_gpd_epm: no admissible pairs");
  if (dropped > 0) fit.notes.push_back(std::to_string(dropped) + " pairs dropped (no root)");
  if (skipped_ties > 0) fit.notes.push_back(std::to_string(skipped_ties) + " tied pairs skipped");

  fit.params = GpdParams{num::median(std::move(ks)), num::median(std::move(sigmas)), 0.0};
  fit.converged = true;
  return fit;
}

}  // namespace lobtail
