#include "lobtail/stable.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <optional>
#include <string>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/tools/roots.hpp>

#include "numeric.hpp"

namespace lobtail {

namespace {

using std::numbers::pi;
constexpr double kHalfPi = pi / 2.0;
constexpr double kInf = std::numeric_limits<double>::infinity();

double sgn(double v) { return (v > 0) - (v < 0); }

std::string fmt_err(double e) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", e);
  return buf;
}

// Integral of exp(-exp(log_g(t))) over [a, b], where log_g is monotone.
// The integrand falls from ~1 to ~0 across a band of log_g values that can be
// extremely narrow in t, so the interval is cut at fixed log_g levels and the
// part where exp(-g) is below 1e-17 is dropped.
template <class LogG>
double integrate_exp_neg_g(LogG log_g, double a, double b) {
  if (!(b > a)) return 0.0;
  auto integrand = [&](double t) {
    const double lg = log_g(t);
    if (std::isnan(lg)) return 0.0;
    if (lg > 700.0) return 0.0;
    return std::exp(-std::exp(lg));
  };
  const double span = b - a;
  const double ea = a + 1e-12 * span, eb = b - 1e-12 * span;
  const double la = log_g(ea), lb = log_g(eb);
  const bool increasing = lb > la;
  // exp(-exp(3.7)) < 1e-17: beyond the last level the integrand is dropped.
  constexpr double kLevels[] = {-4.0, -2.0, -1.0, 0.0, 1.0, 2.0, 3.7};
  auto crossing = [&](double level) {
    double lo = ea, hi = eb;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * span; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double lm = log_g(mid);
      if ((lm < level) == increasing) lo = mid; else hi = mid;
    }
    return 0.5 * (lo + hi);
  };
  double lo_end = a, hi_end = b;
  std::vector<double> cuts;
  for (double level : kLevels) {
    const bool straddles = (la < level) != (lb < level) && !std::isnan(la) && !std::isnan(lb);
    if (!straddles) continue;
    const double t = crossing(level);
    if (level == kLevels[std::size(kLevels) - 1]) {
      (increasing ? hi_end : lo_end) = t;
    } else {
      cuts.push_back(t);
    }
  }
  if (std::min(la, lb) >= kLevels[std::size(kLevels) - 1]) return 0.0;
  cuts.push_back(lo_end);
  cuts.push_back(hi_end);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  double total = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    if (cuts[k] < lo_end || cuts[k + 1] > hi_end) continue;
    // tanh-sinh absorbs the algebraic endpoint behaviour of the integrand
    // (a power 1/(alpha - 1) of the distance to pi/2).
    thread_local boost::math::quadrature::tanh_sinh<double> quad;
    double err = 0.0;
    // The two-argument form sidesteps an endpoint assertion in Boost's
    // one-argument mapping; the complement distance is not needed here.
    const double v = quad.integrate([&](double t, double) { return integrand(t); }, cuts[k],
                                    cuts[k + 1], 1e-10, &err);
    if (!(err <= 1e-8)) {
      fail(ErrorCode::Numeric,
           "stable_cdf: quadrature did not converge (error estimate " + fmt_err(err) + ")");
    }
    total += v;
  }
  return total;
}

// P(Z <= z) for Z ~ S(alpha, beta, 1, 0; 0) when z > zeta, alpha != 1.
double cdf_right_of_zeta(double z, double alpha, double beta) {
  const double tpa = std::tan(kHalfPi * alpha);
  const double zeta = -beta * tpa;
  const double theta0 = std::atan(beta * tpa) / alpha;
  const double am1 = alpha - 1.0;
  const double lead = alpha / am1 * std::log(z - zeta) + std::log(std::cos(alpha * theta0)) / am1;
  auto log_g = [&](double t) {
    const double c = std::cos(t);
    return lead + alpha / am1 * (std::log(c) - std::log(std::sin(alpha * (theta0 + t)))) +
           std::log(std::cos(alpha * theta0 + am1 * t)) - std::log(c);
  };
  const double integral = integrate_exp_neg_g(log_g, -theta0, kHalfPi);
  const double c1 = alpha < 1.0 ? (kHalfPi - theta0) / pi : 1.0;
  return c1 + sgn(1.0 - alpha) / pi * integral;
}

// alpha = 1, beta > 0.
double cdf_alpha_one(double z, double beta) {
  const double shift = -pi * z / (2.0 * beta);
  auto log_g = [&](double t) {
    const double u = kHalfPi + beta * t;
    return shift + std::log(2.0 / pi) + std::log(u) - std::log(std::cos(t)) +
           u * std::tan(t) / beta;
  };
  return integrate_exp_neg_g(log_g, -kHalfPi, kHalfPi) / pi;
}

// P(Z > x) for the standard S1 law and large x > 0 from the tail series
// (1/pi) sum_k (-1)^(k+1) Gamma(alpha k) / k! (1 + beta^2 tan^2(pi alpha/2))^(k/2)
// sin(k alpha (pi/2 + theta0)) x^(-alpha k). Convergent for alpha < 1 and
// asymptotic above. nullopt unless a term bound drops below 1e-15 before
// the terms start growing.
std::optional<double> upper_tail_series(double x, double alpha, double beta) {
  const double tpa = std::tan(kHalfPi * alpha);
  const double theta0 = std::atan(beta * tpa) / alpha;
  const double log_r = 0.5 * std::log1p(beta * beta * tpa * tpa) - alpha * std::log(x);
  double sum = 0.0, prev_bound = kInf;
  for (int k = 1; k <= 60; ++k) {
    const double bound =
        std::exp(std::lgamma(alpha * k) - std::lgamma(k + 1.0) + k * log_r) / pi;
    if (bound < 1e-15) return sum;
    if (bound > prev_bound) return std::nullopt;
    sum += ((k % 2) ? 1.0 : -1.0) * bound * std::sin(k * alpha * (kHalfPi + theta0));
    prev_bound = bound;
  }
  return std::nullopt;
}

// Below this distance from zeta the quadrature is used; beyond it the
// integrand's mass shrinks towards an endpoint faster than double
// resolution allows.
constexpr double kTailSeriesFrom = 1e3;
// alpha = 1 has no usable series; the leading term (1 + beta)/(pi z) is
// within ln(z)/z^2 < 2e-9 of the truth here.
constexpr double kCauchyTailFrom = 1e5;

double cdf_standard(double z, double alpha, double beta) {
  if (alpha == 1.0) {
    if (beta == 0.0) return 0.5 + std::atan(z) / pi;
    if (z >= kCauchyTailFrom) return 1.0 - (1.0 + beta) / (pi * z);
    if (z <= -kCauchyTailFrom) return (1.0 - beta) / (pi * -z);
    if (beta < 0.0) return 1.0 - cdf_alpha_one(-z, -beta);
    return cdf_alpha_one(z, beta);
  }
  const double tpa = std::tan(kHalfPi * alpha);
  const double zeta = -beta * tpa;
  const double theta0 = std::atan(beta * tpa) / alpha;
  const double gap = z - zeta;
  if (std::fabs(gap) <= 1e-14 * std::max(1.0, std::fabs(zeta))) return (kHalfPi - theta0) / pi;
  if (gap >= kTailSeriesFrom) {
    if (auto tail = upper_tail_series(gap, alpha, beta)) return 1.0 - *tail;
  } else if (gap <= -kTailSeriesFrom) {
    if (auto tail = upper_tail_series(-gap, alpha, -beta)) return *tail;
  }
  if (gap > 0) return cdf_right_of_zeta(z, alpha, beta);
  // Duality: F(x; alpha, beta) = 1 - F(-x; alpha, -beta).
  return 1.0 - cdf_right_of_zeta(-z, alpha, -beta);
}

}  // namespace

std::complex<double> stable_cf(double theta, const StableParams& p) {
  validate(p);
  if (theta == 0.0) return {1.0, 0.0};
  const double a = std::fabs(p.gamma * theta);
  const double s = sgn(theta);
  double re, im;
  if (p.alpha != 1.0) {
    const double ga = std::pow(a, p.alpha);
    re = -ga;
    im = -ga * p.beta * s * std::tan(kHalfPi * p.alpha) * (std::pow(a, 1.0 - p.alpha) - 1.0);
  } else {
    re = -a;
    im = -a * p.beta * (2.0 / pi) * s * std::log(a);
  }
  im += p.delta * theta;
  return std::exp(std::complex<double>(re, im));
}

double stable_cdf(double x, const StableParams& p) {
  validate(p);
  const double z = (x - p.delta) / p.gamma;
  if (std::isinf(z)) return z > 0 ? 1.0 : 0.0;
  return std::clamp(cdf_standard(z, p.alpha, p.beta), 0.0, 1.0);
}

double stable_quantile(double q, const StableParams& p) {
  require(q > 0.0 && q < 1.0, "stable_quantile: q must be in (0,1)");
  validate(p);
  auto f = [&](double z) { return cdf_standard(z, p.alpha, p.beta) - q; };
  double lo = -1.0, hi = 1.0;
  double flo = f(lo), fhi = f(hi);
  for (int it = 0; flo > 0 && it < 200; ++it) {
    hi = lo;
    fhi = flo;
    lo *= 2.0;
    flo = f(lo);
  }
  for (int it = 0; fhi < 0 && it < 200; ++it) {
    lo = hi;
    flo = fhi;
    hi *= 2.0;
    fhi = f(hi);
  }
  if (flo > 0 || fhi < 0) fail(ErrorCode::Numeric, "stable_quantile: could not bracket");
  std::uintmax_t iters = 200;
  auto [a, b] = boost::math::tools::toms748_solve(
      f, lo, hi, flo, fhi, boost::math::tools::eps_tolerance<double>(44), iters);
  return p.delta + p.gamma * 0.5 * (a + b);
}

std::vector<double> stable_sample(const StableParams& p, std::size_t n, std::uint64_t seed) {
  validate(p);
  Rng rng(seed);
  std::vector<double> out(n);
  const double a = p.alpha, b = p.beta;
  if (a != 1.0) {
    const double tpa = std::tan(kHalfPi * a);
    const double bb = std::atan(b * tpa) / a;
    const double ss = std::pow(1.0 + b * b * tpa * tpa, 1.0 / (2.0 * a));
    for (auto& x : out) {
      const double u = pi * (rng.uniform() - 0.5);
      const double w = rng.exponential();
      const double z = ss * std::sin(a * (u + bb)) / std::pow(std::cos(u), 1.0 / a) *
                       std::pow(std::cos(u - a * (u + bb)) / w, (1.0 - a) / a);
      // Standard S1 draw -> S0.
      x = p.gamma * (z - b * tpa) + p.delta;
    }
  } else {
    for (auto& x : out) {
      const double u = pi * (rng.uniform() - 0.5);
      const double w = rng.exponential();
      const double v = kHalfPi + b * u;
      const double z = (2.0 / pi) * (v * std::tan(u) - b * std::log(kHalfPi * w * std::cos(u) / v));
      x = p.gamma * z + p.delta;
    }
  }
  return out;
}

double sorted_quantile(std::span<const double> s, double prob) {
  require(!s.empty(), "sample_quantile: empty data");
  const std::size_t n = s.size();
  // Position on the 1-based order-statistic scale: s(k) = (k - 0.5)/n.
  const double k = prob * static_cast<double>(n) + 0.5;
  if (k <= 1.0) return s.front();
  if (k >= static_cast<double>(n)) return s.back();
  const double fl = std::floor(k);
  const std::size_t i = static_cast<std::size_t>(fl);  // 1-based lower rank
  const double w = k - fl;
  return s[i - 1] + w * (s[i] - s[i - 1]);
}

double sample_quantile(std::span<const double> data, double prob) {
  std::vector<double> s(data.begin(), data.end());
  std::sort(s.begin(), s.end());
  return sorted_quantile(s, prob);
}

// ---------------------------------------------------------------------------
// McCulloch
// ---------------------------------------------------------------------------

namespace {

constexpr double kProbs[5] = {0.05, 0.25, 0.5, 0.75, 0.95};

struct StdQuantiles {
  double q[5];
  double nu_alpha() const { return (q[4] - q[0]) / (q[3] - q[1]); }
  double nu_beta() const { return (q[4] + q[0] - 2.0 * q[2]) / (q[4] - q[0]); }
};

StdQuantiles standard_quantiles(double alpha, double beta) {
  // S0 is continuous in alpha at 1, and the integral form is ill conditioned
  // right next to it.
  if (std::fabs(alpha - 1.0) < 1e-3) alpha = 1.0;
  StdQuantiles out;
  const StableParams p{alpha, beta, 1.0, 0.0};
  for (int i = 0; i < 5; ++i) out.q[i] = stable_quantile(kProbs[i], p);
  return out;
}

// Solves nu(alpha, beta) = target on exact standard quantiles, starting from
// the table inversion. Returns false when the iteration fails to settle.
bool refine_alpha_beta(double nu_a, double nu_b, double& alpha, double& beta) {
  const double alpha_lo = mcculloch::kAlphaMin;
  auto clamp_ab = [&](double& a, double& b) {
    a = std::clamp(a, alpha_lo, 2.0);
    b = std::clamp(b, -1.0, 1.0);
  };
  bool alpha_only = alpha >= 1.95;
  double a = alpha, b = beta;
  for (int it = 0; it < 40; ++it) {
    const StdQuantiles base = standard_quantiles(a, b);
    const double ra = base.nu_alpha() - nu_a;
    const double rb = alpha_only ? 0.0 : base.nu_beta() - nu_b;
    if (std::fabs(ra) < 1e-7 && std::fabs(rb) < 1e-7) {
      alpha = a;
      beta = b;
      return true;
    }
    const double ha = a > 2.0 - 2e-3 ? -1e-3 : 1e-3;
    const StdQuantiles qa = standard_quantiles(a + ha, b);
    const double j11 = (qa.nu_alpha() - base.nu_alpha()) / ha;
    double da, db;
    if (alpha_only) {
      if (j11 == 0.0) return false;
      da = -ra / j11;
      db = 0.0;
    } else {
      const double hb = b > 1.0 - 2e-3 ? -1e-3 : 1e-3;
      const StdQuantiles qb = standard_quantiles(a, b + hb);
      const double j21 = (qa.nu_beta() - base.nu_beta()) / ha;
      const double j12 = (qb.nu_alpha() - base.nu_alpha()) / hb;
      const double j22 = (qb.nu_beta() - base.nu_beta()) / hb;
      const double det = j11 * j22 - j12 * j21;
      if (det == 0.0 || !std::isfinite(det)) return false;
      da = -(j22 * ra - j12 * rb) / det;
      db = -(-j21 * ra + j11 * rb) / det;
    }
    // Beta pinned at +-1 with the step pointing outward: the skewness target
    // is unattainable, so match nu_alpha alone from here on.
    if (!alpha_only && std::fabs(b) == 1.0 && db * b > 0.0) {
      alpha_only = true;
      continue;
    }
    // Damp large steps; the tables already put us close.
    const double scale = std::min(1.0, 0.2 / std::max(std::fabs(da), std::fabs(db)));
    double na = a + scale * da, nb = b + scale * db;
    clamp_ab(na, nb);
    if (na == a && nb == b) {
      // Pinned at a bound: the best attainable point.
      alpha = a;
      beta = b;
      return true;
    }
    a = na;
    b = nb;
  }
  return false;
}

}  // namespace

FitResult fit_mcculloch(std::span<const double> data, const McCullochOptions& opts) {
  require(data.size() >= 20, "fit_mcculloch: need at least 20 observations");
  std::vector<double> s(data.begin(), data.end());
  std::sort(s.begin(), s.end());
  require(std::isfinite(s.front()) && std::isfinite(s.back()),
          "fit_mcculloch: data must be finite");

  FitResult fit;
  fit.family = Family::Stable;
  fit.method = Method::McCulloch;
  fit.sample_size = data.size();

  double q[5];
  for (int i = 0; i < 5; ++i) q[i] = sorted_quantile(s, kProbs[i]);
  double iqr = q[3] - q[1];
  if (!(iqr > 0.0)) fail(ErrorCode::Domain, "degenerate scale");

  double unit = 1.0;
  if (opts.iqr_scaling) {
    unit = iqr;
    for (double& v : q) v /= unit;
    iqr = q[3] - q[1];
  }

  const double nu_a = (q[4] - q[0]) / iqr;
  const double nu_b = (q[4] + q[0] - 2.0 * q[2]) / (q[4] - q[0]);
  bool interior = true;
  double alpha, beta;
  if (nu_a < mcculloch::kNuAlphaMin) {
    alpha = 2.0;
    beta = 0.0;
    fit.notes.push_back("nu_alpha below table minimum; alpha set to 2");
  } else {
    if (nu_a > mcculloch::kNuAlphaMax) {
      fit.notes.push_back("nu_alpha above table maximum; alpha clamped at table floor");
    }
    alpha = mcculloch::alpha_from_nu(nu_a, nu_b, &interior);
    beta = mcculloch::beta_from_nu(nu_a, nu_b, &interior);
  }

  double gamma, delta;
  bool refined = false;
  if (opts.refine && interior && alpha < 2.0) {
    try {
      double a = alpha, b = beta;
      if (refine_alpha_beta(nu_a, nu_b, a, b)) {
        const StdQuantiles z = standard_quantiles(a, b);
        alpha = a;
        beta = b;
        gamma = iqr / (z.q[3] - z.q[1]);
        delta = q[2] - gamma * z.q[2];
        refined = true;
      } else {
        fit.notes.push_back("quantile refinement did not settle; table inversion kept");
      }
    } catch (const Error& e) {
      fit.notes.push_back(std::string("quantile refinement failed: ") + e.what());
    }
  }
  if (!refined) {
    gamma = iqr / mcculloch::nu_c(alpha, beta, &interior);
    delta = q[2] + gamma * mcculloch::nu_zeta(alpha, beta, &interior);
  }

  fit.params = StableParams{alpha, beta, gamma * unit, delta * unit};
  fit.converged = interior;
  return fit;
}

}  // namespace lobtail
