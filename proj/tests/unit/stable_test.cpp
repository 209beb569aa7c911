#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "lobtail/stable.hpp"
#include "oracles.hpp"

using namespace lobtail;

TEST(StableCf, GaussianMember) {
  EXPECT_NEAR(std::abs(stable_cf(1.0, {2.0, 0.0, 1.0, 0.0}) - std::exp(-1.0)), 0.0, 1e-15);
}

TEST(StableCf, OriginIsOne) {
  for (double a : {0.7, 1.0, 1.5, 2.0}) {
    const auto v = stable_cf(0.0, {a, 0.6, 2.0, -3.0});
    EXPECT_DOUBLE_EQ(v.real(), 1.0);
    EXPECT_DOUBLE_EQ(v.imag(), 0.0);
  }
}

TEST(StableCf, Cauchy) {
  for (double t : {-3.0, -0.5, 0.25, 2.0}) {
    EXPECT_NEAR(std::abs(stable_cf(t, {1.0, 0.0, 1.0, 0.0}) - std::exp(-std::fabs(t))), 0.0, 1e-15);
  }
}

TEST(StableCf, MatchesOracleLogCf) {
  for (double a : {0.6, 1.0, 1.3, 1.9}) {
    for (double t : {-2.0, -0.3, 0.7, 4.0}) {
      const auto ours = stable_cf(t, {a, -0.4, 1.7, 0.5});
      const auto ref = std::exp(oracle::stable_log_cf(t, a, -0.4, 1.7, 0.5));
      EXPECT_NEAR(std::abs(ours - ref), 0.0, 1e-13) << "alpha=" << a << " t=" << t;
    }
  }
}

TEST(StableCdf, HandExamples) {
  EXPECT_NEAR(stable_cdf(2.0, {2.0, 0.0, 1.0, 0.0}), 0.9213503964748575, 1e-12);
  EXPECT_NEAR(stable_cdf(1.0, {1.0, 0.0, 1.0, 0.0}), 0.75, 1e-14);
  for (double a : {0.8, 1.3, 1.7}) EXPECT_NEAR(stable_cdf(4.0, {a, 0.0, 2.0, 4.0}), 0.5, 1e-12);
}

TEST(StableCdf, AgreesWithGilPelaez) {
  struct Case {
    double alpha, beta, x;
  };
  const Case cases[] = {{1.5, 0.5, -3.0}, {1.5, 0.5, 0.0},  {1.5, 0.5, 2.5},  {1.2, -0.8, 1.0},
                        {1.8, 0.9, -1.5}, {1.1, 0.3, 0.4},  {0.9, 0.5, 1.2},  {1.95, 0.5, -2.0},
                        {1.0, 0.7, 0.8},  {1.0, -0.4, -2.0}, {1.6, 1.0, -1.0}, {1.4, -1.0, 2.0}};
  for (const auto& c : cases) {
    const double ours = stable_cdf(c.x, {c.alpha, c.beta, 1.0, 0.0});
    const double ref = oracle::stable_cdf_gil_pelaez(c.x, c.alpha, c.beta, 1.0, 0.0);
    EXPECT_NEAR(ours, ref, 1e-8) << "alpha=" << c.alpha << " beta=" << c.beta << " x=" << c.x;
  }
}

TEST(StableCdf, DifficultSkewedCasesFrozen) {
  // Reference values from an independent high-precision CF inversion.
  EXPECT_NEAR(stable_cdf(-5.0, {0.9, 0.99, 1.0, 0.0}), 0.000667500159584, 1e-11);
  EXPECT_NEAR(stable_cdf(-5.0, {1.05, 0.99, 1.0, 0.0}), 0.000497630824489, 1e-11);
  EXPECT_NEAR(stable_cdf(-2.0, {1.95, 0.5, 1.0, 0.0}), 0.076304231275952, 1e-11);
}

TEST(StableCdf, LocationScaleEquivariant) {
  const StableParams std1{1.4, 0.3, 1.0, 0.0}, p{1.4, 0.3, 3.0, -2.0};
  for (double z : {-2.0, -0.1, 0.6, 3.0}) {
    EXPECT_NEAR(stable_cdf(-2.0 + 3.0 * z, p), stable_cdf(z, std1), 1e-12);
  }
}

TEST(StableCdf, MonotoneAndLimits) {
  for (double a : {0.8, 1.0, 1.5, 1.9}) {
    const StableParams p{a, 0.4, 2.0, 1.0};
    double prev = 0.0;
    for (double x = -30.0; x <= 30.0; x += 0.75) {
      const double f = stable_cdf(x, p);
      EXPECT_GE(f, prev - 1e-12) << "alpha=" << a << " x=" << x;
      prev = f;
    }
  }
  // Heavy tails decay like |x|^-alpha, so limits are probed far out.
  for (double a : {1.2, 1.5, 1.9}) {
    const StableParams p{a, 0.4, 2.0, 1.0};
    EXPECT_NEAR(stable_cdf(-1e7 * p.gamma, p), 0.0, 1e-6);
    EXPECT_NEAR(stable_cdf(1e7 * p.gamma, p), 1.0, 1e-6);
  }
  const StableParams g{2.0, 0.0, 1.0, 0.0};
  EXPECT_NEAR(stable_cdf(-50.0, g), 0.0, 1e-6);
  EXPECT_NEAR(stable_cdf(50.0, g), 1.0, 1e-6);
}

TEST(StableCdf, TailSeriesContinuousWithQuadrature) {
  // The far tail switches method 1000 units from zeta; no jump at the seam.
  for (double a : {0.3, 0.8, 0.99, 1.01, 1.5, 1.95}) {
    for (double b : {-1.0, 0.0, 0.7}) {
      const double zeta = -b * std::tan(std::numbers::pi * a / 2.0);
      for (double s : {-1.0, 1.0}) {
        const double lo = stable_cdf(zeta + s * (1000.0 - 1e-6), {a, b, 1.0, 0.0});
        const double hi = stable_cdf(zeta + s * (1000.0 + 1e-6), {a, b, 1.0, 0.0});
        EXPECT_NEAR(lo, hi, 1e-10) << "alpha=" << a << " beta=" << b << " side=" << s;
      }
    }
  }
}

TEST(StableCdf, FarTailsEvaluate) {
  for (double a : {0.5, 1.0, 1.5, 1.95}) {
    for (double b : {-1.0, 0.4, 1.0}) {
      double prev = 0.0;
      for (double x : {-1e12, -1e7, -1e5, 1e5, 1e7, 1e12}) {
        const double f = stable_cdf(x, {a, b, 1.0, 0.0});
        EXPECT_GE(f, prev) << "alpha=" << a << " beta=" << b << " x=" << x;
        prev = f;
      }
    }
  }
}

TEST(StableQuantile, InvertsCdf) {
  const StableParams p{1.3, -0.6, 1.5, 2.0};
  for (double q : {0.01, 0.25, 0.5, 0.9, 0.995}) {
    EXPECT_NEAR(stable_cdf(stable_quantile(q, p), p), q, 1e-9);
  }
  EXPECT_THROW(stable_quantile(0.0, p), Error);
  EXPECT_THROW(stable_quantile(1.0, p), Error);
}

TEST(StableSample, GaussianVariance) {
  const auto x = stable_sample({2.0, 0.0, 1.5, 0.0}, 1000000, 17);
  EXPECT_NEAR(oracle::variance(x) / 2.0, 1.5 * 1.5, 0.05 * 1.5 * 1.5);
}

TEST(StableSample, Deterministic) {
  const StableParams p{1.6, 0.5, 2.0, 1.0};
  EXPECT_EQ(stable_sample(p, 1000, 5), stable_sample(p, 1000, 5));
  EXPECT_NE(stable_sample(p, 1000, 5), stable_sample(p, 1000, 6));
}

TEST(StableSample, EmpiricalCdfMatches) {
  const StableParams p{1.3, 0.7, 1.0, 0.0};
  auto x = stable_sample(p, 20000, 23);
  for (double q : {-2.0, 0.0, 1.0, 4.0}) {
    double c = 0;
    for (double v : x) c += v <= q;
    EXPECT_NEAR(c / x.size(), stable_cdf(q, p), 0.015) << "x=" << q;
  }
}

TEST(SampleQuantile, PlottingPositions) {
  const std::vector<double> x{5, 1, 4, 2, 3};
  // Positions (2i-1)/(2n) hit order statistics exactly.
  const double probes[] = {0.1, 0.3, 0.5, 0.7, 0.9};
  for (int i = 0; i < 5; ++i) EXPECT_DOUBLE_EQ(sample_quantile(x, probes[i]), i + 1.0);
  EXPECT_DOUBLE_EQ(sample_quantile(std::vector<double>{10, 20}, 0.5), 15.0);
  EXPECT_DOUBLE_EQ(sample_quantile(x, 0.999), 5.0);
  EXPECT_DOUBLE_EQ(sample_quantile(x, 0.01), 1.0);
}

TEST(McCulloch, GaussianData) {
  Rng r(2024);
  std::vector<double> x(1000000);
  for (auto& v : x) v = r.normal();
  const auto fit = fit_mcculloch(x);
  const auto& p = std::get<StableParams>(fit.params);
  EXPECT_GE(p.alpha, 1.95);
  EXPECT_LE(p.alpha, 2.0);
  EXPECT_NEAR(p.beta, 0.0, 0.1);
}

TEST(McCulloch, SymmetricDataGivesZeroBeta) {
  auto x = stable_sample({1.5, 0.0, 1.0, 0.0}, 5001, 3);
  std::vector<double> sym = x;
  for (double v : x) sym.push_back(-v);
  const auto fit = fit_mcculloch(sym);
  EXPECT_NEAR(std::get<StableParams>(fit.params).beta, 0.0, 1e-9);
  EXPECT_NEAR(std::get<StableParams>(fit.params).delta, 0.0, 1e-9);
}

TEST(McCulloch, Recovery) {
  const StableParams truth{1.5, 0.5, 2.0, 1.0};
  const auto fit = fit_mcculloch(stable_sample(truth, 100000, 77));
  const auto& p = std::get<StableParams>(fit.params);
  EXPECT_NEAR(p.alpha, truth.alpha, 0.05);
  EXPECT_NEAR(p.beta, truth.beta, 0.15);
  EXPECT_NEAR(p.gamma, truth.gamma, 0.1);
  EXPECT_NEAR(p.delta, truth.delta, 0.1);
  EXPECT_NO_THROW(validate(fit));
}

TEST(McCulloch, ReflectionFlipsBetaAndDelta) {
  auto x = stable_sample({1.4, 0.6, 1.0, 2.0}, 20000, 9);
  auto y = x;
  for (auto& v : y) v = -v;
  const auto a = std::get<StableParams>(fit_mcculloch(x).params);
  const auto b = std::get<StableParams>(fit_mcculloch(y).params);
  // Exact up to the refinement tolerance.
  EXPECT_NEAR(a.alpha, b.alpha, 1e-6);
  EXPECT_NEAR(a.gamma, b.gamma, 1e-6);
  EXPECT_NEAR(a.beta, -b.beta, 1e-6);
  EXPECT_NEAR(a.delta, -b.delta, 1e-6);
}

TEST(McCulloch, LocationScaleEquivariant) {
  auto x = stable_sample({1.7, -0.3, 1.0, 0.0}, 20000, 19);
  auto y = x;
  for (auto& v : y) v = 4.0 * v + 10.0;
  const auto a = std::get<StableParams>(fit_mcculloch(x).params);
  const auto b = std::get<StableParams>(fit_mcculloch(y).params);
  EXPECT_NEAR(b.alpha, a.alpha, 1e-8);
  EXPECT_NEAR(b.beta, a.beta, 1e-8);
  EXPECT_NEAR(b.gamma, 4.0 * a.gamma, 1e-7);
  EXPECT_NEAR(b.delta, 4.0 * a.delta + 10.0, 1e-6);
}

TEST(McCulloch, IqrScalingMatchesPlainFit) {
  auto x = stable_sample({1.6, 0.4, 30.0, 500.0}, 20000, 4);
  const auto a = std::get<StableParams>(fit_mcculloch(x).params);
  const auto b = std::get<StableParams>(fit_mcculloch(x, {.iqr_scaling = true}).params);
  EXPECT_NEAR(a.alpha, b.alpha, 1e-8);
  EXPECT_NEAR(a.gamma, b.gamma, 1e-6);
}

TEST(McCulloch, ZeroIqrIsDegenerate) {
  std::vector<double> x(100, 3.0);
  x[0] = 1.0;
  x[99] = 8.0;
  EXPECT_THROW(fit_mcculloch(x), Error);
}

TEST(McCullochTables, GaussianCorner) {
  bool interior = true;
  EXPECT_NEAR(mcculloch::alpha_from_nu(2.439, 0.0, &interior), 2.0, 0.01);
  EXPECT_NEAR(mcculloch::beta_from_nu(5.0, 0.0), 0.0, 1e-12);
  // Below the table minimum clamps to the top alpha.
  EXPECT_NEAR(mcculloch::alpha_from_nu(2.0, 0.0, &interior), 2.0, 1e-12);
  EXPECT_FALSE(interior);
}
