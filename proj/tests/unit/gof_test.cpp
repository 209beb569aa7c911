#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "lobtail/gof.hpp"
#include "lobtail/gpd.hpp"
#include "lobtail/stable.hpp"

using namespace lobtail;

namespace {

double exp_cdf(double x) { return x <= 0 ? 0.0 : 1.0 - std::exp(-x); }

}  // namespace

TEST(KsStatistic, ExactQuantilesGiveHalfStep) {
  const std::size_t n = 40;
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = -std::log1p(-(i + 0.5) / n);
  EXPECT_NEAR(ks_statistic(x, exp_cdf).statistic, 0.5 / n, 1e-14);
}

TEST(KsStatistic, SingleDatumAtMedian) {
  const auto r = ks_statistic(std::vector<double>{std::log(2.0)}, exp_cdf);
  EXPECT_NEAR(r.statistic, 0.5, 1e-15);
}

TEST(KsStatistic, NonMonotoneCdfFails) {
  const Cdf bad = [](double x) { return x < 1.0 ? 0.6 : 0.2; };
  EXPECT_THROW(ks_statistic(std::vector<double>{0.5, 2.0}, bad), Error);
}

TEST(KsStatistic, InvariantUnderIncreasingTransform) {
  const auto y = gpd_sample({0.2, 1.0, 0.0}, 300, 6);
  const GpdParams p{0.25, 1.1, 0.0};
  std::vector<double> z(y);
  for (auto& v : z) v = std::log(v);
  const auto a = ks_statistic(y, [&](double t) { return gpd_cdf(t, p); });
  const auto b = ks_statistic(z, [&](double t) { return gpd_cdf(std::exp(t), p); });
  EXPECT_NEAR(a.statistic, b.statistic, 1e-13);
}

TEST(KsStatistic, ValuesInUnitInterval) {
  const auto y = gpd_sample({0.5, 1.0, 0.0}, 500, 2);
  const auto r = ks_statistic(y, exp_cdf);
  EXPECT_GE(r.statistic, 0.0);
  EXPECT_LE(r.statistic, 1.0);
  EXPECT_GE(r.pvalue, 0.0);
  EXPECT_LE(r.pvalue, 1.0);
}

TEST(KolmogorovSf, KnownPoints) {
  // Critical values of the limiting distribution.
  EXPECT_NEAR(kolmogorov_sf(1.2238), 0.10, 5e-4);
  EXPECT_NEAR(kolmogorov_sf(1.3581), 0.05, 5e-4);
  EXPECT_NEAR(kolmogorov_sf(0.0), 1.0, 1e-12);
  EXPECT_NEAR(kolmogorov_sf(5.0), 0.0, 1e-12);
}

TEST(KsCalibration, CorrectModelRejectsNearNominal) {
  const StableParams p{1.5, 0.5, 1.0, 0.0};
  int rejected = 0;
  for (int rep = 0; rep < 40; ++rep) {
    const auto x = stable_sample(p, 200, 3000 + rep);
    rejected += ks_statistic(x, [&](double t) { return stable_cdf(t, p); }).pvalue < 0.1;
  }
  EXPECT_LE(rejected, 12);
}

TEST(PercentileComparison, DefaultProbes) {
  const auto p = default_probes();
  ASSERT_EQ(p.size(), 11u);
  EXPECT_DOUBLE_EQ(p.front(), 0.1);
  EXPECT_DOUBLE_EQ(p[8], 0.9);
  EXPECT_DOUBLE_EQ(p[9], 0.95);
  EXPECT_DOUBLE_EQ(p[10], 0.99);
}

TEST(PercentileComparison, SelfComparisonWithinOneOverN) {
  const auto x = gpd_sample({0.1, 1.0, 0.0}, 400, 9);
  std::vector<double> s(x);
  std::sort(s.begin(), s.end());
  const Cdf ecdf = [&](double t) {
    return static_cast<double>(std::upper_bound(s.begin(), s.end(), t) - s.begin()) / s.size();
  };
  const auto probes = default_probes();
  for (const auto& row : percentile_comparison(x, ecdf, probes)) {
    EXPECT_NEAR(row.model_cdf, row.p, 1.0 / s.size() + 1e-12);
  }
}

TEST(PercentileComparison, ExponentialOnParetoPutsTooMuchMassBelowTailQuantile) {
  const auto x = gpd_sample({0.5, 1.0, 0.0}, 20000, 10);
  double m = 0;
  for (double v : x) m += v;
  m /= x.size();
  const Cdf fitted = [m](double t) { return t <= 0 ? 0.0 : 1.0 - std::exp(-t / m); };
  const auto probes = default_probes();
  const auto rows = percentile_comparison(x, fitted, probes);
  // The light-tailed model assigns more than 99% below the empirical 99th
  // percentile of heavy-tailed data.
  EXPECT_GT(rows.back().model_cdf, 0.99);
}

TEST(FittedCdf, DispatchesOnFamily) {
  FitResult f;
  f.family = Family::Gpd;
  f.method = Method::Mle;
  f.params = GpdParams{1.0, 1.0, 0.0};
  EXPECT_DOUBLE_EQ(fitted_cdf(f)(1.0), 0.5);
  f.family = Family::Stable;
  f.method = Method::McCulloch;
  f.params = StableParams{1.0, 0.0, 1.0, 0.0};
  EXPECT_NEAR(fitted_cdf(f)(1.0), 0.75, 1e-14);
}

TEST(KsSubsample, MisspecifiedFullSampleRejectsHarder) {
  const StableParams p{1.6, 0.5, 20.0, 100.0};
  auto x = stable_sample(p, 4000, 21);
  for (auto& v : x) v = std::round(v);
  const auto fit = fit_mcculloch(x);
  const auto r = ks_subsample_study(x, fit, 200, 20, 5);
  EXPECT_EQ(r.pvalue_sub.size(), 20u);
  EXPECT_LE(r.pvalue_full, r.pvalue_sub_mean);
}

TEST(KsSubsample, NearFullSubsampleMatchesFull) {
  const GpdParams p{0.2, 1.0, 0.0};
  const auto x = gpd_sample(p, 300, 3);
  FitResult fit;
  fit.family = Family::Gpd;
  fit.method = Method::Mle;
  fit.params = p;
  const auto r = ks_subsample_study(x, fit, 299, 1, 7);
  EXPECT_NEAR(r.pvalue_sub_mean, r.pvalue_full, 0.1);
}

TEST(KsSubsample, SubsampleSizeMustBeSmaller) {
  FitResult fit;
  fit.family = Family::Gpd;
  fit.method = Method::Mle;
  fit.params = GpdParams{};
  const std::vector<double> x{1, 2, 3};
  EXPECT_THROW(ks_subsample_study(x, fit, 3, 5, 1), Error);
}
