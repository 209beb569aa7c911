#include <gtest/gtest.h>

#include <cmath>

#include "lobtail/diagnostics.hpp"
#include "lobtail/gpd.hpp"
#include "oracles.hpp"

using namespace lobtail;

TEST(Descriptive, HandExample) {
  const std::vector<double> x{1, 2, 3, 4, 5};
  const auto d = descriptive(x);
  EXPECT_DOUBLE_EQ(d.mean, 3.0);
  EXPECT_DOUBLE_EQ(d.median, 3.0);
  EXPECT_NEAR(d.std, std::sqrt(2.5), 1e-12);
  EXPECT_DOUBLE_EQ(d.min, 1.0);
  EXPECT_DOUBLE_EQ(d.max, 5.0);
  EXPECT_NEAR(d.skew, 0.0, 1e-12);
}

TEST(Descriptive, ConstantVectorMarksMomentsUndefined) {
  const auto d = descriptive(std::vector<double>{2, 2, 2, 2});
  EXPECT_EQ(d.std, 0.0);
  EXPECT_TRUE(std::isnan(d.skew));
  EXPECT_TRUE(std::isnan(d.kurtosis));
}

TEST(Descriptive, SymmetricSampleHasZeroSkew) {
  EXPECT_NEAR(descriptive(std::vector<double>{-1, -1, 1, 1}).skew, 0.0, 1e-15);
}

TEST(Descriptive, ShortInputFails) {
  EXPECT_THROW(descriptive(std::vector<double>{1, 2, 3}), Error);
}

TEST(Descriptive, GaussianKurtosisIsNonExcess) {
  Rng r(3);
  std::vector<double> x(200000);
  for (auto& v : x) v = r.normal();
  const auto d = descriptive(x);
  EXPECT_NEAR(d.kurtosis, 3.0, 0.05);
  EXPECT_LE(d.min, d.median);
  EXPECT_LE(d.median, d.max);
}

TEST(MeanExcess, HandExample) {
  const std::vector<double> x{1, 2, 3, 4, 5}, u{2.5};
  const auto c = mean_excess_curve(x, u);
  ASSERT_EQ(c.ys.size(), 1u);
  EXPECT_DOUBLE_EQ(c.ys[0], 1.5);
}

TEST(MeanExcess, ThresholdBelowMinimum) {
  const std::vector<double> x{1, 2, 3, 4, 5}, u{-1.0};
  EXPECT_DOUBLE_EQ(mean_excess_curve(x, u).ys[0], 3.0 - (-1.0));
}

TEST(MeanExcess, ThresholdAtMaximumDroppedWithWarning) {
  const std::vector<double> x{1, 2, 3, 4, 5}, u{1.5, 5.0, 7.0};
  const auto c = mean_excess_curve(x, u);
  EXPECT_EQ(c.xs.size(), 1u);
  EXPECT_FALSE(c.warnings.empty());
}

TEST(MeanExcess, DefaultGridIsStrictlyIncreasing) {
  const auto x = gpd_sample({0.2, 1.0, 0.0}, 2000, 11);
  const auto c = mean_excess_curve(x);
  ASSERT_GT(c.xs.size(), 10u);
  for (std::size_t i = 1; i < c.xs.size(); ++i) EXPECT_LT(c.xs[i - 1], c.xs[i]);
  EXPECT_EQ(c.xs.size(), c.ys.size());
}

TEST(Hill, HandExample) {
  const std::vector<double> x{std::exp(2.0), std::exp(1.0), 1.0};
  const auto c = hill_curve(x, 3);
  ASSERT_EQ(c.ys.size(), 1u);
  EXPECT_DOUBLE_EQ(c.xs[0], 3.0);
  EXPECT_NEAR(c.ys[0], 1.5, 1e-14);
}

TEST(Hill, ParetoQuantileGrid) {
  const std::size_t n = 100000;
  std::vector<double> x(n);
  for (std::size_t i = 1; i <= n; ++i) x[i - 1] = std::sqrt(static_cast<double>(n) / i);
  const auto c = hill_curve(x, 1000);
  EXPECT_NEAR(c.ys.back(), 0.5, 0.05);
}

TEST(Hill, ConstantDataGivesZero) {
  const auto c = hill_curve(std::vector<double>(50, 4.0), 20);
  for (double h : c.ys) EXPECT_EQ(h, 0.0);
}

TEST(Hill, ScaleInvariant) {
  auto x = gpd_sample({0.4, 1.0, 0.0}, 3000, 5);
  for (auto& v : x) v += 1.0;
  auto y = x;
  for (auto& v : y) v *= 37.5;
  const auto a = hill_curve(x, 500), b = hill_curve(y, 500);
  for (std::size_t i = 0; i < a.ys.size(); ++i) EXPECT_NEAR(a.ys[i], b.ys[i], 1e-12);
}

TEST(Hill, NonPositiveDatumFails) {
  EXPECT_THROW(hill_curve(std::vector<double>{3, 2, 0, 1}, 3), Error);
}

TEST(QqExponential, ExactExponentialQuantilesOnDiagonal) {
  const std::size_t n = 200;
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = -std::log1p(-(i + 0.5) / n);
  const auto c = qq_exponential(x);
  for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(c.xs[i], c.ys[i], 1e-12);
}

TEST(QqExponential, ParetoBendsUpward) {
  const std::size_t n = 500;
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = std::pow(1.0 - (i + 0.5) / n, -0.5) - 1.0;
  const auto c = qq_exponential(x);
  for (std::size_t i = n / 2; i < n; ++i) EXPECT_GT(c.ys[i] / c.xs[i], c.ys[i - 1] / c.xs[i - 1]);
}

TEST(QqExponential, SinglePoint) {
  const auto c = qq_exponential(std::vector<double>{4.0});
  ASSERT_EQ(c.xs.size(), 1u);
  EXPECT_DOUBLE_EQ(c.xs[0], std::log(2.0));
  EXPECT_DOUBLE_EQ(c.ys[0], 4.0);
}

TEST(Dfa, WhiteNoiseNearHalf) {
  Rng r(99);
  std::vector<double> x(10000);
  for (auto& v : x) v = r.normal();
  EXPECT_NEAR(hurst_dfa(x).hurst, 0.5, 0.07);
}

TEST(Dfa, IntegratedArProcessIsPersistent) {
  Rng r(5);
  std::vector<double> x(10000);
  double ar = 0.0, level = 0.0;
  for (auto& v : x) {
    ar = 0.9 * ar + r.normal();
    level += 0.05 * ar;
    v = ar + level;
  }
  EXPECT_GT(hurst_dfa(x).hurst, 0.67);
}

TEST(Dfa, AffineInvariant) {
  Rng r(8);
  std::vector<double> x(4000), y(4000);
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = r.normal();
    y[i] = 3.5 * x[i] - 12.0;
  }
  EXPECT_NEAR(hurst_dfa(x).hurst, hurst_dfa(y).hurst, 1e-9);
}

TEST(Dfa, ConstantSeriesIsDegenerate) {
  EXPECT_THROW(hurst_dfa(std::vector<double>(1000, 1.0)), Error);
}

TEST(Dfa, TooFewWindowsFails) {
  const std::vector<double> x(1000, 0.0);
  const std::vector<std::size_t> w{8, 16, 32};
  EXPECT_THROW(hurst_dfa(x, w), Error);
}

namespace {

VolumeSeries hourly_series(const std::string& day, std::vector<std::pair<std::int64_t, double>> pts,
                           int res = 10) {
  VolumeSeries s;
  s.key = {"TOY", parse_date(day), Side::Bid, 1, res};
  for (auto [t, v] : pts) {
    s.timestamps.push_back(t);
    s.values.push_back(v);
  }
  return s;
}

}  // namespace

TEST(HeatMap, MediansPerHourAndMissingMarker) {
  std::vector<VolumeSeries> s{
      hourly_series("2010-03-01", {{9 * 3600 + 10, 5}, {9 * 3600 + 20, 5}, {11 * 3600, 1}}),
      hourly_series("2010-03-02", {{9 * 3600 + 10, 1}, {9 * 3600 + 20, 2}, {9 * 3600 + 30, 3}})};
  const auto h = hourly_median_matrix(s);
  EXPECT_EQ(h.hours, (std::vector<int>{9, 10, 11}));
  EXPECT_EQ(h.days, (std::vector<std::string>{"2010-03-01", "2010-03-02"}));
  EXPECT_DOUBLE_EQ(h.cells[0][0], 5.0);
  EXPECT_DOUBLE_EQ(h.cells[0][1], 2.0);
  EXPECT_TRUE(std::isnan(h.cells[1][0]));
  EXPECT_TRUE(std::isnan(h.cells[2][1]));
}

TEST(HeatMap, MixedResolutionsFail) {
  std::vector<VolumeSeries> s{hourly_series("2010-03-01", {{10, 1}}),
                              hourly_series("2010-03-02", {{5, 1}}, 5)};
  EXPECT_THROW(hourly_median_matrix(s), Error);
}
