// Exercises the shared library through the C header only.

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "lobtail/lobtail.h"

namespace {

std::vector<double> exponential_grid(std::size_t n) {
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = -std::log1p(-(i + 0.5) / n);
  return x;
}

}  // namespace

TEST(CApi, VersionAndStatusNames) {
  EXPECT_STREQ(lt_version(), "0.1.0");
  EXPECT_STREQ(lt_status_name(LT_OK), "ok");
  EXPECT_STREQ(lt_status_name(LT_ERR_CONFIG), "config error");
}

TEST(CApi, FitRoundTrip) {
  const auto x = exponential_grid(500);
  lt_fit* fit = nullptr;
  ASSERT_EQ(lt_fit_data(LT_FAMILY_GPD, LT_METHOD_MLE, x.data(), x.size(), &fit), LT_OK);
  ASSERT_NE(fit, nullptr);
  lt_family fam;
  lt_method meth;
  EXPECT_EQ(lt_fit_family(fit, &fam), LT_OK);
  EXPECT_EQ(lt_fit_method(fit, &meth), LT_OK);
  EXPECT_EQ(fam, LT_FAMILY_GPD);
  EXPECT_EQ(meth, LT_METHOD_MLE);
  std::size_t n = 0;
  ASSERT_EQ(lt_fit_param_count(fit, &n), LT_OK);
  ASSERT_EQ(n, 3u);
  double v = 0;
  const char* name = nullptr;
  ASSERT_EQ(lt_fit_param(fit, 0, &v, &name), LT_OK);
  EXPECT_STREQ(name, "gamma");
  EXPECT_NEAR(v, 0.0, 0.05);
  EXPECT_EQ(lt_fit_param(fit, 3, &v, &name), LT_ERR_INVALID_ARGUMENT);
  double d = -1, p = -1;
  ASSERT_EQ(lt_fit_ks(fit, &d, &p), LT_OK);
  EXPECT_GE(d, 0.0);
  EXPECT_LE(d, 1.0);
  double d2 = -1, p2 = -1;
  ASSERT_EQ(lt_ks_test(fit, x.data(), x.size(), &d2, &p2), LT_OK);
  EXPECT_DOUBLE_EQ(d, d2);
  int conv = 0;
  EXPECT_EQ(lt_fit_converged(fit, &conv), LT_OK);
  EXPECT_EQ(conv, 1);
  lt_fit_free(fit);
}

TEST(CApi, UnsupportedPairIsInvalidArgument) {
  const auto x = exponential_grid(100);
  lt_fit* fit = nullptr;
  EXPECT_EQ(lt_fit_data(LT_FAMILY_STABLE, LT_METHOD_EPM, x.data(), x.size(), &fit),
            LT_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(fit, nullptr);
  EXPECT_NE(std::strlen(lt_last_error()), 0u);
  EXPECT_EQ(lt_fit_data(static_cast<lt_family>(7), LT_METHOD_MLE, x.data(), x.size(), &fit),
            LT_ERR_INVALID_ARGUMENT);
}

TEST(CApi, DegenerateDataReportsDomain) {
  const std::vector<double> x(20, 1.0);
  lt_fit* fit = nullptr;
  EXPECT_EQ(lt_fit_data(LT_FAMILY_GPD, LT_METHOD_MOM, x.data(), x.size(), &fit), LT_ERR_DOMAIN);
}

TEST(CApi, NullArguments) {
  EXPECT_EQ(lt_fit_data(LT_FAMILY_GPD, LT_METHOD_MLE, nullptr, 5, nullptr), LT_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(lt_stable_cdf(0, 1.5, 0, 1, 0, nullptr), LT_ERR_INVALID_ARGUMENT);
  lt_fit_free(nullptr);
}

TEST(CApi, StableCdf) {
  double f = 0;
  ASSERT_EQ(lt_stable_cdf(1.0, 1.0, 0.0, 1.0, 0.0, &f), LT_OK);
  EXPECT_NEAR(f, 0.75, 1e-14);
  EXPECT_EQ(lt_stable_cdf(1.0, 2.5, 0.0, 1.0, 0.0, &f), LT_ERR_INVALID_ARGUMENT);
}

TEST(CApi, PipelineErrors) {
  int code = 0;
  EXPECT_EQ(lt_run_pipeline("/nonexistent/config.json", nullptr, 0, &code), LT_ERR_CONFIG);
  const std::string cfg = std::string(LOBTAIL_TEST_DATA_DIR) + "/toy_config.json";
  EXPECT_EQ(lt_run_pipeline(cfg.c_str(), "not-a-date", 0, &code), LT_ERR_CONFIG);
}

TEST(CApi, UnknownStudy) {
  int ok = 0;
  EXPECT_EQ(lt_run_simstudy("weibull", nullptr, &ok), LT_ERR_INVALID_ARGUMENT);
}

TEST(CApi, EmptyKsStudy) {
  const auto out = std::filesystem::temp_directory_path() / "lobtail_capi_study";
  const std::string out_s = out.string();
  lt_simstudy_options o{};
  o.replicates = 0;
  o.has_replicates = 1;
  o.out_dir = out_s.c_str();
  int ok = 0;
  EXPECT_EQ(lt_run_simstudy("ks_case", &o, &ok), LT_OK);
  EXPECT_TRUE(std::filesystem::exists(out / "ks_case" / "table.csv"));
}
