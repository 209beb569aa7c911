#include <gtest/gtest.h>

#include "lobtail/simstudy.hpp"

using namespace lobtail;

namespace {

const StudyRow* find_row(const StudyResult& r, const std::string& scenario, const std::string& method,
                         const std::string& param) {
  for (const auto& row : r.rows) {
    if (row.scenario == scenario && row.method == method && row.param == param) return &row;
  }
  return nullptr;
}

}  // namespace

TEST(GevStudy, SmallRunIsDeterministicAndComplete) {
  GevStudyConfig cfg;
  cfg.gammas = {0.2};
  cfg.sample_sizes = {200};
  cfg.replicates = 4;
  cfg.jobs = 1;
  const auto a = gev_method_comparison(cfg);
  cfg.jobs = 2;
  const auto b = gev_method_comparison(cfg);
  ASSERT_EQ(a.rows.size(), b.rows.size());
  ASSERT_FALSE(a.rows.empty());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].mean, b.rows[i].mean);
    EXPECT_EQ(a.rows[i].replicates, 4u);
    EXPECT_LE(a.rows[i].failures, 4u);
    EXPECT_NEAR(a.rows[i].bias, a.rows[i].mean - a.rows[i].truth, 1e-12);
  }
}

TEST(GpdStudy, RowsCoverMethodsAndStartPercentiles) {
  GpdStudyConfig cfg;
  cfg.gammas = {0.5};
  cfg.n = 200;
  cfg.replicates = 3;
  cfg.jobs = 1;
  const auto r = gpd_method_comparison(cfg);
  int epm_rows = 0;
  for (const auto& row : r.rows) epm_rows += row.method.rfind("epm", 0) == 0 && row.param == "gamma";
  EXPECT_EQ(epm_rows, 3);
  bool has_mle = false;
  for (const auto& row : r.rows) has_mle = has_mle || row.method == "mle";
  EXPECT_TRUE(has_mle);
}

TEST(KsStudy, ZeroReplicatesGivesEmptyTable) {
  KsStudyConfig cfg;
  cfg.replicates = 0;
  const auto r = ks_case_study(cfg);
  EXPECT_TRUE(r.rows.empty());
}

TEST(KsStudy, WellSpecifiedSubsampleNearNominal) {
  KsStudyConfig cfg;
  cfg.n_full = 1000;
  cfg.replicates = 4;
  cfg.sub_replicates = 10;
  cfg.jobs = 1;
  const auto r = ks_case_study(cfg);
  const StudyRow* row = find_row(r, "well_specified", "ks_sub", "reject_rate");
  ASSERT_NE(row, nullptr);
  EXPECT_LE(row->mean, 0.35);
}
