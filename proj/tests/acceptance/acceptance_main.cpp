// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Checks are recomputed here from raw outputs rather than read from
// the library's own anchor flags.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "lobtail/diagnostics.hpp"
#include "lobtail/gev.hpp"
#include "lobtail/gof.hpp"
#include "lobtail/gpd.hpp"
#include "lobtail/pipeline.hpp"
#include "lobtail/simstudy.hpp"
#include "lobtail/stable.hpp"
#include "oracles.hpp"
#include "tree_hash.hpp"

using namespace lobtail;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;
  void check(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      detail += "[fail] ";
    }
    detail += what + "; ";
  }
};

std::string f(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

const StudyRow& row(const StudyResult& r, const std::string& scen, const std::string& method,
                    const std::string& param) {
  for (const auto& x : r.rows) {
    if (x.scenario == scen && x.method == method && x.param == param) return x;
  }
  fail(ErrorCode::InvalidArgument, "missing study row " + scen + "/" + method + "/" + param);
}

// 1. GPD MLE recovery.
Outcome gpd_mle_recovery() {
  Outcome o;
  const auto t0 = Clock::now();
  const std::size_t j = 10000;
  for (double g : {-0.2, 0.0, 0.5}) {
    double sum = 0.0;
    int ok = 0;
    for (int r = 0; r < 100; ++r) {
      try {
        sum += std::get<GpdParams>(fit_gpd_mle(gpd_sample({g, 1.0, 0.0}, j, derive_seed(101, r))).params).gamma;
        ++ok;
      } catch (const Error&) {
      }
    }
    const double mean = sum / ok;
    const double tol = 3.0 * (1.0 + g) / std::sqrt(static_cast<double>(j));
    o.check(ok == 100 && std::fabs(mean - g) <= tol,
            "gamma=" + f("%g", g) + " mean=" + f("%.5f", mean) + " tol=" + f("%.4f", tol));
  }
  const double dt = seconds_since(t0);
  o.check(dt < 60.0, "runtime " + f("%.1f", dt) + "s");
  return o;
}

// 2. GPD MOM closed form and recovery.
Outcome gpd_mom() {
  Outcome o;
  Rng rng(202);
  double worst = 0.0;
  for (int r = 0; r < 1000; ++r) {
    std::vector<double> y(5 + rng.below(200));
    const double g = -0.3 + 0.6 * rng.uniform();
    y = gpd_sample({g, 0.5 + rng.uniform(), 0.0}, y.size(), derive_seed(202, r));
    const double m = oracle::mean(y), s2 = oracle::variance(y);
    const auto p = std::get<GpdParams>(fit_gpd_mom(y).params);
    worst = std::max({worst, std::fabs(p.gamma - 0.5 * (1.0 - m * m / s2)),
                      std::fabs(p.sigma - 0.5 * m * (1.0 + m * m / s2)) / std::max(1.0, p.sigma)});
  }
  o.check(worst <= 1e-12, "max closed-form deviation " + f("%.2e", worst));
  const auto p = std::get<GpdParams>(fit_gpd_mom(gpd_sample({0.2, 1.0, 0.0}, 100000, 203)).params);
  o.check(std::fabs(p.gamma - 0.2) <= 0.02, "gamma_hat(n=1e5)=" + f("%.4f", p.gamma));
  return o;
}

// 3. Single-pair EPM equals Pickands.
Outcome pickands_epm() {
  Outcome o;
  int valid = 0, seed = 0;
  double worst = 0.0;
  while (valid < 100 && seed < 1000) {
    auto y = gpd_sample({-0.3, 1.0, 0.0}, 200, derive_seed(303, seed++));
    FitResult pick;
    try {
      pick = fit_gpd_pickands(y);
    } catch (const Error&) {
      continue;
    }
    std::sort(y.begin(), y.end());
    const auto pr = epm_pair(y, y.size() / 2, 3 * y.size() / 4, 0.0, 0.0);
    if (!pr) {
      o.check(false, "epm pair undefined where Pickands is defined");
      break;
    }
    const auto& pp = std::get<GpdParams>(pick.params);
    worst = std::max({worst, std::fabs(pr->gamma - pp.gamma), std::fabs(pr->sigma - pp.sigma) / pp.sigma});
    ++valid;
  }
  o.check(valid == 100, f("%.0f", valid) + " valid samples");
  o.check(worst <= 1e-8, "max deviation " + f("%.2e", worst));
  return o;
}

// 4. GPD method comparison, 20 x 500.
Outcome gpd_study() {
  Outcome o;
  const auto t0 = Clock::now();
  GpdStudyConfig cfg;
  const auto r = gpd_method_comparison(cfg);
  const std::string pos = "gamma=0.5,n=500";
  const double m_mle = row(r, pos, "mle", "gamma").median;
  const double m_pick = row(r, pos, "pickands", "gamma").median;
  const double m_epm = row(r, pos, "epm_p50", "gamma").median;
  const double spread = std::max({m_mle, m_pick, m_epm}) - std::min({m_mle, m_pick, m_epm});
  o.check(spread <= 0.15, "gamma=0.5 medians mle=" + f("%.3f", m_mle) + " pickands=" +
                              f("%.3f", m_pick) + " epm=" + f("%.3f", m_epm));
  const double neg = row(r, "gamma=-0.3,n=500", "epm_p50", "gamma").median;
  o.check(neg > -0.3, "EPM median at gamma=-0.3: " + f("%.3f", neg));
  for (double g : cfg.gammas) {
    const std::string scen = "gamma=" + f("%g", g) + ",n=500";
    const double s0 = row(r, scen, "epm_p0", "gamma").sd;
    const double s50 = row(r, scen, "epm_p50", "gamma").sd;
    const double s75 = row(r, scen, "epm_p75", "gamma").sd;
    o.check(s0 > s50 && s50 > s75, "EPM sd at " + scen + ": " + f("%.4f", s0) + " > " +
                                       f("%.4f", s50) + " > " + f("%.4f", s75));
  }
  const double dt = seconds_since(t0);
  o.check(dt < 300.0, "runtime " + f("%.1f", dt) + "s");
  return o;
}

// 5. GEV method comparison, 20 x {50, 1e4}.
Outcome gev_study() {
  Outcome o;
  GevStudyConfig cfg;
  const auto r = gev_method_comparison(cfg);
  const auto& mle = row(r, "gamma=0,n=50", "mle", "gamma");
  const auto& mix = row(r, "gamma=0,n=50", "mixed_lmoments", "gamma");
  o.check(mle.variance > mix.variance,
          "n=50 var mle=" + f("%.4f", mle.variance) + " mixed=" + f("%.4f", mix.variance));
  o.check(std::fabs(mix.bias) > std::fabs(mle.bias),
          "n=50 |bias| mixed=" + f("%.4f", std::fabs(mix.bias)) + " mle=" + f("%.4f", std::fabs(mle.bias)));
  for (double g : cfg.gammas) {
    const std::string scen = "gamma=" + f("%g", g) + ",n=10000";
    for (const char* m : {"mle", "mixed_lmoments"}) {
      const auto& x = row(r, scen, m, "gamma");
      o.check(x.failures == 0 && std::fabs(x.mean - g) <= 0.05, scen + " " + m + " mean=" + f("%.4f", x.mean));
    }
  }
  return o;
}

// 6. Sample L-moments against the all-subset oracle.
Outcome lmoments() {
  Outcome o;
  Rng rng(606);
  double worst = 0.0;
  for (int r = 0; r < 200; ++r) {
    std::vector<double> x(3 + rng.below(10));
    for (auto& v : x) v = 5.0 * rng.normal() + rng.exponential();
    const auto lm = sample_lmoments(x);
    worst = std::max({worst, std::fabs(lm.lambda1 - oracle::lmoment_all_subsets(x, 1)),
                      std::fabs(lm.lambda2 - oracle::lmoment_all_subsets(x, 2)),
                      std::fabs(lm.lambda3 - oracle::lmoment_all_subsets(x, 3))});
  }
  o.check(worst <= 1e-12, "max deviation " + f("%.2e", worst));
  return o;
}

// 7. McCulloch recovery.
Outcome mcculloch_recovery() {
  Outcome o;
  for (double a : {1.2, 1.8}) {
    const StableParams truth{a, 0.5, 2.0, 1.0};
    double sa = 0, sb = 0, sg = 0, sd = 0;
    for (int r = 0; r < 20; ++r) {
      const auto p = std::get<StableParams>(
          fit_mcculloch(stable_sample(truth, 100000, derive_seed(707, 100 * a + r))).params);
      sa += p.alpha;
      sb += p.beta;
      sg += p.gamma;
      sd += p.delta;
    }
    sa /= 20, sb /= 20, sg /= 20, sd /= 20;
    o.check(std::fabs(sa - a) <= 0.05 && std::fabs(sb - 0.5) <= 0.15 && std::fabs(sg - 2.0) <= 0.1 &&
                std::fabs(sd - 1.0) <= 0.1,
            "alpha=" + f("%g", a) + ": means " + f("%.3f", sa) + "," + f("%.3f", sb) + "," +
                f("%.3f", sg) + "," + f("%.3f", sd));
  }
  Rng rng(708);
  std::vector<double> z(100000);
  for (auto& v : z) v = rng.normal();
  const double ag = std::get<StableParams>(fit_mcculloch(z).params).alpha;
  o.check(ag >= 1.95, "gaussian alpha_hat=" + f("%.4f", ag));
  return o;
}

// 8. Stable CDF closed forms and duality.
Outcome stable_cdf_checks() {
  Outcome o;
  double wg = 0, wc = 0, wd = 0;
  for (int i = 0; i < 20; ++i) {
    const double x = -9.5 + i;
    wg = std::max(wg, std::fabs(stable_cdf(x, {2.0, 0.0, 1.5, 0.5}) - oracle::normal_cdf((x - 0.5) / (1.5 * std::sqrt(2.0)))));
    wc = std::max(wc, std::fabs(stable_cdf(x, {1.0, 0.0, 1.5, 0.5}) - (0.5 + std::atan((x - 0.5) / 1.5) / std::numbers::pi)));
  }
  for (double a : {0.7, 1.0, 1.3, 1.7}) {
    for (double b : {-0.9, 0.3, 1.0}) {
      for (double x : {-4.0, -0.7, 0.2, 2.5}) {
        wd = std::max(wd, std::fabs(stable_cdf(-x, {a, b, 1.0, 0.0}) + stable_cdf(x, {a, -b, 1.0, 0.0}) - 1.0));
      }
    }
  }
  o.check(wg <= 1e-6, "gaussian max err " + f("%.2e", wg));
  o.check(wc <= 1e-6, "cauchy max err " + f("%.2e", wc));
  o.check(wd <= 1e-8, "duality max err " + f("%.2e", wd));
  return o;
}

// 9. Diagnostics.
Outcome diagnostics() {
  Outcome o;
  const std::size_t n = 100000;
  std::vector<double> pareto(n);
  for (std::size_t i = 1; i <= n; ++i) pareto[i - 1] = std::sqrt(static_cast<double>(n) / i);
  const auto hill = hill_curve(pareto, 2000);
  double worst = 0;
  for (std::size_t i = 0; i < hill.xs.size(); ++i) {
    if (hill.xs[i] >= 500) worst = std::max(worst, std::fabs(hill.ys[i] - 0.5));
  }
  o.check(worst <= 0.05, "hill max |H_k-0.5| on [500,2000] = " + f("%.4f", worst));

  const double g = 0.2;
  const auto y = gpd_sample({g, 1.0, 0.0}, n, 909);
  std::vector<double> s(y);
  std::sort(s.begin(), s.end());
  std::vector<double> thr(s.begin() + n / 4, s.begin() + 3 * n / 4);
  thr.erase(std::unique(thr.begin(), thr.end()), thr.end());
  const auto me = mean_excess_curve(y, thr);
  const double slope = oracle::ls_slope(me.xs, me.ys);
  o.check(std::fabs(slope - g / (1 - g)) <= 0.1, "mean-excess slope " + f("%.4f", slope) + " vs " + f("%.4f", g / (1 - g)));

  double hsum = 0;
  for (int r = 0; r < 50; ++r) {
    Rng rng(derive_seed(910, r));
    std::vector<double> w(10000);
    for (auto& v : w) v = rng.normal();
    hsum += hurst_dfa(w).hurst;
  }
  o.check(std::fabs(hsum / 50 - 0.5) <= 0.05, "DFA mean H " + f("%.4f", hsum / 50));
  return o;
}

// 10. KS calibration and the subsample direction.
Outcome ks_calibration() {
  Outcome o;
  const StableParams p{1.5, 0.5, 1.0, 0.0};
  int rej = 0;
  for (int r = 0; r < 100; ++r) {
    const auto x = stable_sample(p, 200, derive_seed(1010, r));
    rej += ks_statistic(x, [&](double t) { return stable_cdf(t, p); }).pvalue < 0.10;
  }
  o.check(rej >= 5 && rej <= 15, "rejection rate " + f("%.0f", rej) + "%");

  // Mild misspecification: an atom at delta + gamma carrying 3% of the mass.
  const StableParams q{1.6, 0.5, 20.0, 100.0};
  auto x = stable_sample(q, 4000, 1011);
  Rng rng(1012);
  for (auto& v : x) {
    if (rng.uniform() < 0.03) v = q.delta + q.gamma;
  }
  const auto fit = fit_mcculloch(x);
  const auto sub = ks_subsample_study(x, fit, 200, 20, 1013);
  o.check(sub.pvalue_full < sub.pvalue_sub_mean,
          "pvalue_full=" + f("%.4f", sub.pvalue_full) + " pvalue_sub_mean=" + f("%.4f", sub.pvalue_sub_mean));
  return o;
}

// 11. Golden report tree.
Outcome golden() {
  Outcome o;
  const fs::path data = LOBTAIL_TEST_DATA_DIR;
  std::string manifests[2];
  for (int k = 0; k < 2; ++k) {
    const fs::path out = fs::temp_directory_path() / ("lobtail_acceptance_golden_" + std::to_string(k));
    fs::remove_all(out);
    RunConfig cfg = load_run_config(data / "toy_config.json");
    cfg.output_dir = out;
    cfg.jobs = k + 1;
    const auto sum = run_pipeline(cfg);
    o.check(sum.exit_code == 0, "run " + std::to_string(k) + " exit " + std::to_string(sum.exit_code));
    manifests[k] = tree_hash::manifest(out);
  }
  o.check(manifests[0] == manifests[1], "re-runs byte-identical");
  const fs::path golden = data / "golden_manifest.txt";
  o.check(fs::exists(golden) && manifests[0] == tree_hash::read_all(golden), "matches checked-in manifest");
  return o;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"gpd_mle_recovery", gpd_mle_recovery}, {"gpd_mom", gpd_mom},
      {"pickands_epm_consistency", pickands_epm}, {"gpd_method_study", gpd_study},
      {"gev_method_study", gev_study},          {"lmoments_oracle", lmoments},
      {"mcculloch_recovery", mcculloch_recovery},        {"stable_cdf", stable_cdf_checks},
      {"diagnostics", diagnostics},             {"ks_calibration", ks_calibration},
      {"golden_report_tree", golden}};
  int failed = 0, index = 0;
  for (const auto& [name, fn] : criteria) {
    ++index;
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.passed = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failed += !o.passed;
    std::printf("%s %2d %s (%.1fs): %s\n", o.passed ? "PASS" : "FAIL", index, name, seconds_since(t0),
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %d criteria passed\n", index - failed, index);
  return failed ? 1 : 0;
}
