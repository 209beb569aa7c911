#include "lobtail/gof.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lobtail/gev.hpp"
#include "lobtail/gpd.hpp"
#include "lobtail/stable.hpp"

namespace lobtail {

double kolmogorov_sf(double t) {
  if (!(t > 0.0)) return 1.0;
  if (t < 0.2) return 1.0;  // series converges too slowly; value is 1 to double precision
  // 2 sum_{k>=1} (-1)^(k-1) exp(-2 k^2 t^2), truncated at 100 terms.
  double s = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * t * t);
    s += (k % 2 == 1) ? term : -term;
    if (term < 1e-16) break;
  }
  return std::clamp(2.0 * s, 0.0, 1.0);
}

KsResult ks_statistic(std::span<const double> data, const Cdf& cdf) {
  require(!data.empty(), "ks_statistic: empty data");
  std::vector<double> s(data.begin(), data.end());
  std::sort(s.begin(), s.end());
  const double n = static_cast<double>(s.size());
  double d = 0.0;
  double prev = -1.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double f = cdf(s[i]);
    if (f < prev - 1e-12) fail(ErrorCode::InvalidArgument, "ks_statistic: cdf is not monotone");
    prev = std::max(prev, f);
    const double up = static_cast<double>(i + 1) / n;
    const double dn = static_cast<double>(i) / n;
    d = std::max({d, std::fabs(up - f), std::fabs(dn - f)});
  }
  d = std::min(d, 1.0);
  return {d, kolmogorov_sf(std::sqrt(n) * d)};
}

Cdf fitted_cdf(const FitResult& fit) {
  return std::visit(
      [](const auto& p) -> Cdf {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, StableParams>) {
          return [p](double x) { return stable_cdf(x, p); };
        } else if constexpr (std::is_same_v<T, GevParams>) {
          return [p](double x) { return gev_cdf(x, p); };
        } else {
          return [p](double x) { return gpd_cdf(x, p); };
        }
      },
      fit.params);
}

std::vector<double> default_probes() {
  return {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99};
}

std::vector<PercentileRow> percentile_comparison(std::span<const double> data, const Cdf& cdf,
                                                 std::span<const double> probes) {
  require(!data.empty(), "percentile_comparison: empty data");
  std::vector<double> s(data.begin(), data.end());
  std::sort(s.begin(), s.end());
  std::vector<PercentileRow> rows;
  rows.reserve(probes.size());
  for (double p : probes) {
    const double q = sorted_quantile(s, p);
    rows.push_back({p, q, cdf(q)});
  }
  return rows;
}

KsSubsampleResult ks_subsample_study(std::span<const double> data, const FitResult& fit,
                                     std::size_t subsample_n, std::size_t replicates,
                                     std::uint64_t seed) {
  require(subsample_n >= 1 && subsample_n < data.size(),
          "ks_subsample_study: need 1 <= subsample_n < n");
  const Cdf cdf = fitted_cdf(fit);
  KsSubsampleResult r;
  r.pvalue_full = ks_statistic(data, cdf).pvalue;
  if (replicates == 0) {
    r.pvalue_sub_mean = r.pvalue_full;
    return r;
  }
  std::vector<std::size_t> idx(data.size());
  std::vector<double> sub(subsample_n);
  for (std::size_t rep = 0; rep < replicates; ++rep) {
    Rng rng(derive_seed(seed, rep));
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    // Partial Fisher-Yates: the first subsample_n slots form the draw.
    for (std::size_t i = 0; i < subsample_n; ++i) {
      const std::size_t j = i + rng.below(idx.size() - i);
      std::swap(idx[i], idx[j]);
      sub[i] = data[idx[i]];
    }
    r.pvalue_sub.push_back(ks_statistic(sub, cdf).pvalue);
  }
  r.pvalue_sub_mean =
      std::accumulate(r.pvalue_sub.begin(), r.pvalue_sub.end(), 0.0) /
      static_cast<double>(r.pvalue_sub.size());
  return r;
}

}  // namespace lobtail
