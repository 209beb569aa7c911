#include "lobtail/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "numeric.hpp"

namespace lobtail {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Least-squares slope of ys on xs.
double ls_slope(std::span<const double> xs, std::span<const double> ys) {
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxy / sxx;
}
}  // namespace

std::string_view to_string(CurveKind k) {
  switch (k) {
    case CurveKind::MeanExcess: return "mean_excess";
    case CurveKind::Hill: return "hill";
    case CurveKind::QqExponential: return "qq_exponential";
    case CurveKind::DfaLogLog: return "dfa";
  }
  return "?";
}

DescriptiveStats descriptive(std::span<const double> data) {
  require(data.size() >= 4, "descriptive: need at least 4 observations");
  std::vector<double> s(data.begin(), data.end());
  std::sort(s.begin(), s.end());
  const std::size_t n = s.size();
  DescriptiveStats d;
  d.min = s.front();
  d.max = s.back();
  d.median = n % 2 == 1 ? s[n / 2] : 0.5 * (s[n / 2 - 1] + s[n / 2]);
  double sum = 0.0;
  for (double v : s) sum += v;
  d.mean = sum / static_cast<double>(n);
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double v : s) {
    const double e = v - d.mean;
    const double e2 = e * e;
    m2 += e2;
    m3 += e2 * e;
    m4 += e2 * e2;
  }
  const double nd = static_cast<double>(n);
  d.std = std::sqrt(m2 / (nd - 1.0));
  m2 /= nd;
  m3 /= nd;
  m4 /= nd;
  if (m2 > 0.0) {
    d.skew = m3 / std::pow(m2, 1.5);
    d.kurtosis = m4 / (m2 * m2);
  } else {
    d.skew = kNaN;
    d.kurtosis = kNaN;
  }
  return d;
}

CurvePoints mean_excess_curve(std::span<const double> data, std::span<const double> thresholds) {
  require(!data.empty(), "mean_excess_curve: empty data");
  std::vector<double> s(data.begin(), data.end());
  std::sort(s.begin(), s.end());
  // suffix[i] = sum of s[i..n)
  std::vector<double> suffix(s.size() + 1, 0.0);
  for (std::size_t i = s.size(); i-- > 0;) suffix[i] = suffix[i + 1] + s[i];

  std::vector<double> us(thresholds.begin(), thresholds.end());
  std::sort(us.begin(), us.end());
  us.erase(std::unique(us.begin(), us.end()), us.end());

  CurvePoints c;
  c.kind = CurveKind::MeanExcess;
  std::size_t dropped = 0;
  for (double u : us) {
    const auto idx = static_cast<std::size_t>(std::upper_bound(s.begin(), s.end(), u) - s.begin());
    const std::size_t count = s.size() - idx;
    if (count == 0) {
      ++dropped;
      continue;
    }
    c.xs.push_back(u);
    c.ys.push_back(suffix[idx] / static_cast<double>(count) - u);
  }
  if (dropped > 0) {
    c.warnings.push_back(std::to_string(dropped) + " thresholds at or above max(data) dropped");
  }
  return c;
}

CurvePoints mean_excess_curve(std::span<const double> data) {
  std::vector<double> s(data.begin(), data.end());
  std::sort(s.begin(), s.end());
  const std::size_t keep = s.size() > 3 ? s.size() - 3 : 0;
  std::vector<double> grid(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(keep));
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  // Drop ties with the top three so every threshold sits below them.
  if (keep > 0) {
    while (!grid.empty() && grid.back() >= s[keep]) grid.pop_back();
  }
  return mean_excess_curve(data, grid);
}

CurvePoints hill_curve(std::span<const double> data, std::size_t k_max, HillAxis axis) {
  const std::size_t n = data.size();
  require(k_max >= 3 && k_max <= n, "hill_curve: need 3 <= k_max <= n");
  for (double v : data) {
    if (!(v > 0.0)) fail(ErrorCode::InvalidArgument, "hill_curve: data must be positive");
  }
  std::vector<double> s(data.begin(), data.end());
  std::sort(s.begin(), s.end(), std::greater<>());
  CurvePoints c;
  c.kind = CurveKind::Hill;
  double log_sum = std::log(s[0]);  // sum of ln x_(i), i < k
  for (std::size_t k = 2; k <= k_max; ++k) {
    const double lk = std::log(s[k - 1]);
    if (k >= 3) {
      const double h = log_sum / static_cast<double>(k - 1) - lk;
      const double half = 1.96 / std::sqrt(static_cast<double>(k));
      c.xs.push_back(axis == HillAxis::Count ? static_cast<double>(k) : s[k - 1]);
      c.ys.push_back(h);
      c.lo.push_back(h * (1.0 - half));
      c.hi.push_back(h * (1.0 + half));
    }
    log_sum += lk;
  }
  if (axis == HillAxis::Threshold) {
    // Ascending thresholds for plotting.
    std::reverse(c.xs.begin(), c.xs.end());
    std::reverse(c.ys.begin(), c.ys.end());
    std::reverse(c.lo.begin(), c.lo.end());
    std::reverse(c.hi.begin(), c.hi.end());
  }
  return c;
}

CurvePoints qq_exponential(std::span<const double> data) {
  CurvePoints c;
  c.kind = CurveKind::QqExponential;
  c.ys.assign(data.begin(), data.end());
  std::sort(c.ys.begin(), c.ys.end());
  const double n = static_cast<double>(c.ys.size());
  c.xs.resize(c.ys.size());
  for (std::size_t i = 0; i < c.xs.size(); ++i) {
    const double p = (static_cast<double>(i) + 0.5) / n;
    c.xs[i] = -std::log1p(-p);
  }
  return c;
}

std::vector<std::size_t> dfa_default_windows(std::size_t n) {
  std::vector<std::size_t> w;
  const double top = static_cast<double>(n) / 4.0;
  for (double x = 8.0; x <= top + 1e-9; x *= std::sqrt(2.0)) {
    const auto r = static_cast<std::size_t>(std::llround(x));
    if (static_cast<double>(r) > top) break;
    if (w.empty() || r != w.back()) w.push_back(r);
  }
  return w;
}

DfaResult hurst_dfa(std::span<const double> series, std::span<const std::size_t> windows) {
  require(windows.size() >= 4, "hurst_dfa: need at least 4 window sizes");
  const std::size_t n = series.size();
  for (std::size_t w : windows) {
    require(w >= 3, "hurst_dfa: windows must have at least 3 points");
    require(n >= 4 * w, "hurst_dfa: series shorter than 4 x window");
  }
  double mean = 0.0;
  for (double v : series) mean += v;
  mean /= static_cast<double>(n);
  std::vector<double> profile(n);
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += series[i] - mean;
    profile[i] = acc;
  }

  DfaResult out;
  out.curve.kind = CurveKind::DfaLogLog;
  for (std::size_t w : windows) {
    const std::size_t segs = n / w;
    // Abscissae 0..w-1 are shared by every segment.
    const double wd = static_cast<double>(w);
    const double tbar = (wd - 1.0) / 2.0;
    const double stt = wd * (wd * wd - 1.0) / 12.0;
    double sse = 0.0;
    for (std::size_t sidx = 0; sidx < segs; ++sidx) {
      const double* y = profile.data() + sidx * w;
      double ybar = 0.0;
      for (std::size_t t = 0; t < w; ++t) ybar += y[t];
      ybar /= wd;
      double sty = 0.0;
      for (std::size_t t = 0; t < w; ++t) sty += (static_cast<double>(t) - tbar) * (y[t] - ybar);
      const double slope = sty / stt;
      for (std::size_t t = 0; t < w; ++t) {
        const double r = y[t] - ybar - slope * (static_cast<double>(t) - tbar);
        sse += r * r;
      }
    }
    const double f = std::sqrt(sse / static_cast<double>(segs * w));
    if (!(f > 0.0)) fail(ErrorCode::Domain, "degenerate series");
    out.curve.xs.push_back(std::log(wd));
    out.curve.ys.push_back(std::log(f));
  }
  out.hurst = ls_slope(out.curve.xs, out.curve.ys);
  return out;
}

DfaResult hurst_dfa(std::span<const double> series) {
  const std::vector<std::size_t> w = dfa_default_windows(series.size());
  return hurst_dfa(series, w);
}

HeatMap hourly_median_matrix(std::span<const VolumeSeries> series) {
  HeatMap hm;
  if (series.empty()) return hm;
  const SeriesKey& k0 = series.front().key;
  for (const auto& s : series) {
    if (s.key.resolution_s != k0.resolution_s) {
      fail(ErrorCode::InvalidArgument, "hourly_median_matrix: mixed resolutions");
    }
    require(s.key.asset == k0.asset && s.key.side == k0.side && s.key.level == k0.level,
            "hourly_median_matrix: series must share asset, side and level");
  }
  std::map<std::string, std::map<int, std::vector<double>>> by_day;
  int hmin = 24, hmax = -1;
  for (const auto& s : series) {
    auto& day = by_day[format_date(s.key.trading_day)];
    for (std::size_t i = 0; i < s.timestamps.size(); ++i) {
      const int h = static_cast<int>(s.timestamps[i] / 3600);
      day[h].push_back(s.values[i]);
      hmin = std::min(hmin, h);
      hmax = std::max(hmax, h);
    }
  }
  for (const auto& [d, _] : by_day) hm.days.push_back(d);
  if (hmax < hmin) return hm;
  for (int h = hmin; h <= hmax; ++h) {
    hm.hours.push_back(h);
    std::vector<double> row;
    for (const auto& [d, hours] : by_day) {
      auto it = hours.find(h);
      row.push_back(it == hours.end() ? kNaN : num::median(it->second));
    }
    hm.cells.push_back(std::move(row));
  }
  return hm;
}

}  // namespace lobtail
