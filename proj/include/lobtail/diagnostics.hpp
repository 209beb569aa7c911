#pragma once

#include <span>
#include <string>
#include <vector>

#include "lobtail/core.hpp"

namespace lobtail {

struct DescriptiveStats {
  double max = 0.0;
  double min = 0.0;
  double median = 0.0;
  double mean = 0.0;
  double std = 0.0;       // n - 1 denominator
  double kurtosis = 0.0;  // non-excess; NaN when std == 0
  double skew = 0.0;      // NaN when std == 0
};

// Requires n >= 4.
DescriptiveStats descriptive(std::span<const double> data);

enum class CurveKind { MeanExcess, Hill, QqExponential, DfaLogLog };
std::string_view to_string(CurveKind k);

struct CurvePoints {
  CurveKind kind = CurveKind::MeanExcess;
  std::vector<double> xs;
  std::vector<double> ys;
  std::vector<double> lo;  // Hill only: pointwise 95% band
  std::vector<double> hi;
  std::vector<std::string> warnings;
};

// Thresholds at or above max(data) are dropped with a warning.
CurvePoints mean_excess_curve(std::span<const double> data, std::span<const double> thresholds);
// Default grid: sorted unique values without the top three order statistics.
CurvePoints mean_excess_curve(std::span<const double> data);

enum class HillAxis { Count, Threshold };

// EVI-scale Hill statistic H_k for k = 3..k_max on descending order
// statistics. With HillAxis::Threshold xs holds x_(k) instead of k.
CurvePoints hill_curve(std::span<const double> data, std::size_t k_max,
                       HillAxis axis = HillAxis::Count);

CurvePoints qq_exponential(std::span<const double> data);

struct DfaResult {
  double hurst = 0.0;
  CurvePoints curve;  // ln w vs ln F(w)
};

// DFA-1 over the given window lengths (at least four).
DfaResult hurst_dfa(std::span<const double> series, std::span<const std::size_t> windows);
// Geometric grid from 8 to n/4 with ratio sqrt(2).
DfaResult hurst_dfa(std::span<const double> series);
std::vector<std::size_t> dfa_default_windows(std::size_t n);

// Hour-of-day by trading-day matrix of medians for one (asset, side, level,
// resolution). Missing cells are NaN.
struct HeatMap {
  std::vector<int> hours;          // rows
  std::vector<std::string> days;   // columns, YYYY-MM-DD
  std::vector<std::vector<double>> cells;  // [hour][day]
};

HeatMap hourly_median_matrix(std::span<const VolumeSeries> series);

}  // namespace lobtail
