#include "report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

namespace lobtail::report {

std::string num(double v) {
  if (std::isnan(v)) return "NA";
  if (std::isinf(v)) return v > 0 ? "Inf" : "-Inf";
  if (v == 0.0) return "0";  // folds -0
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

Json jnum(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v == 0.0 ? Json(0.0) : Json(v);
}

Csv::Csv(std::initializer_list<std::string_view> header) : width_(header.size()) {
  bool first = true;
  for (auto h : header) {
    if (!first) text_ += ',';
    text_ += h;
    first = false;
  }
  text_ += '\n';
}

Csv& Csv::row(const std::vector<std::string>& cells) {
  require(cells.size() == width_, "csv row width mismatch");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) text_ += ',';
    text_ += cells[i];
  }
  text_ += '\n';
  return *this;
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::Io, "cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) fail(ErrorCode::Io, "write failed for " + path.string());
}

void write_json(const std::filesystem::path& path, const Json& doc) {
  write_file(path, doc.dump(2) + "\n");
}

Json to_json(const FitResult& fit) {
  Json j;
  j["family"] = std::string(to_string(fit.family));
  j["method"] = std::string(to_string(fit.method));
  Json params = Json::object();
  for (const auto& [name, value] : fit.named_params()) params[name] = jnum(value);
  j["params"] = params;
  j["sample_size"] = fit.sample_size;
  j["converged"] = fit.converged;
  j["ks_statistic"] = fit.ks_statistic ? jnum(*fit.ks_statistic) : Json(nullptr);
  j["ks_pvalue"] = fit.ks_pvalue ? jnum(*fit.ks_pvalue) : Json(nullptr);
  if (fit.covariance) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < fit.covariance->n; ++r) {
      Json row = Json::array();
      for (std::size_t c = 0; c < fit.covariance->n; ++c) row.push_back(jnum((*fit.covariance)(r, c)));
      rows.push_back(row);
    }
    j["covariance"] = rows;
  } else {
    j["covariance"] = nullptr;
  }
  j["notes"] = fit.notes;
  return j;
}

Json to_json(const DescriptiveStats& s) {
  Json j;
  j["max"] = jnum(s.max);
  j["min"] = jnum(s.min);
  j["median"] = jnum(s.median);
  j["mean"] = jnum(s.mean);
  j["std"] = jnum(s.std);
  j["kurtosis"] = jnum(s.kurtosis);
  j["skew"] = jnum(s.skew);
  return j;
}

Json sample_meta(const PreparedSample& s) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = std::string(to_string(s.kind));
  j["size"] = s.data.size();
  j["asset"] = s.provenance.asset;
  j["trading_day"] = format_date(s.provenance.trading_day);
  j["side"] = std::string(to_string(s.provenance.side));
  j["level"] = s.provenance.level;
  j["resolution_s"] = s.provenance.resolution_s;
  j["block_len"] = s.block_len ? Json(*s.block_len) : Json(nullptr);
  j["threshold"] = s.threshold ? jnum(*s.threshold) : Json(nullptr);
  j["threshold_percentile"] = s.threshold_percentile ? jnum(*s.threshold_percentile) : Json(nullptr);
  j["exceedances"] = s.exceedances ? Json(*s.exceedances) : Json(nullptr);
  return j;
}

std::string series_csv(const VolumeSeries& s) {
  Csv csv{"time_s", "volume"};
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    csv.row({std::to_string(s.timestamps[i]), num(s.values[i])});
  }
  return csv.str();
}

std::string sample_csv(const PreparedSample& s) {
  Csv csv{"index", "value"};
  for (std::size_t i = 0; i < s.data.size(); ++i) csv.row({std::to_string(i), num(s.data[i])});
  return csv.str();
}

std::string curve_csv(const CurvePoints& c) {
  if (!c.lo.empty()) {
    Csv csv{"x", "y", "lo", "hi"};
    for (std::size_t i = 0; i < c.xs.size(); ++i) {
      csv.row({num(c.xs[i]), num(c.ys[i]), num(c.lo[i]), num(c.hi[i])});
    }
    return csv.str();
  }
  Csv csv{"x", "y"};
  for (std::size_t i = 0; i < c.xs.size(); ++i) csv.row({num(c.xs[i]), num(c.ys[i])});
  return csv.str();
}

std::string percentile_csv(const std::vector<PercentileRow>& rows) {
  Csv csv{"p", "empirical_quantile", "model_cdf"};
  for (const auto& r : rows) csv.row({num(r.p), num(r.empirical_quantile), num(r.model_cdf)});
  return csv.str();
}

std::string heatmap_csv(const HeatMap& h) {
  std::string out = "hour";
  for (const auto& d : h.days) out += "," + d;
  out += '\n';
  for (std::size_t r = 0; r < h.hours.size(); ++r) {
    out += std::to_string(h.hours[r]);
    for (double v : h.cells[r]) out += "," + num(v);
    out += '\n';
  }
  return out;
}

std::string study_csv(const StudyResult& r) {
  Csv csv{"scenario", "method", "param", "truth", "replicates", "failures",
          "mean", "bias", "variance", "median", "sd"};
  for (const auto& row : r.rows) {
    csv.row({row.scenario, row.method, row.param, num(row.truth), std::to_string(row.replicates),
             std::to_string(row.failures), num(row.mean), num(row.bias), num(row.variance),
             num(row.median), num(row.sd)});
  }
  return csv.str();
}

Json study_json(const StudyResult& r) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["study"] = r.study;
  j["seed"] = r.seed;
  j["rows"] = r.rows.size();
  Json anchors = Json::array();
  bool all = true;
  for (const auto& a : r.anchors) {
    anchors.push_back({{"name", a.name}, {"claim", a.claim}, {"passed", a.passed},
                       {"detail", a.detail}});
    all = all && a.passed;
  }
  j["anchors"] = anchors;
  j["all_passed"] = all;
  return j;
}

}  // namespace lobtail::report
