#include "lobtail/pipeline.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>

#include "lobtail/diagnostics.hpp"
#include "lobtail/gof.hpp"
#include "lobtail/stable.hpp"
#include "numeric.hpp"
#include "report.hpp"

namespace lobtail {

namespace fs = std::filesystem;
using report::Json;

std::vector<EstimatorSpec> default_estimators() {
  return {{Family::Stable, Method::McCulloch}, {Family::Gev, Method::Mle},
          {Family::Gev, Method::MixedLMoments}, {Family::Gpd, Method::Mle},
          {Family::Gpd, Method::Pickands},      {Family::Gpd, Method::Epm}};
}

// ---------------------------------------------------------------------------
// Config
// ---------------------------------------------------------------------------

namespace {

[[noreturn]] void config_error(const std::string& what) { fail(ErrorCode::Config, "config: " + what); }

// "HH:MM" or "HH:MM:SS" -> seconds since midnight.
std::int64_t parse_clock(const std::string& s) {
  int h = 0, m = 0, sec = 0;
  char c1 = 0, c2 = 0;
  std::istringstream in(s);
  in >> h >> c1 >> m;
  if (!in || c1 != ':') config_error("bad time of day '" + s + "'");
  if (in >> c2) {
    if (c2 != ':' || !(in >> sec)) config_error("bad time of day '" + s + "'");
  }
  if (h < 0 || h > 24 || m < 0 || m > 59 || sec < 0 || sec > 59) {
    config_error("bad time of day '" + s + "'");
  }
  return h * 3600 + m * 60 + sec;
}

template <class T>
T get_or(const Json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    config_error(std::string("field '") + key + "' has the wrong type");
  }
}

std::pair<double, double> bounds(const Json& j, const char* key, std::pair<double, double> dflt) {
  if (!j.contains(key)) return dflt;
  const auto v = get_or<std::vector<double>>(j, key, {});
  if (v.size() != 2 || !(v[0] < v[1])) config_error(std::string("'") + key + "' must be [lo, hi] with lo < hi");
  return {v[0], v[1]};
}

}  // namespace

RunConfig parse_run_config(std::string_view json_text, const fs::path& base_dir) {
  Json j;
  try {
    j = Json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    config_error(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) config_error("top level must be an object");
  static const std::vector<std::string> kKnown = {
      "input_dir", "output_dir", "assets", "resolutions", "sides", "levels", "block_length",
      "pot_percentile", "estimators", "gev_mle_bounds", "gev_mixed_bounds", "epm",
      "stable_iqr_scaling", "seed", "jobs"};
  for (const auto& [key, _] : j.items()) {
    if (std::find(kKnown.begin(), kKnown.end(), key) == kKnown.end()) {
      config_error("unknown field '" + key + "'");
    }
  }

  RunConfig cfg;
  auto resolve = [&](const char* key) {
    if (!j.contains(key)) config_error(std::string("missing '") + key + "'");
    fs::path p = get_or<std::string>(j, key, "");
    return p.is_absolute() ? p : base_dir / p;
  };
  cfg.input_dir = resolve("input_dir");
  cfg.output_dir = resolve("output_dir");

  if (!j.contains("assets") || !j["assets"].is_array()) config_error("'assets' must be an array");
  for (const auto& a : j["assets"]) {
    AssetConfig ac;
    ac.name = get_or<std::string>(a, "name", "");
    if (ac.name.empty()) config_error("asset without a name");
    ac.hours.open_s = parse_clock(get_or<std::string>(a, "open", "00:00"));
    ac.hours.close_s = parse_clock(get_or<std::string>(a, "close", "24:00"));
    for (const auto& d : get_or<std::vector<std::string>>(a, "holidays", {})) {
      try {
        ac.holidays.push_back(parse_date(d));
      } catch (const Error& e) {
        config_error(e.what());
      }
    }
    cfg.assets.push_back(std::move(ac));
  }

  cfg.resolutions = get_or(j, "resolutions", cfg.resolutions);
  if (j.contains("sides")) {
    cfg.sides.clear();
    for (const auto& s : get_or<std::vector<std::string>>(j, "sides", {})) {
      try {
        cfg.sides.push_back(parse_side(s));
      } catch (const Error& e) {
        config_error(e.what());
      }
    }
  }
  cfg.levels = get_or(j, "levels", cfg.levels);
  cfg.block_length = get_or(j, "block_length", cfg.block_length);
  cfg.pot_percentile = get_or(j, "pot_percentile", cfg.pot_percentile);

  if (j.contains("estimators")) {
    const Json& e = j["estimators"];
    if (!e.is_object()) config_error("'estimators' must map family -> [methods]");
    cfg.estimators.clear();
    for (const auto& [fam, methods] : e.items()) {
      try {
        const Family f = parse_family(fam);
        for (const auto& m : methods.get<std::vector<std::string>>()) {
          const EstimatorSpec spec{f, parse_method(m)};
          if (!is_supported(spec.family, spec.method)) {
            config_error("method '" + m + "' is not available for family '" + fam + "'");
          }
          if (std::find(cfg.estimators.begin(), cfg.estimators.end(), spec) == cfg.estimators.end()) {
            cfg.estimators.push_back(spec);
          }
        }
      } catch (const Error& err) {
        if (err.code() == ErrorCode::Config) throw;
        config_error(err.what());
      } catch (const nlohmann::json::exception&) {
        config_error("'estimators." + fam + "' must be a list of method names");
      }
    }
  }

  std::tie(cfg.gev_mle.gamma_lo, cfg.gev_mle.gamma_hi) =
      bounds(j, "gev_mle_bounds", {cfg.gev_mle.gamma_lo, cfg.gev_mle.gamma_hi});
  std::tie(cfg.gev_mixed.gamma_lo, cfg.gev_mixed.gamma_hi) =
      bounds(j, "gev_mixed_bounds", {cfg.gev_mixed.gamma_lo, cfg.gev_mixed.gamma_hi});
  if (j.contains("epm")) {
    const Json& e = j["epm"];
    cfg.epm.start_percentile = get_or(e, "start_percentile", cfg.epm.start_percentile);
    cfg.epm.eta = get_or(e, "eta", cfg.epm.eta);
    cfg.epm.zeta = get_or(e, "zeta", cfg.epm.zeta);
    cfg.epm.max_pairs = get_or(e, "max_pairs", cfg.epm.max_pairs);
  }
  cfg.stable_iqr_scaling = get_or(j, "stable_iqr_scaling", cfg.stable_iqr_scaling);
  cfg.seed = get_or(j, "seed", cfg.seed);
  cfg.jobs = get_or(j, "jobs", cfg.jobs);
  validate(cfg);
  return cfg;
}

RunConfig load_run_config(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) config_error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_run_config(buf.str(), path.parent_path());
}

void validate(const RunConfig& cfg) {
  if (cfg.assets.empty()) config_error("at least one asset is required");
  for (const auto& a : cfg.assets) {
    if (!(a.hours.open_s >= 0 && a.hours.open_s < a.hours.close_s && a.hours.close_s <= 86400)) {
      config_error("asset " + a.name + ": need 0 <= open < close <= 24:00");
    }
  }
  if (cfg.resolutions.empty()) config_error("at least one resolution is required");
  for (int r : cfg.resolutions) {
    if (r <= 0) config_error("resolutions must be positive");
  }
  if (cfg.sides.empty()) config_error("at least one side is required");
  if (cfg.levels.empty()) config_error("at least one level is required");
  for (int l : cfg.levels) {
    if (l < 1 || l > 5) config_error("levels must lie in [1,5]");
  }
  if (cfg.block_length < 1) config_error("block_length must be >= 1");
  if (!(cfg.pot_percentile > 0.0 && cfg.pot_percentile < 1.0)) {
    config_error("pot_percentile must lie in (0,1)");
  }
  if (cfg.estimators.empty()) config_error("at least one estimator must be enabled");
  if (!(cfg.epm.start_percentile >= 0.0 && cfg.epm.start_percentile < 1.0)) {
    config_error("epm.start_percentile must lie in [0,1)");
  }
}

bool DayRange::contains(Date d) const {
  return (!first || d >= *first) && (!last || d <= *last);
}

DayRange parse_day_range(std::string_view text) {
  DayRange r;
  const auto dots = text.find("..");
  if (dots == std::string_view::npos) {
    r.first = r.last = parse_date(text);
    return r;
  }
  const auto a = text.substr(0, dots), b = text.substr(dots + 2);
  if (!a.empty()) r.first = parse_date(a);
  if (!b.empty()) r.last = parse_date(b);
  require(!(r.first && r.last && *r.last < *r.first), "day range ends before it starts");
  return r;
}

// ---------------------------------------------------------------------------
// Pipeline
// ---------------------------------------------------------------------------

namespace {

struct DayJob {
  const AssetConfig* asset;
  Date day;
  fs::path file;
};

struct SeriesOutcome {
  SeriesKey key;
  std::optional<VolumeSeries> series;
  std::vector<std::pair<EstimatorSpec, std::optional<FitResult>>> fits;
};

struct DayOutcome {
  bool fatal = false;
  std::vector<std::string> errors;
  std::vector<SeriesOutcome> series;
};

std::string series_dir_name(const SeriesKey& k) {
  return std::string(to_string(k.side)) + "_L" + std::to_string(k.level) + "_" +
         std::to_string(k.resolution_s) + "s";
}

// FNV-1a; stable across platforms so per-series seeds do not depend on which
// days were selected.
std::uint64_t stable_hash(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

Json key_json(const SeriesKey& k) {
  return {{"asset", k.asset}, {"trading_day", format_date(k.trading_day)},
          {"side", std::string(to_string(k.side))}, {"level", k.level},
          {"resolution_s", k.resolution_s}};
}

FitResult fit_one(const EstimatorSpec& spec, std::span<const double> data, const RunConfig& cfg,
                  std::uint64_t seed) {
  switch (spec.family) {
    case Family::Stable:
      return fit_mcculloch(data, {.iqr_scaling = cfg.stable_iqr_scaling, .refine = true});
    case Family::Gev:
      switch (spec.method) {
        case Method::Mle: return fit_gev_mle(data, cfg.gev_mle);
        case Method::MixedLMoments: return fit_gev_mixed(data, cfg.gev_mixed);
        case Method::LMoments: return fit_gev_lmom(data);
        default: break;
      }
      break;
    case Family::Gpd:
      switch (spec.method) {
        case Method::Mle: return fit_gpd_mle(data);
        case Method::Mom: return fit_gpd_mom(data);
        case Method::Pickands: return fit_gpd_pickands(data);
        case Method::Epm: {
          EpmOptions o = cfg.epm;
          o.seed = seed;
          return fit_gpd_epm(data, o);
        }
        default: break;
      }
      break;
  }
  fail(ErrorCode::InvalidArgument, "unsupported estimator");
}

// Diagnostics for one series; individual failures become entries in "errors".
Json run_diagnostics(const VolumeSeries& s, const fs::path& dir) {
  Json j;
  j["schema_version"] = report::kSchemaVersion;
  j["series"] = key_json(s.key);
  j["size"] = s.values.size();
  Json errors = Json::array();
  Json warnings = Json::array();
  auto guarded = [&](const char* what, auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      errors.push_back(std::string(what) + ": " + e.what());
    }
  };
  auto emit = [&](const CurvePoints& c) {
    report::write_file(dir / ("curve_" + std::string(to_string(c.kind)) + ".csv"),
                       report::curve_csv(c));
    for (const auto& w : c.warnings) warnings.push_back(std::string(to_string(c.kind)) + ": " + w);
  };
  j["descriptive"] = nullptr;
  guarded("descriptive", [&] { j["descriptive"] = report::to_json(descriptive(s.values)); });
  guarded("mean_excess", [&] { emit(mean_excess_curve(s.values)); });
  guarded("hill", [&] {
    std::vector<double> pos;
    for (double v : s.values) {
      if (v > 0.0) pos.push_back(v);
    }
    if (pos.size() < s.values.size()) {
      warnings.push_back("hill: " + std::to_string(s.values.size() - pos.size()) +
                         " non-positive values excluded");
    }
    emit(hill_curve(pos, std::min<std::size_t>(pos.size(), 2000)));
  });
  guarded("qq_exponential", [&] { emit(qq_exponential(s.values)); });
  j["hurst"] = nullptr;
  guarded("dfa", [&] {
    const DfaResult d = hurst_dfa(s.values);
    j["hurst"] = report::jnum(d.hurst);
    emit(d.curve);
  });
  j["warnings"] = warnings;
  j["errors"] = errors;
  return j;
}

SeriesOutcome run_series(const std::vector<TickRecord>& ticks, const SeriesKey& key,
                         const AssetConfig& asset, const RunConfig& cfg, const fs::path& dir,
                         std::vector<std::string>& errors) {
  SeriesOutcome out;
  out.key = key;
  const std::string label = asset.name + "/" + format_date(key.trading_day) + "/" + series_dir_name(key);
  try {
    out.series = subsample_last(ticks, key, asset.hours);
  } catch (const Error& e) {
    errors.push_back(label + ": " + e.what());
    return out;
  }
  const VolumeSeries& s = *out.series;
  report::write_file(dir / "series.csv", report::series_csv(s));
  report::write_json(dir / "diagnostics.json", run_diagnostics(s, dir));

  std::map<SampleKind, std::optional<PreparedSample>> samples;
  Json sample_errors = Json::object();
  auto prepare = [&](SampleKind kind, auto&& fn) {
    try {
      PreparedSample p = fn();
      const std::string stem = "sample_" + std::string(to_string(kind));
      report::write_file(dir / (stem + ".csv"), report::sample_csv(p));
      report::write_json(dir / (stem + ".json"), report::sample_meta(p));
      samples[kind] = std::move(p);
    } catch (const Error& e) {
      samples[kind] = std::nullopt;
      sample_errors[std::string(to_string(kind))] = e.what();
    }
  };
  prepare(SampleKind::Full, [&] { return full_sample(s); });
  prepare(SampleKind::BlockMaxima, [&] { return block_maxima(s, cfg.block_length); });
  prepare(SampleKind::PotExceedances, [&] { return pot_exceedances(s, cfg.pot_percentile); });

  const std::uint64_t seed = derive_seed(cfg.seed, stable_hash(label));
  Json fits = Json::array();
  for (const auto& spec : cfg.estimators) {
    const SampleKind kind = spec.family == Family::Stable ? SampleKind::Full
                            : spec.family == Family::Gev  ? SampleKind::BlockMaxima
                                                          : SampleKind::PotExceedances;
    Json entry;
    entry["family"] = std::string(to_string(spec.family));
    entry["method"] = std::string(to_string(spec.method));
    entry["sample"] = std::string(to_string(kind));
    const auto& sample = samples[kind];
    if (!sample) {
      entry["error"] = "sample unavailable: " + sample_errors[std::string(to_string(kind))].get<std::string>();
      fits.push_back(entry);
      out.fits.emplace_back(spec, std::nullopt);
      continue;
    }
    try {
      FitResult fit = fit_one(spec, sample->data, cfg, seed);
      const Cdf cdf = fitted_cdf(fit);
      const KsResult ks = ks_statistic(sample->data, cdf);
      fit.ks_statistic = ks.statistic;
      fit.ks_pvalue = ks.pvalue;
      const auto probes = default_probes();
      report::write_file(
          dir / ("gof_" + std::string(to_string(spec.family)) + "_" +
                 std::string(to_string(spec.method)) + ".csv"),
          report::percentile_csv(percentile_comparison(sample->data, cdf, probes)));
      Json fj = report::to_json(fit);
      fj["sample"] = entry["sample"];
      fits.push_back(fj);
      out.fits.emplace_back(spec, std::move(fit));
    } catch (const Error& e) {
      entry["error"] = e.what();
      fits.push_back(entry);
      out.fits.emplace_back(spec, std::nullopt);
    }
  }
  Json doc;
  doc["schema_version"] = report::kSchemaVersion;
  doc["series"] = key_json(key);
  doc["sample_errors"] = sample_errors;
  doc["fits"] = fits;
  report::write_json(dir / "fits.json", doc);
  return out;
}

DayOutcome run_day(const DayJob& job, const RunConfig& cfg) {
  DayOutcome out;
  const std::string day = format_date(job.day);
  const fs::path day_dir = cfg.output_dir / job.asset->name / day;
  TickFile tf;
  try {
    tf = parse_tick_file(job.file);
  } catch (const Error& e) {
    out.fatal = true;
    out.errors.push_back(job.asset->name + "/" + day + ": " + e.what());
    Json j;
    j["schema_version"] = report::kSchemaVersion;
    j["asset"] = job.asset->name;
    j["trading_day"] = day;
    j["fatal"] = e.what();
    report::write_json(day_dir / "ingest.json", j);
    return out;
  }
  Json ingest;
  ingest["schema_version"] = report::kSchemaVersion;
  ingest["asset"] = job.asset->name;
  ingest["trading_day"] = day;
  ingest["rows"] = tf.report.rows;
  ingest["records"] = tf.records.size();
  ingest["malformed"] = tf.report.malformed;
  ingest["malformed_samples"] = tf.report.samples;
  report::write_json(day_dir / "ingest.json", ingest);

  for (int res : cfg.resolutions) {
    for (Side side : cfg.sides) {
      for (int level : cfg.levels) {
        SeriesKey key{job.asset->name, job.day, side, level, res};
        out.series.push_back(
            run_series(tf.records, key, *job.asset, cfg, day_dir / series_dir_name(key), out.errors));
      }
    }
  }
  return out;
}

std::vector<DayJob> discover_days(const RunConfig& cfg, const DayRange& range) {
  if (!fs::is_directory(cfg.input_dir)) {
    fail(ErrorCode::Io, "input directory not found: " + cfg.input_dir.string());
  }
  std::vector<DayJob> jobs;
  for (const auto& asset : cfg.assets) {
    const fs::path dir = cfg.input_dir / asset.name;
    if (!fs::is_directory(dir)) fail(ErrorCode::Io, "no input directory for asset " + asset.name);
    for (const auto& entry : fs::directory_iterator(dir)) {
      if (!entry.is_regular_file() || entry.path().extension() != ".csv") continue;
      Date d;
      try {
        d = parse_date(entry.path().stem().string());
      } catch (const Error&) {
        continue;
      }
      if (!range.contains(d)) continue;
      if (std::find(asset.holidays.begin(), asset.holidays.end(), d) != asset.holidays.end()) continue;
      jobs.push_back({&asset, d, entry.path()});
    }
  }
  std::sort(jobs.begin(), jobs.end(), [](const DayJob& a, const DayJob& b) {
    return std::tie(a.asset->name, a.day) < std::tie(b.asset->name, b.day);
  });
  return jobs;
}

// One row per trading day, one column per (side, level).
void write_parameter_series(const RunConfig& cfg, const std::vector<DayJob>& jobs,
                            const std::vector<DayOutcome>& days) {
  struct Cell {
    std::string day;
    std::string column;
    double value;
  };
  // (asset, family, method, param, res) -> cells
  std::map<std::tuple<std::string, std::string, std::string, std::string, int>, std::vector<Cell>> table;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    for (const auto& so : days[i].series) {
      const std::string column =
          std::string(to_string(so.key.side)) + "_L" + std::to_string(so.key.level);
      for (const auto& [spec, fit] : so.fits) {
        if (!fit) continue;
        for (const auto& [name, value] : fit->named_params()) {
          table[{so.key.asset, std::string(to_string(spec.family)), std::string(to_string(spec.method)),
                 name, so.key.resolution_s}]
              .push_back({format_date(so.key.trading_day), column, value});
        }
      }
    }
  }
  std::vector<std::string> columns;
  for (Side s : cfg.sides) {
    for (int l : cfg.levels) columns.push_back(std::string(to_string(s)) + "_L" + std::to_string(l));
  }
  for (const auto& [k, cells] : table) {
    const auto& [asset, family, method, param, res] = k;
    std::map<std::string, std::map<std::string, double>> rows;
    for (const auto& c : cells) rows[c.day][c.column] = c.value;
    std::string text = "trading_day";
    for (const auto& c : columns) text += "," + c;
    text += '\n';
    for (const auto& [day, vals] : rows) {
      text += day;
      for (const auto& c : columns) {
        auto it = vals.find(c);
        text += "," + (it == vals.end() ? std::string("NA") : report::num(it->second));
      }
      text += '\n';
    }
    report::write_file(cfg.output_dir / "params" / asset /
                           ("params_" + family + "_" + method + "_" + param + "_" +
                            std::to_string(res) + "s.csv"),
                       text);
  }
}

void write_heatmaps(const RunConfig& cfg, const std::vector<DayOutcome>& days,
                    std::vector<std::string>& errors) {
  std::map<std::tuple<std::string, int, Side, int>, std::vector<VolumeSeries>> groups;
  for (const auto& d : days) {
    for (const auto& so : d.series) {
      if (!so.series) continue;
      groups[{so.key.asset, so.key.resolution_s, so.key.side, so.key.level}].push_back(*so.series);
    }
  }
  for (const auto& [k, series] : groups) {
    const auto& [asset, res, side, level] = k;
    try {
      const HeatMap h = hourly_median_matrix(series);
      report::write_file(cfg.output_dir / "heatmaps" / (std::to_string(res) + "s") /
                             ("heatmap_" + asset + "_" + std::string(to_string(side)) + "_" +
                              std::to_string(level) + ".csv"),
                         report::heatmap_csv(h));
    } catch (const Error& e) {
      errors.push_back(asset + ": heatmap: " + e.what());
    }
  }
}

}  // namespace

RunSummary run_pipeline(const RunConfig& cfg, const DayRange& range) {
  validate(cfg);
  const std::vector<DayJob> jobs = discover_days(cfg, range);
  fs::create_directories(cfg.output_dir);

  std::vector<DayOutcome> days(jobs.size());
  const unsigned threads = cfg.jobs == 0 ? num::default_jobs() : cfg.jobs;
  num::parallel_for(jobs.size(), threads, [&](std::size_t i) {
    try {
      days[i] = run_day(jobs[i], cfg);
    } catch (const std::exception& e) {
      days[i].fatal = true;
      days[i].errors.push_back(jobs[i].asset->name + "/" + format_date(jobs[i].day) + ": " + e.what());
    }
  });

  RunSummary sum;
  sum.days = jobs.size();
  Json day_list = Json::array();
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const DayOutcome& d = days[i];
    std::size_t ok = 0, bad = 0;
    for (const auto& so : d.series) {
      if (so.series) ++sum.series;
      for (const auto& f : so.fits) (f.second ? ok : bad)++;
    }
    sum.fits_ok += ok;
    sum.fits_failed += bad;
    if (d.fatal) ++sum.days_failed;
    sum.errors.insert(sum.errors.end(), d.errors.begin(), d.errors.end());
    day_list.push_back({{"asset", jobs[i].asset->name},
                        {"trading_day", format_date(jobs[i].day)},
                        {"fatal", d.fatal},
                        {"fits_ok", ok},
                        {"fits_failed", bad},
                        {"errors", d.errors}});
  }
  write_heatmaps(cfg, days, sum.errors);
  write_parameter_series(cfg, jobs, days);

  sum.exit_code = (sum.days_failed > 0 || sum.fits_ok == 0) ? 1 : 0;
  Json j;
  j["schema_version"] = report::kSchemaVersion;
  j["seed"] = cfg.seed;
  j["days"] = sum.days;
  j["days_failed"] = sum.days_failed;
  j["series"] = sum.series;
  j["fits_ok"] = sum.fits_ok;
  j["fits_failed"] = sum.fits_failed;
  j["exit_code"] = sum.exit_code;
  j["per_day"] = day_list;
  j["errors"] = sum.errors;
  report::write_json(cfg.output_dir / "summary.json", j);
  return sum;
}

// ---------------------------------------------------------------------------
// Studies
// ---------------------------------------------------------------------------

std::string_view to_string(Study s) {
  switch (s) {
    case Study::GevCompare: return "gev_compare";
    case Study::GpdCompare: return "gpd_compare";
    case Study::KsCase: return "ks_case";
  }
  return "?";
}

Study parse_study(std::string_view name) {
  std::string norm;
  for (char c : name) {
    if (c != '_' && c != '-') norm += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  if (norm == "gevcompare") return Study::GevCompare;
  if (norm == "gpdcompare") return Study::GpdCompare;
  if (norm == "kscase") return Study::KsCase;
  fail(ErrorCode::InvalidArgument,
       "unknown study '" + std::string(name) + "' (expected gev_compare, gpd_compare or ks_case)");
}

StudyResult run_simstudy(Study study, const StudyOverrides& o) {
  StudyResult res;
  switch (study) {
    case Study::GevCompare: {
      GevStudyConfig c;
      if (o.seed) c.seed = *o.seed;
      if (o.replicates) c.replicates = *o.replicates;
      c.jobs = o.jobs;
      res = gev_method_comparison(c);
      break;
    }
    case Study::GpdCompare: {
      GpdStudyConfig c;
      if (o.seed) c.seed = *o.seed;
      if (o.replicates) c.replicates = *o.replicates;
      c.jobs = o.jobs;
      res = gpd_method_comparison(c);
      break;
    }
    case Study::KsCase: {
      KsStudyConfig c;
      if (o.seed) c.seed = *o.seed;
      if (o.replicates) c.replicates = *o.replicates;
      c.jobs = o.jobs;
      res = ks_case_study(c);
      break;
    }
  }
  const fs::path dir = o.output_dir / std::string(to_string(study));
  report::write_file(dir / "table.csv", report::study_csv(res));
  report::write_json(dir / "summary.json", report::study_json(res));
  return res;
}

}  // namespace lobtail
