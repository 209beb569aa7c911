#pragma once

// Batch orchestration: tick files -> series -> diagnostics, samples, fits,
// goodness of fit -> report tree. Also the study runners behind the CLI.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lobtail/core.hpp"
#include "lobtail/gev.hpp"
#include "lobtail/gpd.hpp"
#include "lobtail/ingest.hpp"
#include "lobtail/simstudy.hpp"

namespace lobtail {

struct AssetConfig {
  std::string name;
  MarketHours hours;
  std::vector<Date> holidays;
};

struct EstimatorSpec {
  Family family;
  Method method;
  friend bool operator==(const EstimatorSpec&, const EstimatorSpec&) = default;
};

// Stable/McCulloch, GEV/MLE, GEV/mixed L-moments, GPD/MLE, GPD/Pickands,
// GPD/EPM.
std::vector<EstimatorSpec> default_estimators();

struct RunConfig {
  std::filesystem::path input_dir;
  std::filesystem::path output_dir;
  std::vector<AssetConfig> assets;
  std::vector<int> resolutions = {10};
  std::vector<Side> sides = {Side::Bid, Side::Ask};
  std::vector<int> levels = {1};
  std::size_t block_length = 30;
  double pot_percentile = 0.8;
  std::vector<EstimatorSpec> estimators = default_estimators();
  GevMleOptions gev_mle;
  GevMixedOptions gev_mixed;
  EpmOptions epm;
  bool stable_iqr_scaling = true;
  std::uint64_t seed = 2010;
  unsigned jobs = 0;  // 0: hardware concurrency
};

// Throws Error{Config}. Relative paths resolve against `base_dir`.
RunConfig parse_run_config(std::string_view json_text, const std::filesystem::path& base_dir);
RunConfig load_run_config(const std::filesystem::path& path);
void validate(const RunConfig& cfg);

// Inclusive; "A..B", "A..", "..B" or a single day "A".
struct DayRange {
  std::optional<Date> first;
  std::optional<Date> last;
  bool contains(Date d) const;
};
DayRange parse_day_range(std::string_view text);

struct RunSummary {
  std::size_t days = 0;
  std::size_t days_failed = 0;
  std::size_t series = 0;
  std::size_t fits_ok = 0;
  std::size_t fits_failed = 0;
  std::vector<std::string> errors;  // "<asset>/<day>: message"
  int exit_code = 0;                // 0 ok, 1 fatal ingestion error or no successful fit
};

RunSummary run_pipeline(const RunConfig& cfg, const DayRange& days = {});

enum class Study { GevCompare, GpdCompare, KsCase };
std::string_view to_string(Study s);
// Accepts "gev_compare", "GevCompare", "gev-compare" and similar spellings.
Study parse_study(std::string_view name);

struct StudyOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> replicates;
  std::filesystem::path output_dir = "simstudy_out";
  unsigned jobs = 0;
};

// Writes <output_dir>/<study>/table.csv and summary.json.
StudyResult run_simstudy(Study study, const StudyOverrides& overrides);

}  // namespace lobtail
