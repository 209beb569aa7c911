#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lobtail/core.hpp"

namespace lobtail {

struct TickRecord {
  std::int64_t timestamp_ns = 0;  // since midnight, exchange-local
  Side side = Side::Bid;
  int level = 1;
  double price = 0.0;
  std::int64_t volume = 0;
};

// Header names for the five tick columns; columns are located by name.
struct TickSchema {
  std::string timestamp = "timestamp_ns";
  std::string side = "side";
  std::string level = "level";
  std::string price = "price";
  std::string volume = "volume";
};

struct ParseReport {
  std::size_t rows = 0;       // data rows seen
  std::size_t malformed = 0;  // rows skipped
  std::vector<std::string> samples;  // first few skip reasons, "line N: reason"
};

struct TickFile {
  std::vector<TickRecord> records;
  ParseReport report;
};

// Skips malformed rows (bad fields, level outside [1,5], negative volume,
// decreasing timestamp). Fatal when malformed rows exceed
// max(1, floor(1% of rows)).
TickFile parse_ticks(std::istream& in, const TickSchema& schema = {});
TickFile parse_tick_file(const std::filesystem::path& path, const TickSchema& schema = {});

struct MarketHours {
  std::int64_t open_s = 0;
  std::int64_t close_s = 86400;
};

// Last-volume sampling on the grid open + res, ..., close. Grid points before
// the first tick for (side, level) are dropped. Throws when no tick for the
// key falls inside [open, close].
VolumeSeries subsample_last(std::span<const TickRecord> ticks, const SeriesKey& key,
                            const MarketHours& hours);

enum class SampleKind { Full, BlockMaxima, PotExceedances };
std::string_view to_string(SampleKind k);

struct PreparedSample {
  SampleKind kind = SampleKind::Full;
  std::vector<double> data;
  std::optional<std::size_t> block_len;
  std::optional<double> threshold;
  std::optional<double> threshold_percentile;
  std::optional<std::size_t> exceedances;
  SeriesKey provenance;
};

PreparedSample full_sample(const VolumeSeries& series);
PreparedSample block_maxima(const VolumeSeries& series, std::size_t block_len);
PreparedSample pot_exceedances(const VolumeSeries& series, double threshold_percentile);

}  // namespace lobtail
