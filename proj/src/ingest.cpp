#include "lobtail/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <string_view>

#include "lobtail/stable.hpp"

namespace lobtail {

namespace {

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(',', start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

template <class T>
bool parse_number(std::string_view s, T& out) {
  if (s.empty()) return false;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc{} && ptr == end;
}

constexpr std::size_t kMaxSamples = 5;

}  // namespace

TickFile parse_ticks(std::istream& in, const TickSchema& schema) {
  std::string line;
  if (!std::getline(in, line)) fail(ErrorCode::Io, "tick file: missing header row");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split(line);
  auto col = [&](const std::string& name) {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) {
      fail(ErrorCode::Io, "tick file: header lacks column '" + name + "'");
    }
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t c_ts = col(schema.timestamp), c_side = col(schema.side),
                    c_level = col(schema.level), c_price = col(schema.price),
                    c_vol = col(schema.volume);

  TickFile out;
  std::size_t line_no = 1;
  std::int64_t last_ts = INT64_MIN;
  auto skip = [&](const std::string& why) {
    ++out.report.malformed;
    if (out.report.samples.size() < kMaxSamples) {
      out.report.samples.push_back("line " + std::to_string(line_no) + ": " + why);
    }
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    ++out.report.rows;
    const auto f = split(line);
    if (f.size() != header.size()) {
      skip("expected " + std::to_string(header.size()) + " fields");
      continue;
    }
    TickRecord r;
    if (!parse_number(f[c_ts], r.timestamp_ns)) {
      skip("bad timestamp");
      continue;
    }
    if (f[c_side] == "B") {
      r.side = Side::Bid;
    } else if (f[c_side] == "A") {
      r.side = Side::Ask;
    } else {
      skip("bad side");
      continue;
    }
    if (!parse_number(f[c_level], r.level) || r.level < 1 || r.level > 5) {
      skip("level outside [1,5]");
      continue;
    }
    if (!parse_number(f[c_price], r.price)) {
      skip("bad price");
      continue;
    }
    if (!parse_number(f[c_vol], r.volume) || r.volume < 0) {
      skip("negative or non-integer volume");
      continue;
    }
    if (r.timestamp_ns < last_ts) {
      skip("timestamp decreases");
      continue;
    }
    last_ts = r.timestamp_ns;
    out.records.push_back(r);
  }
  if (in.bad()) fail(ErrorCode::Io, "tick file: read error");
  const std::size_t allowed = std::max<std::size_t>(1, out.report.rows / 100);
  if (out.report.malformed > allowed) {
    fail(ErrorCode::Io, "tick file: " + std::to_string(out.report.malformed) + " of " +
                            std::to_string(out.report.rows) +
                            " rows malformed (wrong schema?)");
  }
  return out;
}

TickFile parse_tick_file(const std::filesystem::path& path, const TickSchema& schema) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::Io, "cannot open tick file " + path.string());
  try {
    return parse_ticks(in, schema);
  } catch (const Error& e) {
    fail(e.code(), path.string() + ": " + e.what());
  }
}

VolumeSeries subsample_last(std::span<const TickRecord> ticks, const SeriesKey& key,
                            const MarketHours& hours) {
  validate(key);
  require(hours.open_s >= 0 && hours.open_s < hours.close_s && hours.close_s <= 86400,
          "market hours must satisfy 0 <= open < close <= 86400");
  constexpr std::int64_t kNs = 1'000'000'000;
  VolumeSeries out;
  out.key = key;

  bool any_in_hours = false;
  bool have_state = false;
  double state = 0.0;
  std::size_t i = 0;
  for (std::int64_t t = hours.open_s + key.resolution_s; t <= hours.close_s;
       t += key.resolution_s) {
    const std::int64_t limit = t * kNs;
    for (; i < ticks.size() && ticks[i].timestamp_ns <= limit; ++i) {
      const TickRecord& r = ticks[i];
      if (r.side != key.side || r.level != key.level) continue;
      state = static_cast<double>(r.volume);
      have_state = true;
      if (r.timestamp_ns >= hours.open_s * kNs) any_in_hours = true;
    }
    if (!have_state) continue;
    out.timestamps.push_back(t);
    out.values.push_back(state);
  }
  if (!any_in_hours) {
    fail(ErrorCode::Domain, "no ticks for " + std::string(to_string(key.side)) + " L" +
                                std::to_string(key.level) + " within market hours");
  }
  return out;
}

std::string_view to_string(SampleKind k) {
  switch (k) {
    case SampleKind::Full: return "full";
    case SampleKind::BlockMaxima: return "block_maxima";
    case SampleKind::PotExceedances: return "pot";
  }
  return "?";
}

PreparedSample full_sample(const VolumeSeries& series) {
  PreparedSample p;
  p.kind = SampleKind::Full;
  p.data = series.values;
  p.provenance = series.key;
  return p;
}

PreparedSample block_maxima(const VolumeSeries& series, std::size_t block_len) {
  require(block_len >= 1, "block_maxima: block length must be >= 1");
  if (series.values.size() < block_len) {
    fail(ErrorCode::Domain, "block_maxima: series shorter than one block");
  }
  PreparedSample p;
  p.kind = SampleKind::BlockMaxima;
  p.block_len = block_len;
  p.provenance = series.key;
  const std::size_t blocks = series.values.size() / block_len;
  p.data.reserve(blocks);
  for (std::size_t b = 0; b < blocks; ++b) {
    const auto first = series.values.begin() + static_cast<std::ptrdiff_t>(b * block_len);
    p.data.push_back(*std::max_element(first, first + static_cast<std::ptrdiff_t>(block_len)));
  }
  return p;
}

PreparedSample pot_exceedances(const VolumeSeries& series, double threshold_percentile) {
  require(!series.values.empty(), "pot_exceedances: empty series");
  require(threshold_percentile >= 0.0 && threshold_percentile < 1.0,
          "pot_exceedances: percentile must be in [0,1)");
  const double u = sample_quantile(series.values, threshold_percentile);
  PreparedSample p;
  p.kind = SampleKind::PotExceedances;
  p.threshold = u;
  p.threshold_percentile = threshold_percentile;
  p.provenance = series.key;
  for (double x : series.values) {
    if (x > u) p.data.push_back(x - u);
  }
  if (p.data.empty()) {
    fail(ErrorCode::Domain, "pot_exceedances: no values above threshold u = " + std::to_string(u));
  }
  p.exceedances = p.data.size();
  return p;
}

}  // namespace lobtail
