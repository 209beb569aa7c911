#pragma once

// Output formatting shared by the pipeline and the study runners. CSV is
// LF-terminated with '.' decimals; doubles use the shortest round-trip form
// so report trees are byte-identical across runs.

#include <filesystem>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "lobtail/core.hpp"
#include "lobtail/diagnostics.hpp"
#include "lobtail/gof.hpp"
#include "lobtail/ingest.hpp"
#include "lobtail/simstudy.hpp"

namespace lobtail::report {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

// Shortest round-trip decimal; NaN -> "NA", infinities -> "Inf"/"-Inf".
std::string num(double v);
// JSON number, or null when not finite.
Json jnum(double v);

class Csv {
 public:
  explicit Csv(std::initializer_list<std::string_view> header);
  Csv& row(const std::vector<std::string>& cells);
  const std::string& str() const { return text_; }

 private:
  std::size_t width_;
  std::string text_;
};

// Creates parent directories. Writes in binary mode so line endings stay LF.
void write_file(const std::filesystem::path& path, std::string_view content);
void write_json(const std::filesystem::path& path, const Json& doc);

Json to_json(const FitResult& fit);
Json to_json(const DescriptiveStats& s);
Json sample_meta(const PreparedSample& s);

std::string series_csv(const VolumeSeries& s);
std::string sample_csv(const PreparedSample& s);
std::string curve_csv(const CurvePoints& c);
std::string percentile_csv(const std::vector<PercentileRow>& rows);
std::string heatmap_csv(const HeatMap& h);
std::string study_csv(const StudyResult& r);
Json study_json(const StudyResult& r);

}  // namespace lobtail::report
