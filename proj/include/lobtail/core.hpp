#pragma once

// Shared domain types for the lobtail toolkit.
//
// Everything here is a plain value type: immutable after construction in
// practice and safe to share across threads.

#include <chrono>
#include <compare>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace lobtail {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

enum class ErrorCode {
  InvalidArgument = 1,  // precondition violated by the caller
  Domain = 2,           // estimator undefined for this sample
  Io = 3,
  Config = 4,
  Numeric = 5,          // quadrature / root finding failed
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool cond, const std::string& what) {
  if (!cond) fail(ErrorCode::InvalidArgument, what);
}

// ---------------------------------------------------------------------------
// Series identification
// ---------------------------------------------------------------------------

enum class Side : std::uint8_t { Bid, Ask };

std::string_view to_string(Side s);
Side parse_side(std::string_view s);  // "B"/"bid" -> Bid, "A"/"ask" -> Ask

using Date = std::chrono::year_month_day;

std::string format_date(Date d);       // YYYY-MM-DD
Date parse_date(std::string_view iso);  // throws Error{InvalidArgument}

struct SeriesKey {
  std::string asset;
  Date trading_day{};
  Side side = Side::Bid;
  int level = 1;         // [1,5]
  int resolution_s = 10; // > 0

  friend bool operator==(const SeriesKey&, const SeriesKey&) = default;
  friend auto operator<=>(const SeriesKey&, const SeriesKey&) = default;
};

void validate(const SeriesKey& key);

// Regularly sampled volumes. Timestamps are seconds since midnight,
// exchange-local, and lie on a grid with spacing key.resolution_s.
struct VolumeSeries {
  SeriesKey key;
  std::vector<std::int64_t> timestamps;
  std::vector<double> values;
};

// Empty iff every VolumeSeries invariant holds. Never throws.
std::vector<std::string> validate_series(const VolumeSeries& series);

// ---------------------------------------------------------------------------
// Parameter vectors
// ---------------------------------------------------------------------------

// S_alpha(beta, gamma, delta; 0)
struct StableParams {
  double alpha = 2.0;
  double beta = 0.0;
  double gamma = 1.0;
  double delta = 0.0;
  friend bool operator==(const StableParams&, const StableParams&) = default;
};

struct GevParams {
  double mu = 0.0;
  double sigma = 1.0;
  double gamma = 0.0;
  friend bool operator==(const GevParams&, const GevParams&) = default;
};

// Threshold mu is fixed by POT preparation; fits on excesses report mu = 0.
struct GpdParams {
  double gamma = 0.0;
  double sigma = 1.0;
  double mu = 0.0;
  friend bool operator==(const GpdParams&, const GpdParams&) = default;
};

void validate(const StableParams& p);
void validate(const GevParams& p);
void validate(const GpdParams& p);

// ---------------------------------------------------------------------------
// Fit results
// ---------------------------------------------------------------------------

enum class Family : std::uint8_t { Stable, Gev, Gpd };
enum class Method : std::uint8_t {
  McCulloch,
  Mle,
  MixedLMoments,
  LMoments,
  Mom,
  Pickands,
  Epm,
};

std::string_view to_string(Family f);
std::string_view to_string(Method m);
Family parse_family(std::string_view s);
Method parse_method(std::string_view s);

// Family/method combinations this toolkit estimates.
bool is_supported(Family f, Method m);

// Dense symmetric matrix, row-major.
struct SymMatrix {
  std::size_t n = 0;
  std::vector<double> data;

  SymMatrix() = default;
  explicit SymMatrix(std::size_t dim) : n(dim), data(dim * dim, 0.0) {}
  double& operator()(std::size_t i, std::size_t j) { return data[i * n + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * n + j]; }
};

using Params = std::variant<StableParams, GevParams, GpdParams>;

struct FitResult {
  Family family = Family::Stable;
  Method method = Method::McCulloch;
  Params params;
  std::size_t sample_size = 0;
  std::optional<double> ks_statistic;
  std::optional<double> ks_pvalue;
  bool converged = false;
  std::optional<SymMatrix> covariance;
  std::vector<std::string> notes;

  // Parameter names/values in a fixed order per family.
  std::vector<std::pair<std::string, double>> named_params() const;
};

// Throws Error{InvalidArgument} when the pairing or parameter ranges are off.
void validate(const FitResult& fit);

// ---------------------------------------------------------------------------
// Deterministic random numbers
// ---------------------------------------------------------------------------

// std::mt19937_64 output is fixed by the standard; the variates below are
// produced by explicit formulas (not <random> distributions) so draws are
// identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();
  double uniform();      // (0, 1), never 0 or 1
  double exponential();  // Exp(1)
  double normal();       // N(0, 1), polar Box-Muller
  std::size_t below(std::size_t n);  // uniform in [0, n)

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_normal_;
};

// Per-replicate seed derived from a master seed (splitmix64 mixing).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

}  // namespace lobtail
