#include "lobtail/core.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

namespace lobtail {

std::string_view to_string(Side s) { return s == Side::Bid ? "bid" : "ask"; }

Side parse_side(std::string_view s) {
  if (s == "B" || s == "b" || s == "bid" || s == "Bid") return Side::Bid;
  if (s == "A" || s == "a" || s == "ask" || s == "Ask") return Side::Ask;
  fail(ErrorCode::InvalidArgument, "unknown side '" + std::string(s) + "'");
}

std::string format_date(Date d) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(d.year()),
                static_cast<unsigned>(d.month()), static_cast<unsigned>(d.day()));
  return buf;
}

Date parse_date(std::string_view iso) {
  int y = 0;
  unsigned m = 0, d = 0;
  auto bad = [&] {
    fail(ErrorCode::InvalidArgument, "bad date '" + std::string(iso) + "', want YYYY-MM-DD");
  };
  if (iso.size() != 10 || iso[4] != '-' || iso[7] != '-') bad();
  const char* p = iso.data();
  if (std::from_chars(p, p + 4, y).ec != std::errc{}) bad();
  if (std::from_chars(p + 5, p + 7, m).ec != std::errc{}) bad();
  if (std::from_chars(p + 8, p + 10, d).ec != std::errc{}) bad();
  Date out{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
  if (!out.ok()) bad();
  return out;
}

void validate(const SeriesKey& key) {
  require(key.level >= 1 && key.level <= 5, "level must be in [1,5]");
  require(key.resolution_s > 0, "resolution_s must be positive");
}

std::vector<std::string> validate_series(const VolumeSeries& s) {
  std::vector<std::string> out;
  if (s.key.level < 1 || s.key.level > 5) out.push_back("level in [1,5] violated");
  if (s.key.resolution_s <= 0) out.push_back("resolution_s > 0 violated");
  if (s.timestamps.size() != s.values.size()) {
    out.push_back("len(timestamps) == len(values) violated");
  }
  for (std::size_t i = 1; i < s.timestamps.size(); ++i) {
    if (s.timestamps[i] <= s.timestamps[i - 1]) {
      out.push_back("timestamps strictly increasing violated at " + std::to_string(i));
      break;
    }
  }
  for (std::size_t i = 1; i < s.timestamps.size(); ++i) {
    if (s.timestamps[i] - s.timestamps[i - 1] != s.key.resolution_s) {
      out.push_back("constant spacing violated at " + std::to_string(i));
      break;
    }
  }
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    if (!(s.values[i] >= 0.0)) {
      out.push_back("values ≥ 0 violated at " + std::to_string(i));
      break;
    }
  }
  return out;
}

void validate(const StableParams& p) {
  require(p.alpha > 0.0 && p.alpha <= 2.0, "stable alpha must be in (0,2]");
  require(p.beta >= -1.0 && p.beta <= 1.0, "stable beta must be in [-1,1]");
  require(p.gamma > 0.0 && std::isfinite(p.gamma), "stable gamma must be > 0");
  require(std::isfinite(p.delta), "stable delta must be finite");
}

void validate(const GevParams& p) {
  require(p.sigma > 0.0 && std::isfinite(p.sigma), "GEV sigma must be > 0");
  require(std::isfinite(p.mu) && std::isfinite(p.gamma), "GEV parameters must be finite");
}

void validate(const GpdParams& p) {
  require(p.sigma > 0.0 && std::isfinite(p.sigma), "GPD sigma must be > 0");
  require(std::isfinite(p.mu) && std::isfinite(p.gamma), "GPD parameters must be finite");
}

std::string_view to_string(Family f) {
  switch (f) {
    case Family::Stable: return "stable";
    case Family::Gev: return "gev";
    case Family::Gpd: return "gpd";
  }
  return "?";
}

std::string_view to_string(Method m) {
  switch (m) {
    case Method::McCulloch: return "mcculloch";
    case Method::Mle: return "mle";
    case Method::MixedLMoments: return "mixed_lmoments";
    case Method::LMoments: return "lmoments";
    case Method::Mom: return "mom";
    case Method::Pickands: return "pickands";
    case Method::Epm: return "epm";
  }
  return "?";
}

Family parse_family(std::string_view s) {
  for (auto f : {Family::Stable, Family::Gev, Family::Gpd}) {
    if (to_string(f) == s) return f;
  }
  fail(ErrorCode::InvalidArgument, "unknown family '" + std::string(s) + "'");
}

Method parse_method(std::string_view s) {
  for (auto m : {Method::McCulloch, Method::Mle, Method::MixedLMoments, Method::LMoments,
                 Method::Mom, Method::Pickands, Method::Epm}) {
    if (to_string(m) == s) return m;
  }
  fail(ErrorCode::InvalidArgument, "unknown method '" + std::string(s) + "'");
}

bool is_supported(Family f, Method m) {
  switch (f) {
    case Family::Stable:
      return m == Method::McCulloch;
    case Family::Gev:
      return m == Method::Mle || m == Method::MixedLMoments || m == Method::LMoments;
    case Family::Gpd:
      return m == Method::Mle || m == Method::Mom || m == Method::Pickands ||
             m == Method::Epm;
  }
  return false;
}

std::vector<std::pair<std::string, double>> FitResult::named_params() const {
  struct Visitor {
    std::vector<std::pair<std::string, double>> operator()(const StableParams& p) const {
      return {{"alpha", p.alpha}, {"beta", p.beta}, {"gamma", p.gamma}, {"delta", p.delta}};
    }
    std::vector<std::pair<std::string, double>> operator()(const GevParams& p) const {
      return {{"mu", p.mu}, {"sigma", p.sigma}, {"gamma", p.gamma}};
    }
    std::vector<std::pair<std::string, double>> operator()(const GpdParams& p) const {
      return {{"gamma", p.gamma}, {"sigma", p.sigma}, {"mu", p.mu}};
    }
  };
  return std::visit(Visitor{}, params);
}

void validate(const FitResult& fit) {
  require(is_supported(fit.family, fit.method),
          "unsupported family/method pair " + std::string(to_string(fit.family)) + "/" +
              std::string(to_string(fit.method)));
  const bool family_matches =
      (fit.family == Family::Stable && std::holds_alternative<StableParams>(fit.params)) ||
      (fit.family == Family::Gev && std::holds_alternative<GevParams>(fit.params)) ||
      (fit.family == Family::Gpd && std::holds_alternative<GpdParams>(fit.params));
  require(family_matches, "parameter vector does not match family");
  std::visit([](const auto& p) { validate(p); }, fit.params);
  if (fit.ks_statistic) {
    require(*fit.ks_statistic >= 0.0 && *fit.ks_statistic <= 1.0, "KS statistic out of [0,1]");
  }
  if (fit.ks_pvalue) {
    require(*fit.ks_pvalue >= 0.0 && *fit.ks_pvalue <= 1.0, "KS p-value out of [0,1]");
  }
}

// ---------------------------------------------------------------------------

Rng::Rng(std::uint64_t seed) : engine_(seed) {}

std::uint64_t Rng::next_u64() { return engine_(); }

double Rng::uniform() {
  // 53 random bits, offset by half an ulp so the result is never 0 or 1.
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double Rng::exponential() { return -std::log(uniform()); }

double Rng::normal() {
  if (spare_normal_) {
    double z = *spare_normal_;
    spare_normal_.reset();
    return z;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_normal_ = v * f;
  return u * f;
}

std::size_t Rng::below(std::size_t n) {
  require(n > 0, "Rng::below needs n > 0");
  // Rejection sampling avoids modulo bias.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = next_u64();
  } while (x >= limit);
  return static_cast<std::size_t>(x % n);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace lobtail
