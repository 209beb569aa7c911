#include "lobtail/lobtail.h"

#include <exception>
#include <new>
#include <string>
#include <vector>

#include "lobtail/gev.hpp"
#include "lobtail/gof.hpp"
#include "lobtail/gpd.hpp"
#include "lobtail/pipeline.hpp"
#include "lobtail/stable.hpp"

struct lt_fit {
  lobtail::FitResult fit;
  std::vector<std::pair<std::string, double>> params;
};

namespace {

thread_local std::string g_last_error;

lt_status to_status(lobtail::ErrorCode c) {
  switch (c) {
    case lobtail::ErrorCode::InvalidArgument: return LT_ERR_INVALID_ARGUMENT;
    case lobtail::ErrorCode::Domain: return LT_ERR_DOMAIN;
    case lobtail::ErrorCode::Io: return LT_ERR_IO;
    case lobtail::ErrorCode::Config: return LT_ERR_CONFIG;
    case lobtail::ErrorCode::Numeric: return LT_ERR_NUMERIC;
  }
  return LT_ERR_INTERNAL;
}

lt_status set_error(lt_status s, std::string msg) {
  g_last_error = std::move(msg);
  return s;
}

// Runs fn, mapping exceptions to status codes. No exception crosses the C
// boundary.
template <class Fn>
lt_status guard(Fn&& fn) {
  try {
    fn();
    return LT_OK;
  } catch (const lobtail::Error& e) {
    return set_error(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(LT_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(LT_ERR_INTERNAL, e.what());
  } catch (...) {
    return set_error(LT_ERR_INTERNAL, "unknown error");
  }
}

lt_status null_arg(const char* what) {
  return set_error(LT_ERR_INVALID_ARGUMENT, std::string(what) + " must not be NULL");
}

}  // namespace

extern "C" {

const char* lt_version(void) { return "0.1.0"; }

const char* lt_last_error(void) { return g_last_error.c_str(); }

const char* lt_status_name(lt_status status) {
  switch (status) {
    case LT_OK: return "ok";
    case LT_ERR_INVALID_ARGUMENT: return "invalid argument";
    case LT_ERR_DOMAIN: return "domain error";
    case LT_ERR_IO: return "i/o error";
    case LT_ERR_CONFIG: return "config error";
    case LT_ERR_NUMERIC: return "numeric error";
    case LT_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

lt_status lt_fit_data(lt_family family, lt_method method, const double* data, size_t n,
                      lt_fit** out) {
  if (!out) return null_arg("out");
  *out = nullptr;
  if (!data && n > 0) return null_arg("data");
  if (family < LT_FAMILY_STABLE || family > LT_FAMILY_GPD) {
    return set_error(LT_ERR_INVALID_ARGUMENT, "unknown family");
  }
  if (method < LT_METHOD_MCCULLOCH || method > LT_METHOD_EPM) {
    return set_error(LT_ERR_INVALID_ARGUMENT, "unknown method");
  }
  return guard([&] {
    using namespace lobtail;
    const auto f = static_cast<Family>(family);
    const auto m = static_cast<Method>(method);
    require(is_supported(f, m), "method " + std::string(to_string(m)) + " is not available for " +
                                    std::string(to_string(f)));
    const std::span<const double> x(data, n);
    FitResult fit;
    switch (f) {
      case Family::Stable: fit = fit_mcculloch(x); break;
      case Family::Gev:
        fit = m == Method::Mle             ? fit_gev_mle(x)
              : m == Method::MixedLMoments ? fit_gev_mixed(x)
                                           : fit_gev_lmom(x);
        break;
      case Family::Gpd:
        fit = m == Method::Mle        ? fit_gpd_mle(x)
              : m == Method::Mom      ? fit_gpd_mom(x)
              : m == Method::Pickands ? fit_gpd_pickands(x)
                                      : fit_gpd_epm(x);
        break;
    }
    const KsResult ks = ks_statistic(x, fitted_cdf(fit));
    fit.ks_statistic = ks.statistic;
    fit.ks_pvalue = ks.pvalue;
    auto* h = new lt_fit{std::move(fit), {}};
    h->params = h->fit.named_params();
    *out = h;
  });
}

void lt_fit_free(lt_fit* fit) { delete fit; }

lt_status lt_fit_family(const lt_fit* fit, lt_family* out) {
  if (!fit || !out) return null_arg("fit/out");
  *out = static_cast<lt_family>(fit->fit.family);
  return LT_OK;
}

lt_status lt_fit_method(const lt_fit* fit, lt_method* out) {
  if (!fit || !out) return null_arg("fit/out");
  *out = static_cast<lt_method>(fit->fit.method);
  return LT_OK;
}

lt_status lt_fit_param_count(const lt_fit* fit, size_t* out) {
  if (!fit || !out) return null_arg("fit/out");
  *out = fit->params.size();
  return LT_OK;
}

lt_status lt_fit_param(const lt_fit* fit, size_t index, double* value, const char** name) {
  if (!fit) return null_arg("fit");
  if (index >= fit->params.size()) return set_error(LT_ERR_INVALID_ARGUMENT, "parameter index out of range");
  if (value) *value = fit->params[index].second;
  if (name) *name = fit->params[index].first.c_str();
  return LT_OK;
}

lt_status lt_fit_converged(const lt_fit* fit, int* out) {
  if (!fit || !out) return null_arg("fit/out");
  *out = fit->fit.converged ? 1 : 0;
  return LT_OK;
}

lt_status lt_fit_ks(const lt_fit* fit, double* statistic, double* pvalue) {
  if (!fit) return null_arg("fit");
  if (!fit->fit.ks_statistic) return set_error(LT_ERR_DOMAIN, "no KS statistic recorded");
  if (statistic) *statistic = *fit->fit.ks_statistic;
  if (pvalue) *pvalue = fit->fit.ks_pvalue.value_or(0.0);
  return LT_OK;
}

lt_status lt_fit_note_count(const lt_fit* fit, size_t* out) {
  if (!fit || !out) return null_arg("fit/out");
  *out = fit->fit.notes.size();
  return LT_OK;
}

lt_status lt_fit_note(const lt_fit* fit, size_t index, const char** out) {
  if (!fit || !out) return null_arg("fit/out");
  if (index >= fit->fit.notes.size()) return set_error(LT_ERR_INVALID_ARGUMENT, "note index out of range");
  *out = fit->fit.notes[index].c_str();
  return LT_OK;
}

lt_status lt_stable_cdf(double x, double alpha, double beta, double gamma, double delta,
                        double* out) {
  if (!out) return null_arg("out");
  return guard([&] { *out = lobtail::stable_cdf(x, {alpha, beta, gamma, delta}); });
}

lt_status lt_ks_test(const lt_fit* fit, const double* data, size_t n, double* statistic,
                     double* pvalue) {
  if (!fit) return null_arg("fit");
  if (!data && n > 0) return null_arg("data");
  return guard([&] {
    lobtail::require(n >= 1, "ks test: need at least one observation");
    const auto ks = lobtail::ks_statistic(std::span<const double>(data, n),
                                          lobtail::fitted_cdf(fit->fit));
    if (statistic) *statistic = ks.statistic;
    if (pvalue) *pvalue = ks.pvalue;
  });
}

lt_status lt_run_pipeline(const char* config_path, const char* days, unsigned jobs,
                          int* exit_code) {
  if (!config_path || !exit_code) return null_arg("config_path/exit_code");
  *exit_code = 1;
  return guard([&] {
    lobtail::RunConfig cfg = lobtail::load_run_config(config_path);
    if (jobs > 0) cfg.jobs = jobs;
    lobtail::DayRange range;
    if (days && *days) {
      try {
        range = lobtail::parse_day_range(days);
      } catch (const lobtail::Error& e) {
        lobtail::fail(lobtail::ErrorCode::Config, std::string("--days: ") + e.what());
      }
    }
    const auto sum = lobtail::run_pipeline(cfg, range);
    *exit_code = sum.exit_code;
    if (sum.exit_code != 0) {
      g_last_error = sum.errors.empty() ? "no successful fits" : sum.errors.front();
    }
  });
}

lt_status lt_run_simstudy(const char* study, const lt_simstudy_options* options, int* all_passed) {
  if (!study) return null_arg("study");
  return guard([&] {
    lobtail::StudyOverrides o;
    if (options) {
      if (options->has_seed) o.seed = options->seed;
      if (options->has_replicates) o.replicates = options->replicates;
      if (options->out_dir) o.output_dir = options->out_dir;
      o.jobs = options->jobs;
    }
    const auto res = lobtail::run_simstudy(lobtail::parse_study(study), o);
    bool ok = true;
    for (const auto& a : res.anchors) ok = ok && a.passed;
    if (all_passed) *all_passed = ok ? 1 : 0;
  });
}

}  // extern "C"
