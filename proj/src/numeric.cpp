#include "numeric.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

namespace lobtail::num {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double finite_or_inf(double v) { return std::isfinite(v) ? v : kInf; }
}  // namespace

double bisect(const std::function<double(double)>& f, double lo, double hi, double xtol,
              int max_iter) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (!(std::signbit(flo) != std::signbit(fhi))) {
    fail(ErrorCode::Numeric, "bisect: root not bracketed");
  }
  for (int it = 0; it < max_iter; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= std::min(lo, hi) || mid >= std::max(lo, hi)) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if (std::signbit(fm) == std::signbit(flo)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
    if (std::fabs(hi - lo) <= xtol * std::max(1.0, std::fabs(mid))) break;
  }
  return 0.5 * (lo + hi);
}

Min1D golden_section(const std::function<double(double)>& f, double lo, double hi, double xtol,
                     int max_iter) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = finite_or_inf(f(c));
  double fd = finite_or_inf(f(d));
  for (int it = 0; it < max_iter && std::fabs(b - a) > xtol * std::max(1.0, std::fabs(c)); ++it) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = finite_or_inf(f(c));
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = finite_or_inf(f(d));
    }
  }
  return fc <= fd ? Min1D{c, fc} : Min1D{d, fd};
}

Min1D grid_then_golden(const std::function<double(double)>& f, std::span<const double> grid,
                       double xtol) {
  require(grid.size() >= 2, "grid_then_golden needs at least two grid points");
  std::vector<double> vals(grid.size());
  std::size_t best = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    vals[i] = finite_or_inf(f(grid[i]));
    if (vals[i] < vals[best]) best = i;
  }
  if (!std::isfinite(vals[best])) return {grid[best], kInf};
  const double lo = grid[best == 0 ? 0 : best - 1];
  const double hi = grid[std::min(best + 1, grid.size() - 1)];
  Min1D polished = golden_section(f, lo, hi, xtol);
  if (polished.fx <= vals[best]) return polished;
  return {grid[best], vals[best]};
}

std::vector<double> fd_gradient(const std::function<double(std::span<const double>)>& f,
                                std::span<const double> x) {
  std::vector<double> g(x.size());
  std::vector<double> xp(x.begin(), x.end());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double h = 1e-6 * std::max(1.0, std::fabs(x[i]));
    xp[i] = x[i] + h;
    const double fp = f(xp);
    xp[i] = x[i] - h;
    const double fm = f(xp);
    xp[i] = x[i];
    if (std::isfinite(fp) && std::isfinite(fm)) {
      g[i] = (fp - fm) / (2.0 * h);
    } else {
      // One-sided difference next to the feasibility boundary.
      const double f0 = f(xp);
      g[i] = std::isfinite(fp) ? (fp - f0) / h : std::isfinite(fm) ? (f0 - fm) / h : 0.0;
    }
  }
  return g;
}

SymMatrix fd_hessian(const std::function<double(std::span<const double>)>& f,
                     std::span<const double> x) {
  const std::size_t n = x.size();
  SymMatrix h(n);
  std::vector<double> xp(x.begin(), x.end());
  std::vector<double> step(n);
  for (std::size_t i = 0; i < n; ++i) step[i] = 1e-4 * std::max(1.0, std::fabs(x[i]));
  const double f0 = f(xp);
  for (std::size_t i = 0; i < n; ++i) {
    xp[i] = x[i] + step[i];
    const double fp = f(xp);
    xp[i] = x[i] - step[i];
    const double fm = f(xp);
    xp[i] = x[i];
    h(i, i) = (fp - 2.0 * f0 + fm) / (step[i] * step[i]);
    for (std::size_t j = 0; j < i; ++j) {
      double acc = 0.0;
      for (int si : {1, -1}) {
        for (int sj : {1, -1}) {
          xp[i] = x[i] + si * step[i];
          xp[j] = x[j] + sj * step[j];
          acc += si * sj * f(xp);
        }
      }
      xp[i] = x[i];
      xp[j] = x[j];
      h(i, j) = h(j, i) = acc / (4.0 * step[i] * step[j]);
    }
  }
  return h;
}

std::optional<SymMatrix> invert_spd(const SymMatrix& m) {
  const std::size_t n = m.n;
  // Cholesky m = L L^T.
  std::vector<double> l(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double s = m(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l[i * n + k] * l[j * n + k];
      if (i == j) {
        if (!(s > 0.0) || !std::isfinite(s)) return std::nullopt;
        l[i * n + i] = std::sqrt(s);
      } else {
        l[i * n + j] = s / l[j * n + j];
      }
    }
  }
  // Solve for each column of the identity.
  SymMatrix inv(n);
  std::vector<double> y(n), x(n);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = (i == c) ? 1.0 : 0.0;
      for (std::size_t k = 0; k < i; ++k) s -= l[i * n + k] * y[k];
      y[i] = s / l[i * n + i];
    }
    for (std::size_t ii = n; ii-- > 0;) {
      double s = y[ii];
      for (std::size_t k = ii + 1; k < n; ++k) s -= l[k * n + ii] * x[k];
      x[ii] = s / l[ii * n + ii];
    }
    for (std::size_t r = 0; r < n; ++r) inv(r, c) = x[r];
  }
  return inv;
}

BfgsResult bfgs(const std::function<double(std::span<const double>)>& f, std::vector<double> x0,
                double gtol, int max_iter) {
  const std::size_t n = x0.size();
  BfgsResult out;
  out.x = std::move(x0);
  out.fx = f(out.x);
  if (!std::isfinite(out.fx)) return out;

  std::vector<double> hinv(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) hinv[i * n + i] = 1.0;
  std::vector<double> g = fd_gradient(f, out.x);
  std::vector<double> p(n), xn(n), s(n), yv(n);

  for (int it = 0; it < max_iter; ++it) {
    out.iterations = it + 1;
    double gnorm = 0.0;
    for (double gi : g) gnorm = std::max(gnorm, std::fabs(gi));
    if (gnorm < gtol * std::max(1.0, std::fabs(out.fx))) {
      out.converged = true;
      return out;
    }
    for (std::size_t i = 0; i < n; ++i) {
      p[i] = 0.0;
      for (std::size_t j = 0; j < n; ++j) p[i] -= hinv[i * n + j] * g[j];
    }
    double slope = 0.0;
    for (std::size_t i = 0; i < n; ++i) slope += p[i] * g[i];
    if (!(slope < 0.0)) {
      // Not a descent direction: reset to steepest descent.
      std::fill(hinv.begin(), hinv.end(), 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        hinv[i * n + i] = 1.0;
        p[i] = -g[i];
      }
      slope = 0.0;
      for (std::size_t i = 0; i < n; ++i) slope -= g[i] * g[i];
    }
    double step = 1.0;
    double fn = kInf;
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      for (std::size_t i = 0; i < n; ++i) xn[i] = out.x[i] + step * p[i];
      fn = f(xn);
      if (std::isfinite(fn) && fn <= out.fx + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      // No progress possible along this direction: stationary to FD accuracy.
      out.converged = gnorm < 1e-3 * std::max(1.0, std::fabs(out.fx));
      return out;
    }
    std::vector<double> gn = fd_gradient(f, xn);
    double sy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = xn[i] - out.x[i];
      yv[i] = gn[i] - g[i];
      sy += s[i] * yv[i];
    }
    const double fprev = out.fx;
    out.x = xn;
    out.fx = fn;
    g = std::move(gn);
    if (sy > 1e-12) {
      // hinv <- (I - rho s y^T) hinv (I - rho y s^T) + rho s s^T
      const double rho = 1.0 / sy;
      std::vector<double> hy(n, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) hy[i] += hinv[i * n + j] * yv[j];
      }
      double yhy = 0.0;
      for (std::size_t i = 0; i < n; ++i) yhy += yv[i] * hy[i];
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          hinv[i * n + j] += -rho * (hy[i] * s[j] + s[i] * hy[j]) +
                             (rho * rho * yhy + rho) * s[i] * s[j];
        }
      }
    }
    if (std::fabs(fprev - fn) <= 1e-14 * std::max(1.0, std::fabs(fn))) {
      out.converged = true;
      return out;
    }
  }
  return out;
}

double median(std::vector<double> v) {
  require(!v.empty(), "median of empty vector");
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  const double hi = v[mid];
  if (v.size() % 2 == 1) return hi;
  const double lo = *std::max_element(v.begin(), v.begin() + mid);
  return 0.5 * (lo + hi);
}

unsigned default_jobs() {
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : hc;
}

void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& body) {
  if (jobs <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(jobs, n));
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace lobtail::num
