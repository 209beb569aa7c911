#pragma once

// Internal numerical helpers shared by the estimators.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "lobtail/core.hpp"

namespace lobtail::num {

// Root of f on [lo, hi]; f(lo) and f(hi) must differ in sign.
double bisect(const std::function<double(double)>& f, double lo, double hi,
              double xtol = 1e-14, int max_iter = 400);

struct Min1D {
  double x;
  double fx;
};

// Minimum of a unimodal f on [lo, hi].
Min1D golden_section(const std::function<double(double)>& f, double lo, double hi,
                     double xtol = 1e-10, int max_iter = 300);

// Scans `grid` (sorted), then polishes the best cell with golden section.
// Non-finite values are treated as +inf.
Min1D grid_then_golden(const std::function<double(double)>& f, std::span<const double> grid,
                       double xtol = 1e-10);

struct BfgsResult {
  std::vector<double> x;
  double fx = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Unconstrained BFGS minimization with a central-difference gradient and a
// backtracking line search. f may return +inf for infeasible points.
BfgsResult bfgs(const std::function<double(std::span<const double>)>& f,
                std::vector<double> x0, double gtol = 1e-6, int max_iter = 500);

std::vector<double> fd_gradient(const std::function<double(std::span<const double>)>& f,
                                std::span<const double> x);

// Central-difference Hessian.
SymMatrix fd_hessian(const std::function<double(std::span<const double>)>& f,
                     std::span<const double> x);

// Inverse of a symmetric positive-definite matrix; nullopt if not SPD.
std::optional<SymMatrix> invert_spd(const SymMatrix& m);

double median(std::vector<double> v);

// Runs body(i) for i in [0, n) on up to `jobs` threads. Results must be
// written by index so the outcome is schedule independent. The first
// exception thrown by any body is rethrown.
void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& body);

unsigned default_jobs();

}  // namespace lobtail::num
