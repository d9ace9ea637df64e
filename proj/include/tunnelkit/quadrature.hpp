#pragma once

#include <cmath>
#include <limits>

#include "tunnelkit/errors.hpp"

namespace tunnelkit {

struct QuadratureResult {
  double value = 0.0;
  int evaluations = 0;
};

namespace detail {

template <class F>
double simpson_step(const F& f, double a, double fa, double b, double fb, double m, double fm,
                    double whole, double tol, int depth, int min_depth, int max_depth, int& evals,
                    bool& converged) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  evals += 2;
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double diff = left + right - whole;
  if (depth >= min_depth && std::abs(diff) <= 15.0 * tol) return left + right + diff / 15.0;
  if (depth >= max_depth) {
    converged = false;
    return left + right + diff / 15.0;
  }
  return simpson_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth + 1, min_depth, max_depth,
                      evals, converged) +
         simpson_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth + 1, min_depth, max_depth,
                      evals, converged);
}

}  // namespace detail

/// Adaptive Simpson with interval bisection. The absolute tolerance is
/// rel_tol times the magnitude of a 5-point composite estimate. Panels are
/// split at least min_depth times so that a sharp peak sampled by chance at
/// a coarse midpoint cannot fake early agreement. Throws
/// ConvergenceError (carrying the partial estimate) when any branch reaches
/// max_depth without meeting its share of the tolerance.
template <class F>
QuadratureResult adaptive_simpson(const F& f, double a, double b, double rel_tol = 1e-3,
                                  int max_depth = 30, int min_depth = 4) {
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double tol = std::max(rel_tol * std::abs(whole), std::numeric_limits<double>::min());

  QuadratureResult r;
  r.evaluations = 3;
  bool converged = true;
  r.value = detail::simpson_step(f, a, fa, b, fb, m, fm, whole, tol, 0, min_depth, max_depth,
                                 r.evaluations, converged);
  if (!converged) {
    throw ConvergenceError("adaptive Simpson reached its depth limit", r.value);
  }
  return r;
}

}  // namespace tunnelkit
