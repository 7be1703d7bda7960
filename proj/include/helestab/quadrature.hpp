// Adaptive Simpson integration.
#pragma once

#include <cmath>
#include <stdexcept>

namespace helestab::quadrature {

namespace detail {

template <typename F>
double simpson_recurse(F& f, double a, double m, double b, double fa,
                       double fm, double fb, double whole, double tol,
                       int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double h6 = (b - a) / 12.0;
  const double left = h6 * (fa + 4.0 * flm + fm);
  const double right = h6 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  // Richardson: Simpson halving gains a factor 16, so delta/15 estimates the
  // error of (left + right).
  if (depth <= 0) {
    throw std::runtime_error("adaptive_simpson: recursion depth exhausted");
  }
  if (std::fabs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return simpson_recurse(f, a, lm, m, fa, flm, fm, left, 0.5 * tol,
                         depth - 1) +
         simpson_recurse(f, m, rm, b, fm, frm, fb, right, 0.5 * tol,
                         depth - 1);
}

}  // namespace detail

// Integrates f over [a, b] to absolute tolerance tol.
template <typename F>
double adaptive_simpson(F&& f, double a, double b, double tol,
                        int max_depth = 48) {
  if (!(b >= a)) {
    throw std::invalid_argument("adaptive_simpson: reversed interval");
  }
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fm = f(m);
  const double fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::simpson_recurse(f, a, m, b, fa, fm, fb, whole, tol,
                                 max_depth);
}

}  // namespace helestab::quadrature
