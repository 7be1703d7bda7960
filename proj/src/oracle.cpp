// ============================================================================
// Finite-difference oracle.
//
// Uniform grids, centered second-order interior stencils, Thomas elimination,
// one-sided 4th-order boundary derivatives, Richardson extrapolation across
// doubled grids. Decay boundary conditions enter as Robin rows through ghost
// nodes, using the exact decay rate of the relevant mode (constant for the
// traveling wave, 1 + 1/(2r) + (4l^2-1)/(8r^2) for the radial exterior).
// ============================================================================

#include "helestab/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "helestab/quadrature.hpp"
#include "helestab/tridiag.hpp"

namespace helestab::oracle {

namespace {

// --- boundary derivative extraction -----------------------------------------

// 4th-order one-sided first derivative at the last node.
double d1_right(const std::vector<double>& u, double h) {
  const size_t n = u.size();
  return (25.0 * u[n - 1] - 48.0 * u[n - 2] + 36.0 * u[n - 3] -
          16.0 * u[n - 4] + 3.0 * u[n - 5]) /
         (12.0 * h);
}

// 4th-order one-sided first derivative at the first node.
double d1_left(const std::vector<double>& u, double h) {
  return -(25.0 * u[0] - 48.0 * u[1] + 36.0 * u[2] - 16.0 * u[3] +
           3.0 * u[4]) /
         (12.0 * h);
}

// 4th-order one-sided second derivative at the last node (6 points).
double d2_right(const std::vector<double>& u, double h) {
  const size_t n = u.size();
  return (15.0 / 4.0 * u[n - 1] - 77.0 / 6.0 * u[n - 2] +
          107.0 / 6.0 * u[n - 3] - 13.0 * u[n - 4] + 61.0 / 12.0 * u[n - 5] -
          5.0 / 6.0 * u[n - 6]) /
         (h * h);
}

// --- traveling-wave solvers on [-X, 0] and [0, X] ---------------------------

// -u'' + q u = rhs on [-X, 0]; decay Robin u' = kappa u at -X (ghost node),
// Dirichlet u(0) = right_value. rhs may be a constant or a grid vector.
std::vector<double> solve_tw_interior(double q, double kappa,
                                      const std::vector<double>& rhs,
                                      double right_value, double h, int n) {
  const size_t m = static_cast<size_t>(n) + 1;
  std::vector<double> a(m, -1.0 / (h * h));
  std::vector<double> b(m, 2.0 / (h * h) + q);
  std::vector<double> c(m, -1.0 / (h * h));
  std::vector<double> d = rhs;
  // Ghost elimination at the left end: u_{-1} = u_1 - 2 h kappa u_0.
  b[0] = 2.0 / (h * h) + q + 2.0 * kappa / h;
  c[0] = -2.0 / (h * h);
  a[m - 1] = 0.0;
  b[m - 1] = 1.0;
  c[m - 1] = 0.0;
  d[m - 1] = right_value;
  return tridiag::solve(a, b, c, d);
}

// -p'' = rhs on [-X, 0]; Neumann p'(-X) = 0, Dirichlet p(0) = 0.
std::vector<double> solve_tw_pressure0(const std::vector<double>& rhs,
                                       double h, int n) {
  const size_t m = static_cast<size_t>(n) + 1;
  std::vector<double> a(m, -1.0 / (h * h));
  std::vector<double> b(m, 2.0 / (h * h));
  std::vector<double> c(m, -1.0 / (h * h));
  std::vector<double> d = rhs;
  c[0] = -2.0 / (h * h);  // ghost p_{-1} = p_1
  a[m - 1] = 0.0;
  b[m - 1] = 1.0;
  c[m - 1] = 0.0;
  d[m - 1] = 0.0;
  return tridiag::solve(a, b, c, d);
}

// -u'' + q u = rhs on [0, X]; Dirichlet u(0) = left_value, decay Robin
// u' = -kappa u at +X.
std::vector<double> solve_tw_exterior(double q, double kappa,
                                      const std::vector<double>& rhs,
                                      double left_value, double h, int n) {
  const size_t m = static_cast<size_t>(n) + 1;
  std::vector<double> a(m, -1.0 / (h * h));
  std::vector<double> b(m, 2.0 / (h * h) + q);
  std::vector<double> c(m, -1.0 / (h * h));
  std::vector<double> d = rhs;
  a[0] = 0.0;
  b[0] = 1.0;
  c[0] = 0.0;
  d[0] = left_value;
  // Ghost elimination at the right end: u_{n+1} = u_{n-1} - 2 h kappa u_n.
  a[m - 1] = -2.0 / (h * h);
  b[m - 1] = 2.0 / (h * h) + q + 2.0 * kappa / h;
  return tridiag::solve(a, b, c, d);
}

double tw_rate_single(const ModelParams& p, Regime reg, double l, double big_x,
                      int n) {
  const double lam = p.consumption_rate;
  const double g0 = p.growth_rate;
  const double cb = p.background_concentration;
  const double sl = std::sqrt(lam);
  const double h = big_x / n;
  const size_t m = static_cast<size_t>(n) + 1;
  const double ql = lam + l * l;

  auto scale = [&](const std::vector<double>& u, double factor) {
    std::vector<double> v(u.size());
    for (size_t i = 0; i < u.size(); ++i) v[i] = factor * u[i];
    return v;
  };
  const std::vector<double> zero(m, 0.0);

  std::vector<double> c0;
  std::vector<double> c1;
  if (reg == Regime::InVitro) {
    c0 = solve_tw_interior(lam, sl, zero, cb, h, n);
    c1 = solve_tw_interior(ql, std::sqrt(ql), zero, -d1_right(c0, h), h, n);
  } else {
    // Zeroth order: interior amplitude s multiplying the unit solution A,
    // exterior cB + s B, matched by flux continuity at xi = 0.
    const std::vector<double> a_sol = solve_tw_interior(lam, sl, zero, 1.0, h, n);
    const std::vector<double> u_sol =
        solve_tw_exterior(1.0, 1.0, zero, -cb, h, n);  // u = c - cB
    const std::vector<double> b_sol = solve_tw_exterior(1.0, 1.0, zero, 1.0, h, n);
    std::vector<double> p_sol(m);
    for (size_t i = 0; i < m; ++i) p_sol[i] = u_sol[i] + cb;
    const double s = d1_left(p_sol, h) / (d1_right(a_sol, h) - d1_left(b_sol, h));
    c0 = scale(a_sol, s);
    // First order: continuity of c1 and the derivative jump
    // c1'(0+) - c1'(0-) = (lambda - 1) c0(0) + cB from the curvature
    // mismatch of the zeroth-order profile.
    const std::vector<double> a1 = solve_tw_interior(ql, std::sqrt(ql), zero, 1.0, h, n);
    const std::vector<double> b1 =
        solve_tw_exterior(1.0 + l * l, std::sqrt(1.0 + l * l), zero, 1.0, h, n);
    const double jump = (lam - 1.0) * s + cb;
    const double s1 = jump / (d1_left(b1, h) - d1_right(a1, h));
    c1 = scale(a1, s1);
  }
  const std::vector<double> p0 = solve_tw_pressure0(scale(c0, g0), h, n);
  const std::vector<double> p1 =
      solve_tw_interior(l * l, l, scale(c1, g0), -d1_right(p0, h), h, n);
  return -(d2_right(p0, h) + d1_right(p1, h));
}

// --- radial solvers ----------------------------------------------------------

// Interior solve in the regular variable w = u / r^l:
//   -w'' - (2l+1)/r w' + q w = rhs on (0, R], w(R) = right_value,
// with the axis row -(2l+2) w''(0) + q w(0) = rhs(0) from the local parity
// expansion (for l = 0 this is the plain axisymmetric operator on u itself).
std::vector<double> solve_radial_interior(double q, int ell,
                                          const std::vector<double>& rhs,
                                          double right_value, double radius,
                                          int n) {
  const double h = radius / n;
  const size_t m = static_cast<size_t>(n) + 1;
  std::vector<double> a(m, 0.0);
  std::vector<double> b(m, 0.0);
  std::vector<double> c(m, 0.0);
  std::vector<double> d = rhs;
  const double axis = (2.0 * ell + 2.0) * 2.0 / (h * h);
  b[0] = axis + q;
  c[0] = -axis;
  for (int i = 1; i < n; ++i) {
    const double r = i * h;
    a[static_cast<size_t>(i)] = -1.0 / (h * h) + (2.0 * ell + 1.0) / (2.0 * h * r);
    b[static_cast<size_t>(i)] = 2.0 / (h * h) + q;
    c[static_cast<size_t>(i)] = -1.0 / (h * h) - (2.0 * ell + 1.0) / (2.0 * h * r);
  }
  a[m - 1] = 0.0;
  b[m - 1] = 1.0;
  c[m - 1] = 0.0;
  d[m - 1] = right_value;
  return tridiag::solve(a, b, c, d);
}

// Exterior solve -v'' - v'/r + q(r) v = 0 on [R, R+X]; v(R) = left_value,
// decay Robin v' = -kappa v at R + X.
std::vector<double> solve_radial_exterior(double q_const, double q_inv_r2,
                                          double kappa, double left_value,
                                          double radius, double big_x,
                                          int n) {
  const double h = big_x / n;
  const size_t m = static_cast<size_t>(n) + 1;
  std::vector<double> a(m, 0.0);
  std::vector<double> b(m, 0.0);
  std::vector<double> c(m, 0.0);
  std::vector<double> d(m, 0.0);
  a[0] = 0.0;
  b[0] = 1.0;
  c[0] = 0.0;
  d[0] = left_value;
  for (int i = 1; i < n; ++i) {
    const double r = radius + i * h;
    a[static_cast<size_t>(i)] = -1.0 / (h * h) + 1.0 / (2.0 * h * r);
    b[static_cast<size_t>(i)] = 2.0 / (h * h) + q_const + q_inv_r2 / (r * r);
    c[static_cast<size_t>(i)] = -1.0 / (h * h) - 1.0 / (2.0 * h * r);
  }
  const double rn = radius + big_x;
  // Ghost elimination: v_{n+1} = v_{n-1} - 2 h kappa v_n applied to both the
  // v'' and v'/r terms of the last row.
  a[m - 1] = -2.0 / (h * h);
  b[m - 1] = 2.0 / (h * h) + 2.0 * kappa / h + kappa / rn + q_const +
             q_inv_r2 / (rn * rn);
  return tridiag::solve(a, b, c, d);
}

// Decay rate of K_l at large argument: -K_l'/K_l ~ this expansion.
double exterior_decay_rate(int l, double r) {
  return 1.0 + 1.0 / (2.0 * r) + (4.0 * l * l - 1.0) / (8.0 * r * r);
}

double radial_rate_single(const ModelParams& p, Regime reg, int l,
                          double radius, double big_x, int n) {
  const double lam = p.consumption_rate;
  const double g0 = p.growth_rate;
  const double cb = p.background_concentration;
  const double h = radius / n;
  const size_t m = static_cast<size_t>(n) + 1;
  const double rl = std::pow(radius, l);

  auto scale = [&](const std::vector<double>& u, double factor) {
    std::vector<double> v(u.size());
    for (size_t i = 0; i < u.size(); ++i) v[i] = factor * u[i];
    return v;
  };
  const std::vector<double> zero(m, 0.0);
  // d/dr of r^l w at r = R.
  auto lifted_d1 = [&](const std::vector<double>& w) {
    return rl * d1_right(w, h) + l * rl / radius * w[m - 1];
  };

  std::vector<double> c0;
  std::vector<double> wc;  // c1 = r^l wc
  if (reg == Regime::InVitro) {
    c0 = solve_radial_interior(lam, 0, zero, cb, radius, n);
    wc = solve_radial_interior(lam, l, zero, -d1_right(c0, h) / rl, radius, n);
  } else {
    const int ne = std::max(5, static_cast<int>(std::lround(big_x / h)));
    const double kappa0 = exterior_decay_rate(0, radius + big_x);
    const double kappal = exterior_decay_rate(l, radius + big_x);
    const std::vector<double> a_sol =
        solve_radial_interior(lam, 0, zero, 1.0, radius, n);
    const std::vector<double> u_sol = solve_radial_exterior(
        1.0, 0.0, kappa0, -cb, radius, big_x, ne);  // u = c - cB
    const std::vector<double> b_sol =
        solve_radial_exterior(1.0, 0.0, kappa0, 1.0, radius, big_x, ne);
    const double ho = big_x / ne;
    std::vector<double> p_sol(u_sol.size());
    for (size_t i = 0; i < u_sol.size(); ++i) p_sol[i] = u_sol[i] + cb;
    const double s =
        d1_left(p_sol, ho) / (d1_right(a_sol, h) - d1_left(b_sol, ho));
    c0 = scale(a_sol, s);
    // First order: w-form interior with w(R) = 1/R^l so c1(R) = s1;
    // exterior homogeneous with v(R) = 1; jump matching as in the TW case.
    const std::vector<double> wh = solve_radial_interior(
        lam, l, zero, 1.0 / rl, radius, n);
    const std::vector<double> vh = solve_radial_exterior(
        1.0, static_cast<double>(l) * l, kappal, 1.0, radius, big_x, ne);
    const double jump = (lam - 1.0) * s + cb;
    const double s1 = jump / (d1_left(vh, ho) - lifted_d1(wh));
    wc = scale(wh, s1);
  }
  const std::vector<double> p0 =
      solve_radial_interior(0.0, 0, scale(c0, g0), 0.0, radius, n);
  const std::vector<double> wp = solve_radial_interior(
      0.0, l, scale(wc, g0), -d1_right(p0, h) / rl, radius, n);
  return -(d2_right(p0, h) + lifted_d1(wp));
}

// --- Richardson assembly ------------------------------------------------------

void check_config(const ModelParams& p, const OracleConfig& cfg,
                  double* big_x) {
  const double min_x = 20.0 / std::min(1.0, std::sqrt(p.consumption_rate));
  if (cfg.truncation == 0.0) {
    *big_x = min_x;
  } else if (cfg.truncation >= min_x) {
    *big_x = cfg.truncation;
  } else {
    throw std::invalid_argument(
        "oracle: truncation X must be at least 20/min(1, sqrt(lambda)) = " +
        std::to_string(min_x));
  }
  if (cfg.grid_points < 100) {
    throw std::invalid_argument("oracle: grid_points must be >= 100");
  }
  if (cfg.refinement_levels < 2) {
    throw std::invalid_argument("oracle: refinement_levels must be >= 2");
  }
  if (!(cfg.tolerance > 0.0)) {
    throw std::invalid_argument("oracle: tolerance must be > 0");
  }
}

template <typename RateFn>
OracleResult assemble(const ModelParams& p, const RateFn& rate_at,
                      const OracleConfig& cfg) {
  OracleResult out{};
  int n = cfg.grid_points;
  for (int level = 0; level < cfg.refinement_levels; ++level) {
    out.level_rates.push_back(rate_at(n));
    n *= 2;
  }
  const size_t last = out.level_rates.size() - 1;
  const double r_last = out.level_rates[last];
  const double r_prev = out.level_rates[last - 1];
  out.rate = r_last + (r_last - r_prev) / 3.0;
  out.error_estimate = std::fabs(r_last - r_prev) / 3.0;
  if (out.level_rates.size() >= 3) {
    const double d1 = out.level_rates[last - 1] - out.level_rates[last - 2];
    const double d2 = r_last - r_prev;
    out.observed_order = (d2 != 0.0 && d1 != 0.0)
                             ? std::log2(std::fabs(d1) / std::fabs(d2))
                             : std::numeric_limits<double>::quiet_NaN();
  } else {
    out.observed_order = std::numeric_limits<double>::quiet_NaN();
  }
  // Convergence sanity: meaningful level-to-level drift must shrink roughly
  // like h^2. Differences at rounding scale are exempt (neutral modes).
  const double scale = p.g0cb();
  if (out.error_estimate > 1e-6 * scale &&
      !(out.observed_order > 1.0 || std::isnan(out.observed_order))) {
    throw NumericError(
        "oracle: refinement levels do not converge at second order "
        "(observed order " +
        std::to_string(out.observed_order) + ", error estimate " +
        std::to_string(out.error_estimate) + ")");
  }
  return out;
}

}  // namespace

OracleResult oracle_tw_rate(const ModelParams& p, Regime reg, double l,
                            const OracleConfig& cfg) {
  validate(p);
  if (!(l >= 0.0)) {
    throw std::domain_error("oracle_tw_rate: frequency l must be >= 0");
  }
  double big_x = 0.0;
  check_config(p, cfg, &big_x);
  return assemble(
      p, [&](int n) { return tw_rate_single(p, reg, l, big_x, n); }, cfg);
}

OracleResult oracle_radial_rate(const ModelParams& p, Regime reg, int l,
                                double radius, const OracleConfig& cfg) {
  validate(p);
  if (l < 1) {
    throw std::invalid_argument("oracle_radial_rate: mode l must be >= 1");
  }
  if (!(radius > 0.0)) {
    throw std::domain_error("oracle_radial_rate: radius must be > 0");
  }
  double big_x = 0.0;
  check_config(p, cfg, &big_x);
  return assemble(
      p,
      [&](int n) { return radial_rate_single(p, reg, l, radius, big_x, n); },
      cfg);
}

namespace {

// Fixed composite Simpson; used only to size the adaptive tolerance.
template <typename F>
double simpson_fixed(const F& f, double a, double b, int intervals) {
  const double h = (b - a) / intervals;
  double sum = f(a) + f(b);
  for (int i = 1; i < intervals; ++i) {
    sum += f(a + i * h) * ((i % 2 == 1) ? 4.0 : 2.0);
  }
  return sum * h / 3.0;
}

}  // namespace

BesselPair oracle_bessel(int n, double x, double tol) {
  if (n < 0 || n > 12) {
    throw std::domain_error("oracle_bessel: order restricted to 0 <= n <= 12");
  }
  if (!(x > 0.0) || x > 30.0) {
    throw std::domain_error(
        "oracle_bessel: argument restricted to 0 < x <= 30");
  }
  constexpr double pi = 3.141592653589793238462643383279502884;
  // I_n: all-positive integrand x^n/((2n-1)!! pi) Int e^{x cos t} sin^{2n} t.
  double prefactor = 1.0 / pi;
  for (int j = 1; j <= n; ++j) {
    prefactor *= x / (2.0 * j - 1.0);
  }
  const auto i_integrand = [n, x](double t) {
    const double s = std::sin(t);
    double sp = 1.0;
    for (int j = 0; j < n; ++j) sp *= s * s;
    return std::exp(x * std::cos(t)) * sp;
  };
  const double i_rough = simpson_fixed(i_integrand, 0.0, pi, 256);
  const double i_value =
      prefactor *
      quadrature::adaptive_simpson(i_integrand, 0.0, pi,
                                   0.05 * tol * std::max(i_rough, 1e-300));
  // K_n: extend Int_0^inf e^{-x cosh t} cosh(n t) dt in blocks of length 5
  // until a block stops contributing. log(cosh(nt)) is formed without
  // overflowing cosh at large t.
  const auto k_integrand = [n, x](double t) {
    const double y = std::fabs(n * t);
    const double log_cosh_nt =
        y + std::log1p(std::exp(-2.0 * y)) - 0.6931471805599453094172321;
    const double exponent = -x * std::cosh(t) + log_cosh_nt;
    return (exponent < -745.0) ? 0.0 : std::exp(exponent);
  };
  double k_value = 0.0;
  for (int block = 0; block < 12; ++block) {
    const double lo = 5.0 * block;
    const double hi = lo + 5.0;
    const double rough = (block == 0)
                             ? simpson_fixed(k_integrand, lo, hi, 256)
                             : k_value;
    const double piece = quadrature::adaptive_simpson(
        k_integrand, lo, hi, 0.05 * tol * std::max(std::fabs(rough), 1e-300));
    k_value += piece;
    if (std::fabs(piece) < 0.5 * tol * std::fabs(k_value)) break;
  }
  return BesselPair{i_value, k_value};
}

}  // namespace helestab::oracle
