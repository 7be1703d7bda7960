// ============================================================================
// Perturbation evolution rates and threshold finders.
//
// All radial formulas are assembled from exponentially scaled Bessel factors;
// every product pairs one e^{+} with one e^{-} of the same exponent, so the
// assembled values carry no residual exponential at any (lambda, R).
// ============================================================================

#include "helestab/stability.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "helestab/bessel.hpp"
#include "helestab/parallel.hpp"
#include "helestab/rootfind.hpp"

namespace helestab::stability {

namespace {

void check_mode(int l, int minimum) {
  if (l < minimum) {
    throw std::invalid_argument("stability: mode l = " + std::to_string(l) +
                                " must be >= " + std::to_string(minimum));
  }
  if (l > bessel::kMaxOrder) {
    throw std::invalid_argument("stability: mode l = " + std::to_string(l) +
                                " exceeds the Bessel order cap " +
                                std::to_string(bessel::kMaxOrder));
  }
}

void check_radius(double radius) {
  if (!(radius > 0.0)) {
    throw std::domain_error("stability: radius must be > 0");
  }
}

// Scaled version of C_j(R): e^{R - sqrt(lambda) R} C_j(R). Uses the
// derivative recurrences on the scaled order tables (is_z at sqrt(lambda) R,
// ks_r at R, both filled through order j+1).
double cj_scaled(int j, double sl, const std::vector<double>& is_z,
                 const std::vector<double>& ks_r) {
  const size_t u = static_cast<size_t>(j);
  const double ksp = (j == 0) ? -ks_r[1] : -0.5 * (ks_r[u - 1] + ks_r[u + 1]);
  const double isp = (j == 0) ? is_z[1] : 0.5 * (is_z[u - 1] + is_z[u + 1]);
  return ksp * is_z[u] - sl * isp * ks_r[u];
}

}  // namespace

double f1(const ModelParams& p, double l) {
  validate(p);
  if (!(l >= 0.0)) {
    throw std::domain_error("f1: mode l must be >= 0");
  }
  const double lam = p.consumption_rate;
  const double sl = std::sqrt(lam);
  return p.g0cb() / sl * (sl - std::sqrt(lam + l * l));
}

double f2(const ModelParams& p, double l) {
  validate(p);
  if (!(l >= 0.0)) {
    throw std::domain_error("f2: mode l must be >= 0");
  }
  const double lam = p.consumption_rate;
  const double sl = std::sqrt(lam);
  const double s_lam = std::sqrt(lam + l * l);
  const double s_one = std::sqrt(1.0 + l * l);
  const double n = l * l * (lam - 1.0) / (sl * s_one + s_lam) -
                   l * l * l * (1.0 / (sl + s_lam) + 1.0 / (1.0 + s_one));
  return p.g0cb() / sl * n / ((sl + 1.0) * (s_lam + s_one));
}

double f2_lambda1(double l) {
  if (!(l >= 0.0)) {
    throw std::domain_error("f2_lambda1: mode l must be >= 0");
  }
  // l (1 - sqrt(1 + l^2)) / (2 sqrt(1 + l^2)) rationalized so the small-l
  // difference 1 - sqrt(1 + l^2) never cancels.
  const double s_one = std::sqrt(1.0 + l * l);
  return -l * l * l / (2.0 * s_one * (1.0 + s_one));
}

double f2_small_l_asymptote(const ModelParams& p, double l) {
  validate(p);
  if (!(l >= 0.0)) {
    throw std::domain_error("f2_small_l_asymptote: mode l must be >= 0");
  }
  const double lam = p.consumption_rate;
  const double sl = std::sqrt(lam);
  const double s_lam = std::sqrt(lam + l * l);
  const double s_one = std::sqrt(1.0 + l * l);
  return p.g0cb() * (lam - 1.0) * l * l /
         (2.0 * lam * (sl + 1.0) * (s_lam + s_one));
}

double f3(const ModelParams& p, int l, double radius) {
  validate(p);
  check_mode(l, 1);
  check_radius(radius);
  const double sl = std::sqrt(p.consumption_rate);
  const double z = sl * radius;
  const std::vector<double> is = bessel::bessel_i_scaled_all(l + 1, z);
  const double i1p = 0.5 * (is[0] + is[2]);
  const double ilp =
      0.5 * (is[static_cast<size_t>(l) - 1] + is[static_cast<size_t>(l) + 1]);
  return p.g0cb() * (is[1] / is[0]) *
         (i1p / is[1] - ilp / is[static_cast<size_t>(l)]);
}

double f4(const ModelParams& p, int l, double radius) {
  validate(p);
  check_mode(l, 1);
  check_radius(radius);
  const double lam = p.consumption_rate;
  const double sl = std::sqrt(lam);
  const double z = sl * radius;
  const int top = l + 1;
  const std::vector<double> is = bessel::bessel_i_scaled_all(top + 1, z);
  const std::vector<double> ks = bessel::bessel_k_scaled_all(top + 1, radius);
  const double c_hat = sl * ks[0] * is[1] + ks[1] * is[0];
  const double c1 = cj_scaled(1, sl, is, ks);
  const double cl = cj_scaled(l, sl, is, ks);
  if (cl == 0.0 || !std::isfinite(cl)) {
    throw NumericError("f4: matching coefficient C_l(R) degenerate at l = " +
                       std::to_string(l) + ", R = " + std::to_string(radius));
  }
  const double ratio = c1 / cl;
  const size_t u = static_cast<size_t>(l);
  const double i1p = 0.5 * (is[0] + is[2]);
  const double ilp = 0.5 * (is[u - 1] + is[u + 1]);
  const double t1 =
      l / (z * c_hat) * (ratio * ks[u] * is[u] - ks[1] * is[1]);
  const double t2 = (ratio * ks[u] * ilp - ks[1] * i1p) / c_hat;
  return p.g0cb() * (t1 - t2);
}

double f4_small_radius_asymptote(const ModelParams& p, int l) {
  validate(p);
  check_mode(l, 1);
  return p.g0cb() * (1.0 - l) / 2.0;
}

double f4_large_radius_asymptote(const ModelParams& p, int l, double radius) {
  validate(p);
  check_mode(l, 1);
  check_radius(radius);
  const double lam = p.consumption_rate;
  const double sl = std::sqrt(lam);
  return p.g0cb() * 5.0 * (static_cast<double>(l) * l - 1.0) * (sl - 1.0) /
         (16.0 * lam * radius * radius * (sl + 1.0));
}

double f4_lambda1_sum(const ModelParams& p, int l, double radius) {
  validate(p);
  check_mode(l, 1);
  check_radius(radius);
  if (p.consumption_rate != 1.0) {
    throw std::invalid_argument(
        "f4_lambda1_sum: the finite-sum form only holds at lambda = 1");
  }
  const std::vector<double> is =
      bessel::bessel_i_scaled_all(l + 2, radius);
  const std::vector<double> ks =
      bessel::bessel_k_scaled_all(l + 2, radius);
  double sum = 0.0;
  for (int j = 1; j <= l - 1; ++j) {
    const size_t u = static_cast<size_t>(j);
    sum += radius * (ks[u] * is[u + 1] - ks[u + 1] * is[u + 2]) -
           ks[1] * is[1];
  }
  return p.g0cb() * sum;
}

std::optional<double> threshold_l(const ModelParams& p) {
  validate(p);
  if (p.consumption_rate <= 1.0) return std::nullopt;
  auto fn = [&p](double l) { return f2(p, l); };
  // f2 > 0 on (0, L) for lambda > 1; find a positive lower endpoint, then
  // expand the upper endpoint until the sign flips.
  double lo = 1e-3;
  double flo = fn(lo);
  while (flo <= 0.0 && lo > 1e-12) {
    lo *= 0.5;
    flo = fn(lo);
  }
  if (flo <= 0.0) {
    throw NumericError(
        "threshold_l: no positive band found down to l = 1e-12 "
        "(lambda barely above 1?)");
  }
  double hi = 10.0;
  double fhi = fn(hi);
  int expansions = 0;
  while (fhi > 0.0 && expansions < 40) {
    lo = hi;
    flo = fhi;
    hi *= 2.0;
    fhi = fn(hi);
    ++expansions;
  }
  if (fhi > 0.0) {
    throw NumericError("threshold_l: no sign change found in [1e-3, " +
                       std::to_string(hi) + "]");
  }
  // Collapse the bracket to ~machine width so both stopping contracts
  // (interval <= 1e-10 and |f2| <= 1e-12 G0 cB) hold at the returned root.
  const double root =
      rootfind::brent(fn, lo, hi, flo, fhi, 0.0, 1e-14, 0.0);
  if (std::fabs(fn(root)) > 1e-12 * p.g0cb()) {
    throw NumericError("threshold_l: refinement stalled, |f2(" +
                       std::to_string(root) + ")| above tolerance");
  }
  return root;
}

std::optional<double> critical_radius(const ModelParams& p, int l) {
  validate(p);
  check_mode(l, 2);
  if (p.consumption_rate <= 1.0) return std::nullopt;
  auto fn = [&p, l](double radius) { return f4(p, l, radius); };
  double lo = 1e-3;
  double flo = fn(lo);
  while (flo >= 0.0 && lo > 1e-9) {
    lo *= 0.5;
    flo = fn(lo);
  }
  if (flo >= 0.0) {
    throw NumericError(
        "critical_radius: f4 not negative near R = 0; scanned down to R = " +
        std::to_string(lo));
  }
  double hi = 1e3;
  double fhi = fn(hi);
  while (fhi < 0.0 && hi < 1e6) {
    lo = hi;
    flo = fhi;
    hi *= 2.0;
    fhi = fn(hi);
  }
  if (fhi < 0.0) {
    throw NumericError(
        "critical_radius: no sign change of f4 found in R = [1e-3, " +
        std::to_string(hi) + "]");
  }
  return rootfind::brent(fn, lo, hi, flo, fhi, 0.0, 1e-10, 0.0);
}

double rate(const ModelParams& p, FormulaId formula, double mode,
            double radius) {
  switch (formula) {
    case FormulaId::F1:
      return f1(p, mode);
    case FormulaId::F2:
      return f2(p, mode);
    case FormulaId::F3:
    case FormulaId::F4: {
      const double rounded = std::round(mode);
      if (!(mode > 0.0) || std::fabs(mode - rounded) > 0.0) {
        throw std::invalid_argument(
            "rate: radial modes must be positive integers");
      }
      const int l = static_cast<int>(rounded);
      return formula == FormulaId::F3 ? f3(p, l, radius) : f4(p, l, radius);
    }
  }
  throw std::logic_error("rate: unknown formula");
}

std::vector<StabilityReport> stability_sweep(const ModelParams& p,
                                             FormulaId formula,
                                             const std::vector<double>& modes,
                                             const std::vector<double>& radii) {
  validate(p);
  const bool radial = formula_geometry(formula) == GeometryKind::Radial;
  const std::vector<double> effective_radii =
      radial ? radii
             : std::vector<double>{std::numeric_limits<double>::quiet_NaN()};
  if (radial && radii.empty()) {
    throw std::invalid_argument(
        "stability_sweep: radial formulas need at least one radius");
  }
  const int n_modes = static_cast<int>(modes.size());
  const int n_radii = static_cast<int>(effective_radii.size());
  const int total = n_modes * n_radii;
  std::vector<StabilityReport> rows(static_cast<size_t>(total));
  parallel::parallel_for(total, [&](int idx) {
    const int mi = idx / n_radii;
    const int ri = idx % n_radii;
    const double mode = modes[static_cast<size_t>(mi)];
    const double radius = effective_radii[static_cast<size_t>(ri)];
    StabilityReport& row = rows[static_cast<size_t>(idx)];
    row.formula = formula;
    row.g0 = p.growth_rate;
    row.cb = p.background_concentration;
    row.lambda = p.consumption_rate;
    row.mode = mode;
    row.radius = radius;
    row.rate = rate(p, formula, mode, radius);
    row.classification = classify_rate(row.rate, p);
  });
  return rows;
}

}  // namespace helestab::stability
