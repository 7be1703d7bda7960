// Independent numerical re-derivation of every growth rate: the zeroth- and
// first-order perturbation BVPs are solved by second-order finite differences
// (no closed-form Bessel/exponential solutions anywhere in this module) and
// the rate is extracted as -(p0'' + p1') at the boundary. A quadrature-based
// Bessel evaluator certifies the special-function kernel.
#pragma once

#include <vector>

#include "helestab/types.hpp"

namespace helestab::oracle {

struct OracleConfig {
  // Truncation length: traveling-wave half-domain and radial exterior
  // cutoff. 0 picks the default 20/min(1, sqrt(lambda)), which keeps the
  // decay-tail error at or below e^{-20}.
  double truncation = 0.0;
  int grid_points = 600;      // coarsest level; each level doubles it
  int refinement_levels = 3;  // >= 2; Richardson uses the last two
  double tolerance = 1e-4;    // relative, used for reporting only
};

struct OracleResult {
  double rate;            // Richardson-extrapolated boundary rate
  double observed_order;  // log2(|r1-r0|/|r2-r1|) over the last 3 levels
  double error_estimate;  // |r_last - r_prev|/3, the extrapolation residual
  std::vector<double> level_rates;
};

// Traveling-wave rate for frequency l > 0 (l = 0 gives the neutral
// translation). Solves on [-X, 0] (plus [0, X] exterior for in vivo):
//   -c0'' + lambda c0 = 0            -c1'' + (lambda + l^2) c1 = 0
//   -p0''            = G0 c0         -p1'' + l^2 p1          = G0 c1
// with decay Robin conditions at the truncation, c1(0) = -c0'(0) and
// p1(0) = -p0'(0) flattening conditions (in vitro), or interface
// continuity/jump matching (in vivo); returns -(p0''(0) + p1'(0)).
OracleResult oracle_tw_rate(const ModelParams& p, Regime reg, double l,
                            const OracleConfig& cfg = {});

// Radial rate for integer mode l >= 1 at radius R. Interior solves use the
// substitution u = r^l w to impose regularity at the axis; the in-vivo
// exterior is truncated at R + X with a variable-coefficient decay Robin
// condition. Returns -(p0''(R) + p1'(R)).
OracleResult oracle_radial_rate(const ModelParams& p, Regime reg, int l,
                                double radius, const OracleConfig& cfg = {});

// Quadrature-based modified Bessel values (certification only; n <= 12,
// 0 < x <= 30):
//   I_n(x) = x^n/((2n-1)!! pi) Int_0^pi e^{x cos t} sin^{2n} t dt
//   K_n(x) = Int_0^inf e^{-x cosh t} cosh(n t) dt
struct BesselPair {
  double i;
  double k;
};
BesselPair oracle_bessel(int n, double x, double tol = 1e-11);

}  // namespace helestab::oracle
