// Perturbation evolution rates delta^{-1} d(delta)/dt for single-mode
// boundary perturbations, their closed-form limits, and threshold finders.
//
//   f1: traveling wave, in vitro      f3: radial, in vitro
//   f2: traveling wave, in vivo       f4: radial, in vivo
#pragma once

#include <optional>
#include <vector>

#include "helestab/types.hpp"

namespace helestab::stability {

// (G0 cB/sqrt(lambda)) (sqrt(lambda) - sqrt(lambda + l^2)); <= 0 always,
// = 0 exactly at l = 0.
double f1(const ModelParams& p, double l);

// In-vivo traveling-wave rate. Algebraically identical to
//   (G0 cB/sqrt(lambda)) [ (sqrt(lambda)-l)/(sqrt(lambda)+1)
//                        + (l-Sl)/(Sl+S1) ],
// with Sl = sqrt(lambda+l^2), S1 = sqrt(1+l^2), but evaluated through the
// rationalized single-fraction form
//   N = l^2 (lambda-1)/(sqrt(lambda) S1 + Sl) - l^3 [1/(sqrt(lambda)+Sl)
//       + 1/(1+S1)]
//   f2 = (G0 cB/sqrt(lambda)) N / ((sqrt(lambda)+1)(Sl+S1))
// which has no subtractive cancellation at small l.
double f2(const ModelParams& p, double l);

// Closed form at lambda = 1 with G0 cB = 1: l(1-sqrt(1+l^2))/(2 sqrt(1+l^2)).
double f2_lambda1(double l);

// Leading small-l behavior of f2:
// G0 cB (lambda-1) l^2 / (2 lambda (sqrt(lambda)+1)(Sl+S1)).
double f2_small_l_asymptote(const ModelParams& p, double l);

// Radial in-vitro rate
//   G0 cB (I_1/I_0)(I_1'/I_1 - I_l'/I_l) at argument sqrt(lambda) R.
// Exactly 0 at l = 1; negative for l >= 2.
double f3(const ModelParams& p, int l, double radius);

// Radial in-vivo rate, assembled from scaled Bessel products via
//   C_j(R) = K_j'(R) I_j(sqrt(lambda) R) - sqrt(lambda) I_j'(sqrt(lambda) R) K_j(R)
//   T1 = l/(sqrt(lambda) R C) [ (C_1/C_l) K_l I_l - K_1 I_1 ]
//   T2 = (1/C) [ (C_1/C_l) K_l I_l' - K_1 I_1' ]
//   f4 = G0 cB (T1 - T2)
// with K at argument R and I at argument sqrt(lambda) R throughout.
double f4(const ModelParams& p, int l, double radius);

// Small-R limit of f4: G0 cB (1-l)/2 (independent of lambda and R).
double f4_small_radius_asymptote(const ModelParams& p, int l);

// Large-R tail of f4:
// G0 cB 5 (l^2-1)(sqrt(lambda)-1) / (16 lambda R^2 (sqrt(lambda)+1)).
double f4_large_radius_asymptote(const ModelParams& p, int l, double radius);

// lambda = 1 finite-sum form of f4 (all Bessel arguments R):
//   G0 cB sum_{j=1}^{l-1} [ R (K_j I_{j+1} - K_{j+1} I_{j+2}) - K_1 I_1 ].
double f4_lambda1_sum(const ModelParams& p, int l, double radius);

// Smallest l > 0 with f2 = 0. Exists iff lambda > 1 (f2 > 0 on (0, L));
// returns nullopt for lambda <= 1. Refined until |f2| <= 1e-12 G0 cB and the
// bracket is below 1e-10.
std::optional<double> threshold_l(const ModelParams& p);

// Radius R*(l) where the radial in-vivo mode l >= 2 switches from decaying
// (f4 < 0, small R) to growing (f4 > 0, large R). Exists iff lambda > 1;
// returns nullopt for lambda <= 1. Relative bracket refined below 1e-10.
std::optional<double> critical_radius(const ModelParams& p, int l);

// Uniform dispatcher. mode is the frequency l (must be a positive integer
// for f3/f4); radius is ignored for f1/f2.
double rate(const ModelParams& p, FormulaId formula, double mode,
            double radius = 0.0);

struct StabilityReport {
  FormulaId formula;
  double g0;
  double cb;
  double lambda;
  double mode;
  double radius;  // NaN for traveling-wave rows
  double rate;
  Classification classification;
};

// Grid evaluation, lexicographic in (mode index, radius index); radii are
// ignored for traveling-wave formulas (one row per mode). Rates equal the
// corresponding f1..f4 calls bit for bit; evaluation may run on several
// workers but rows are stored by index.
std::vector<StabilityReport> stability_sweep(const ModelParams& p,
                                             FormulaId formula,
                                             const std::vector<double>& modes,
                                             const std::vector<double>& radii);

}  // namespace helestab::stability
