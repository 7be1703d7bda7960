// Closed-form unperturbed solutions: nutrient profiles, pressure profiles,
// and boundary speeds for the traveling-wave and radial geometries in both
// nutrient regimes.
#pragma once

#include "helestab/types.hpp"

namespace helestab::steady {

// Traveling-wave frame: xi <= 0 inside the tumor, boundary at xi = 0.
//
// Nutrient: in vitro c = cB e^{sqrt(lambda) xi} inside, cB outside; in vivo
// piecewise profile, C^1 across xi = 0, tending to 0 at -inf and cB at +inf.
double tw_nutrient(const ModelParams& p, Regime reg, double xi);

// Pressure vanishes at the boundary and has zero gradient at -inf. Exterior
// evaluation (xi > 0): in vitro the pressure is identically 0 outside; in
// vivo the exterior pressure field is not part of the model and requesting
// it is a domain error.
double tw_pressure(const ModelParams& p, Regime reg, double xi);

// Front speed: G0 cB/sqrt(lambda) (in vitro), G0 cB/(lambda+sqrt(lambda))
// (in vivo). The in-vivo front is always slower.
double tw_speed(const ModelParams& p, Regime reg);

// In-vivo radial matching coefficients at radius R:
//   C(R)  = sqrt(lambda) K_0(R) I_1(sqrt(lambda) R) + K_1(R) I_0(sqrt(lambda) R)
//   a0    = K_1(R)/C(R)                       (interior amplitude, > 0)
//   b0    = -sqrt(lambda) I_1(sqrt(lambda) R)/C(R)   (exterior amplitude, < 0)
// big_c_scaled = C(R) e^{R - sqrt(lambda) R} stays representable at any R and
// is what downstream formulas consume; big_c is the plain value (may overflow
// to +inf at extreme lambda*R, a0/b0 remain finite far beyond that).
struct RadialCoeffs {
  double a0;
  double b0;
  double big_c;
  double big_c_scaled;
};
RadialCoeffs radial_coeffs(const ModelParams& p, double radius);

// Radial nutrient at distance r from the center for boundary radius R;
// r may exceed R (in vitro exterior is cB, in vivo exterior decays to cB).
double radial_nutrient(const ModelParams& p, Regime reg, double radius,
                       double r);

// Radial pressure on [0, R]; p(R) = 0, dp/dr(0) = 0. For r > R: 0 in vitro,
// domain error in vivo (same convention as tw_pressure).
double radial_pressure(const ModelParams& p, Regime reg, double radius,
                       double r);

// Boundary speed dR/dt of the radial tumor. Converges to the matching
// tw_speed as R -> infinity; in vivo is slower at every radius.
double radial_speed(const ModelParams& p, Regime reg, double radius);

}  // namespace helestab::steady
