// Linearized boundary-evolution simulator: dR/dt = radial_speed(R),
// d(delta)/dt = F(lambda, l, R) delta, with boundary curves
// r(theta) = R + delta cos(l theta).
#pragma once

#include <vector>

#include "helestab/types.hpp"

namespace helestab::evolve {

struct EvolutionState {
  double t = 0.0;
  double radius = 1.0;
  double delta = 0.0;
};

struct SimConfig {
  ModelParams params;
  Regime regime = Regime::InVivo;
  int l = 2;                 // radial mode (positive integer)
  double r0 = 1.0;           // initial radius
  double delta0 = 0.0;       // initial perturbation amplitude
  double t_final = 1.0;      // horizon T
  double dt = 0.0;           // fixed step; 0 picks t_final/2000
  bool adaptive = false;     // step-doubling control instead of fixed dt
  double adaptive_tol = 1e-8;
  double validity_cap = 0.2;  // |delta|/R above this flags the sample
};

struct TrajectoryPoint {
  double t;
  double radius;
  double delta;
  double rate;  // F(lambda, l, R) at this sample
  bool valid;   // |delta|/R <= validity_cap
};

// One classical RK4 step of size cfg.dt (or the default) from `state`; the
// rate is re-evaluated at every stage radius.
EvolutionState step(const EvolutionState& state, const SimConfig& cfg);

// Deterministic trajectory from (r0, delta0) at t = 0 to t = t_final,
// including both endpoints. t_final = 0 yields the single initial state.
std::vector<TrajectoryPoint> simulate(const SimConfig& cfg);

struct CurvePoint {
  double theta;
  double x;
  double y;
};

// n_theta >= 8 points of r(theta) = R + delta cos(l theta), theta uniform on
// [-pi, pi), first point at theta = -pi.
std::vector<CurvePoint> boundary_curve(const EvolutionState& state, int l,
                                       int n_theta);

// Traveling-wave amplitude after time T: delta0 e^{F T} with F = f1 or f2
// depending on the regime (exact: the TW rate does not depend on time).
double tw_amplitude(const ModelParams& p, Regime reg, double l, double delta0,
                    double t_final);

}  // namespace helestab::evolve
