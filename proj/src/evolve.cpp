// ============================================================================
// Linearized boundary evolution.
// ============================================================================

#include "helestab/evolve.hpp"

#include <cmath>
#include <stdexcept>

#include "helestab/stability.hpp"
#include "helestab/steady.hpp"

namespace helestab::evolve {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

double mode_rate(const SimConfig& cfg, double radius) {
  return cfg.regime == Regime::InVitro
             ? stability::f3(cfg.params, cfg.l, radius)
             : stability::f4(cfg.params, cfg.l, radius);
}

double speed(const SimConfig& cfg, double radius) {
  return steady::radial_speed(cfg.params, cfg.regime, radius);
}

void validate_config(const SimConfig& cfg) {
  validate(cfg.params);
  if (cfg.l < 1) {
    throw std::invalid_argument("evolve: mode l must be >= 1");
  }
  if (!(cfg.r0 > 0.0)) {
    throw std::invalid_argument("evolve: initial radius must be > 0");
  }
  if (!(cfg.t_final >= 0.0)) {
    throw std::invalid_argument("evolve: horizon must be >= 0");
  }
  if (cfg.dt < 0.0) {
    throw std::invalid_argument("evolve: dt must be >= 0");
  }
  if (!(cfg.adaptive_tol > 0.0) || !(cfg.validity_cap > 0.0)) {
    throw std::invalid_argument("evolve: tolerances must be > 0");
  }
}

struct Derivative {
  double d_radius;
  double d_delta;
};

Derivative rhs(const SimConfig& cfg, double radius, double delta) {
  return {speed(cfg, radius), mode_rate(cfg, radius) * delta};
}

EvolutionState rk4_step(const EvolutionState& s, const SimConfig& cfg,
                        double dt) {
  const Derivative k1 = rhs(cfg, s.radius, s.delta);
  const Derivative k2 = rhs(cfg, s.radius + 0.5 * dt * k1.d_radius,
                            s.delta + 0.5 * dt * k1.d_delta);
  const Derivative k3 = rhs(cfg, s.radius + 0.5 * dt * k2.d_radius,
                            s.delta + 0.5 * dt * k2.d_delta);
  const Derivative k4 =
      rhs(cfg, s.radius + dt * k3.d_radius, s.delta + dt * k3.d_delta);
  EvolutionState out;
  out.t = s.t + dt;
  out.radius = s.radius + dt / 6.0 *
                              (k1.d_radius + 2.0 * k2.d_radius +
                               2.0 * k3.d_radius + k4.d_radius);
  out.delta = s.delta + dt / 6.0 *
                            (k1.d_delta + 2.0 * k2.d_delta +
                             2.0 * k3.d_delta + k4.d_delta);
  if (!(out.radius > 0.0)) {
    throw NumericError("evolve: step produced a non-positive radius");
  }
  return out;
}

double default_dt(const SimConfig& cfg) {
  return cfg.dt > 0.0 ? cfg.dt : cfg.t_final / 2000.0;
}

TrajectoryPoint sample(const EvolutionState& s, const SimConfig& cfg) {
  TrajectoryPoint pt{};
  pt.t = s.t;
  pt.radius = s.radius;
  pt.delta = s.delta;
  pt.rate = mode_rate(cfg, s.radius);
  pt.valid = std::fabs(s.delta) / s.radius <= cfg.validity_cap;
  return pt;
}

}  // namespace

EvolutionState step(const EvolutionState& state, const SimConfig& cfg) {
  validate_config(cfg);
  if (!(cfg.t_final > 0.0)) {
    throw std::invalid_argument("evolve::step: needs a positive horizon");
  }
  return rk4_step(state, cfg, default_dt(cfg));
}

std::vector<TrajectoryPoint> simulate(const SimConfig& cfg) {
  validate_config(cfg);
  std::vector<TrajectoryPoint> out;
  EvolutionState s{0.0, cfg.r0, cfg.delta0};
  out.push_back(sample(s, cfg));
  if (cfg.t_final == 0.0) return out;

  if (!cfg.adaptive) {
    const double dt = default_dt(cfg);
    const int steps =
        std::max(1, static_cast<int>(std::ceil(cfg.t_final / dt - 1e-9)));
    for (int i = 1; i <= steps; ++i) {
      // Step to i*dt (never accumulated) so the time axis is exact and the
      // final sample lands on t_final even when dt does not divide it.
      const double target = (i == steps) ? cfg.t_final : i * dt;
      s = rk4_step(s, cfg, target - s.t);
      s.t = target;
      out.push_back(sample(s, cfg));
    }
    return out;
  }

  // Step-doubling control: compare one dt step against two dt/2 steps and
  // keep the halved result when the discrepancy passes the tolerance.
  double dt = cfg.dt > 0.0 ? cfg.dt : cfg.t_final / 100.0;
  while (s.t < cfg.t_final) {
    dt = std::min(dt, cfg.t_final - s.t);
    const EvolutionState full = rk4_step(s, cfg, dt);
    const EvolutionState half = rk4_step(rk4_step(s, cfg, 0.5 * dt), cfg,
                                         0.5 * dt);
    const double scale =
        std::fabs(half.radius) + std::fabs(half.delta) + 1e-30;
    const double err = (std::fabs(full.radius - half.radius) +
                        std::fabs(full.delta - half.delta)) /
                       15.0;
    if (err <= cfg.adaptive_tol * scale || dt <= 1e-12 * cfg.t_final) {
      s = half;
      out.push_back(sample(s, cfg));
      if (err > 0.0) {
        dt *= std::min(2.0,
                       0.9 * std::pow(cfg.adaptive_tol * scale / err, 0.2));
      } else {
        dt *= 2.0;
      }
    } else {
      dt *= std::max(0.1, 0.9 * std::pow(cfg.adaptive_tol * scale / err, 0.2));
    }
  }
  return out;
}

std::vector<CurvePoint> boundary_curve(const EvolutionState& state, int l,
                                       int n_theta) {
  if (n_theta < 8) {
    throw std::invalid_argument("boundary_curve: n_theta must be >= 8");
  }
  if (l < 1) {
    throw std::invalid_argument("boundary_curve: mode l must be >= 1");
  }
  std::vector<CurvePoint> out;
  out.reserve(static_cast<size_t>(n_theta));
  for (int j = 0; j < n_theta; ++j) {
    const double theta = -kPi + 2.0 * kPi * j / n_theta;
    const double r = state.radius + state.delta * std::cos(l * theta);
    out.push_back(CurvePoint{theta, r * std::cos(theta), r * std::sin(theta)});
  }
  return out;
}

double tw_amplitude(const ModelParams& p, Regime reg, double l, double delta0,
                    double t_final) {
  validate(p);
  if (!(t_final >= 0.0)) {
    throw std::invalid_argument("tw_amplitude: horizon must be >= 0");
  }
  const double f = reg == Regime::InVitro ? stability::f1(p, l)
                                          : stability::f2(p, l);
  return delta0 * std::exp(f * t_final);
}

}  // namespace helestab::evolve
