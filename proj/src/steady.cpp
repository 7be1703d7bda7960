// ============================================================================
// Unperturbed steady solutions.
//
// Every radial expression is assembled from exponentially scaled Bessel
// factors so the e^{±sqrt(lambda) R} magnitudes cancel algebraically instead
// of overflowing; the residual exponents are always differences like
// sqrt(lambda)(r - R) <= 0 that are safe to exponentiate.
// ============================================================================

#include "helestab/steady.hpp"

#include <cmath>
#include <stdexcept>

#include "helestab/bessel.hpp"

namespace helestab::steady {

namespace {

using bessel::bessel_i_scaled;
using bessel::bessel_k_scaled;

}  // namespace

double tw_nutrient(const ModelParams& p, Regime reg, double xi) {
  validate(p);
  const double sl = std::sqrt(p.consumption_rate);
  if (reg == Regime::InVitro) {
    if (xi > 0.0) return p.background_concentration;
    return p.background_concentration * std::exp(sl * xi);
  }
  if (xi <= 0.0) {
    return p.background_concentration / (sl + 1.0) * std::exp(sl * xi);
  }
  return p.background_concentration -
         sl * p.background_concentration / (sl + 1.0) * std::exp(-xi);
}

double tw_pressure(const ModelParams& p, Regime reg, double xi) {
  validate(p);
  if (xi > 0.0) {
    if (reg == Regime::InVitro) return 0.0;
    throw std::domain_error(
        "tw_pressure: no in-vivo pressure field outside the tumor (xi > 0)");
  }
  const double lam = p.consumption_rate;
  const double sl = std::sqrt(lam);
  const double core = p.g0cb() / lam * (1.0 - std::exp(sl * xi));
  if (reg == Regime::InVitro) return core;
  return core / (sl + 1.0);
}

double tw_speed(const ModelParams& p, Regime reg) {
  validate(p);
  const double lam = p.consumption_rate;
  const double sl = std::sqrt(lam);
  if (reg == Regime::InVitro) return p.g0cb() / sl;
  return p.g0cb() / (lam + sl);
}

RadialCoeffs radial_coeffs(const ModelParams& p, double radius) {
  validate(p);
  if (!(radius > 0.0)) {
    throw std::domain_error("radial_coeffs: radius must be > 0");
  }
  const double sl = std::sqrt(p.consumption_rate);
  const double z = sl * radius;
  const double cs = sl * bessel_k_scaled(0, radius) * bessel_i_scaled(1, z) +
                    bessel_k_scaled(1, radius) * bessel_i_scaled(0, z);
  RadialCoeffs out{};
  out.big_c_scaled = cs;
  // C = cs * e^{z - R}; a0 = Ks_1 e^{-R} / C = (Ks_1/cs) e^{-z};
  // b0 = -sl Is_1(z) e^{z} / C = -sl (Is_1/cs) e^{R}.
  out.big_c = cs * std::exp(z - radius);
  out.a0 = bessel_k_scaled(1, radius) / cs * std::exp(-z);
  out.b0 = -sl * bessel_i_scaled(1, z) / cs * std::exp(radius);
  return out;
}

double radial_nutrient(const ModelParams& p, Regime reg, double radius,
                       double r) {
  validate(p);
  if (!(radius > 0.0) || !(r >= 0.0)) {
    throw std::domain_error("radial_nutrient: need radius > 0 and r >= 0");
  }
  const double sl = std::sqrt(p.consumption_rate);
  const double cb = p.background_concentration;
  const double z = sl * radius;
  if (reg == Regime::InVitro) {
    if (r >= radius) return cb;
    return cb * bessel_i_scaled(0, sl * r) / bessel_i_scaled(0, z) *
           std::exp(sl * (r - radius));
  }
  const double cs = sl * bessel_k_scaled(0, radius) * bessel_i_scaled(1, z) +
                    bessel_k_scaled(1, radius) * bessel_i_scaled(0, z);
  if (r <= radius) {
    // cB a0 I_0(sqrt(lambda) r) with the exponents folded together.
    return cb * bessel_k_scaled(1, radius) * bessel_i_scaled(0, sl * r) / cs *
           std::exp(sl * (r - radius));
  }
  // cB (1 + b0 K_0(r)); b0 K_0(r) = -sl Is_1(z) Ks_0(r) e^{R-r} / cs.
  return cb * (1.0 - sl * bessel_i_scaled(1, z) * bessel_k_scaled(0, r) / cs *
                         std::exp(radius - r));
}

double radial_pressure(const ModelParams& p, Regime reg, double radius,
                       double r) {
  validate(p);
  if (!(radius > 0.0) || !(r >= 0.0)) {
    throw std::domain_error("radial_pressure: need radius > 0 and r >= 0");
  }
  if (r > radius) {
    if (reg == Regime::InVitro) return 0.0;
    throw std::domain_error(
        "radial_pressure: no in-vivo pressure field outside the tumor "
        "(r > radius)");
  }
  const double lam = p.consumption_rate;
  const double sl = std::sqrt(lam);
  const double z = sl * radius;
  if (reg == Regime::InVitro) {
    // (G0 cB/lambda)(1 - I_0(sqrt(lambda) r)/I_0(sqrt(lambda) R))
    const double ratio = bessel_i_scaled(0, sl * r) / bessel_i_scaled(0, z) *
                         std::exp(sl * (r - radius));
    return p.g0cb() / lam * (1.0 - ratio);
  }
  // (G0 cB/lambda) a0 (I_0(sqrt(lambda) R) - I_0(sqrt(lambda) r))
  const double cs = sl * bessel_k_scaled(0, radius) * bessel_i_scaled(1, z) +
                    bessel_k_scaled(1, radius) * bessel_i_scaled(0, z);
  const double ks1 = bessel_k_scaled(1, radius);
  const double a0_i0_r = ks1 * bessel_i_scaled(0, sl * r) / cs *
                         std::exp(sl * (r - radius));
  const double a0_i0_cap = ks1 * bessel_i_scaled(0, z) / cs;
  return p.g0cb() / lam * (a0_i0_cap - a0_i0_r);
}

double radial_speed(const ModelParams& p, Regime reg, double radius) {
  validate(p);
  if (!(radius > 0.0)) {
    throw std::domain_error("radial_speed: radius must be > 0");
  }
  const double sl = std::sqrt(p.consumption_rate);
  const double z = sl * radius;
  if (reg == Regime::InVitro) {
    return p.g0cb() / sl * bessel_i_scaled(1, z) / bessel_i_scaled(0, z);
  }
  const double cs = sl * bessel_k_scaled(0, radius) * bessel_i_scaled(1, z) +
                    bessel_k_scaled(1, radius) * bessel_i_scaled(0, z);
  // (G0 cB/sqrt(lambda)) a0 I_1(sqrt(lambda) R): the e^{±} factors cancel.
  return p.g0cb() / sl * bessel_k_scaled(1, radius) * bessel_i_scaled(1, z) /
         cs;
}

}  // namespace helestab::steady
