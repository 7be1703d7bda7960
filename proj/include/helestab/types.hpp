// Shared domain types for the Hele-Shaw boundary-stability library.
#pragma once

#include <stdexcept>
#include <string>

namespace helestab {

inline constexpr const char* kVersion = "0.1.0";

// Physical parameters of the growth/nutrient model. Nondimensional units.
//   growth_rate             G0  > 0   cell production per unit concentration
//   background_concentration cB > 0   far-field / bath nutrient level
//   consumption_rate        lambda > 0 nutrient uptake rate inside the tumor
struct ModelParams {
    double growth_rate = 1.0;
    double background_concentration = 1.0;
    double consumption_rate = 1.0;

    // Common prefactor G0*cB of every rate and speed formula.
    double g0cb() const { return growth_rate * background_concentration; }
};

// Nutrient supply regime.
//   InVitro: concentration pinned to cB on and outside the boundary.
//   InVivo : exterior exchange term (cB - c) with unit exchange rate.
enum class Regime { InVitro, InVivo };

// Unperturbed boundary geometry.
enum class GeometryKind { TravelingWave, Radial };

// Perturbation growth-rate formula selector. The pair (geometry, regime)
// determines the formula: F1/F2 are traveling-wave, F3/F4 radial;
// odd indices in vitro, even in vivo.
enum class FormulaId { F1, F2, F3, F4 };

Regime formula_regime(FormulaId f);
GeometryKind formula_geometry(FormulaId f);

// Sign bucket of a perturbation growth rate.
enum class Classification { Stable, Unstable, Neutral };

// |rate| <= 1e-12*G0*cB counts as neutral: translation modes (l=1 radial)
// are analytically zero but float-evaluated.
inline constexpr double kNeutralTolFactor = 1e-12;

Classification classify_rate(double rate, const ModelParams& p);

const char* to_string(Classification c);
const char* to_string(Regime r);
const char* to_string(FormulaId f);

// Raised when a numeric procedure cannot meet its contract
// (failed bracketing, non-convergent refinement, overflowed assembly).
class NumericError : public std::runtime_error {
  public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

void validate(const ModelParams& p);

// ---------------------------------------------------------------- inline impl

inline Regime formula_regime(FormulaId f) {
    return (f == FormulaId::F1 || f == FormulaId::F3) ? Regime::InVitro
                                                      : Regime::InVivo;
}

inline GeometryKind formula_geometry(FormulaId f) {
    return (f == FormulaId::F1 || f == FormulaId::F2) ? GeometryKind::TravelingWave
                                                      : GeometryKind::Radial;
}

inline Classification classify_rate(double rate, const ModelParams& p) {
    const double tol = kNeutralTolFactor * p.g0cb();
    if (rate > tol) return Classification::Unstable;
    if (rate < -tol) return Classification::Stable;
    return Classification::Neutral;
}

inline const char* to_string(Classification c) {
    switch (c) {
        case Classification::Stable: return "stable";
        case Classification::Unstable: return "unstable";
        default: return "neutral";
    }
}

inline const char* to_string(Regime r) {
    return r == Regime::InVitro ? "invitro" : "invivo";
}

inline const char* to_string(FormulaId f) {
    switch (f) {
        case FormulaId::F1: return "f1";
        case FormulaId::F2: return "f2";
        case FormulaId::F3: return "f3";
        default: return "f4";
    }
}

inline void validate(const ModelParams& p) {
    if (!(p.growth_rate > 0.0))
        throw std::invalid_argument("ModelParams: growth_rate must be > 0");
    if (!(p.background_concentration > 0.0))
        throw std::invalid_argument("ModelParams: background_concentration must be > 0");
    if (!(p.consumption_rate > 0.0))
        throw std::invalid_argument("ModelParams: consumption_rate must be > 0");
}

}  // namespace helestab
