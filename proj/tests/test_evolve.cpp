// Tests for the linearized boundary-evolution simulator: neutral translation
// mode, decay/growth orderings, integrator accuracy cross-checks, boundary
// curve geometry, and the traveling-wave amplitude map.
#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "helestab/evolve.hpp"
#include "helestab/stability.hpp"
#include "helestab/steady.hpp"
#include "helestab/types.hpp"

using helestab::ModelParams;
using helestab::Regime;
namespace ev = helestab::evolve;
namespace sb = helestab::stability;

namespace {

ModelParams params(double g0, double cb, double lambda) {
    ModelParams p;
    p.growth_rate = g0;
    p.background_concentration = cb;
    p.consumption_rate = lambda;
    return p;
}

// The reference experiment: G0 = 1, cB = 100, lambda = 100, R0 = 1.5,
// delta0 = 0.05, T = 2.
ev::SimConfig reference_config(int l) {
    ev::SimConfig cfg;
    cfg.params = params(1.0, 100.0, 100.0);
    cfg.regime = Regime::InVivo;
    cfg.l = l;
    cfg.r0 = 1.5;
    cfg.delta0 = 0.05;
    cfg.t_final = 2.0;
    return cfg;
}

}  // namespace

TEST_CASE("translation mode l = 1 keeps its amplitude exactly") {
    auto cfg = reference_config(1);
    const auto traj = ev::simulate(cfg);
    REQUIRE(traj.size() > 100);
    for (const auto& pt : traj) {
        CHECK(pt.delta == doctest::Approx(0.05).epsilon(1e-12));
        CHECK(pt.rate == 0.0);
    }
    CHECK(std::fabs(traj.back().delta - 0.05) <= 1e-10 * 0.05);
}

TEST_CASE("in vitro modes l >= 2 decay monotonically") {
    auto cfg = reference_config(2);
    cfg.regime = Regime::InVitro;
    const auto traj = ev::simulate(cfg);
    for (size_t i = 1; i < traj.size(); ++i) {
        CAPTURE(i);
        CHECK(traj[i].delta < traj[i - 1].delta);
        CHECK(traj[i].rate < 0.0);
    }
}

TEST_CASE("single step advances the radius; in vivo slower than in vitro") {
    ev::EvolutionState s{0.0, 1.5, 0.01};
    auto cfg = reference_config(2);
    cfg.dt = 1e-3;
    const auto vivo = ev::step(s, cfg);
    cfg.regime = Regime::InVitro;
    const auto vitro = ev::step(s, cfg);
    CHECK(vivo.radius > s.radius);
    CHECK(vitro.radius > s.radius);
    CHECK(vivo.radius < vitro.radius);
    CHECK(vivo.t == doctest::Approx(1e-3).epsilon(1e-15));
}

TEST_CASE("zero horizon yields the single initial state") {
    auto cfg = reference_config(8);
    cfg.t_final = 0.0;
    const auto traj = ev::simulate(cfg);
    REQUIRE(traj.size() == 1);
    CHECK(traj[0].t == 0.0);
    CHECK(traj[0].radius == 1.5);
    CHECK(traj[0].delta == 0.05);
}

TEST_CASE("reference experiment: growth factors and final radius") {
    const int modes[] = {8, 12, 16, 20};
    double factors[4] = {};
    for (int i = 0; i < 4; ++i) {
        const auto traj = ev::simulate(reference_config(modes[i]));
        factors[i] = traj.back().delta / 0.05;
    }
    // Mode 8 grows; factors are non-increasing in the mode number.
    CHECK(factors[0] > 1.0);
    CHECK(factors[0] == doctest::Approx(5.3172153982).epsilon(1e-6));
    for (int i = 1; i < 4; ++i) {
        CAPTURE(i);
        CHECK(factors[i] <= factors[i - 1]);
    }
    // The unperturbed radius at T = 2 is mode-independent.
    const auto traj = ev::simulate(reference_config(8));
    CHECK(traj.back().radius ==
          doctest::Approx(3.6212520224881137).epsilon(1e-10));
}

TEST_CASE("radius integration is converged: dt vs dt/16") {
    auto cfg = reference_config(8);
    cfg.dt = 2.0 / 500.0;
    const auto coarse = ev::simulate(cfg);
    cfg.dt = cfg.dt / 16.0;
    const auto fine = ev::simulate(cfg);
    CHECK(std::fabs(coarse.back().radius - fine.back().radius) <=
          1e-8 * fine.back().radius);
    CHECK(std::fabs(coarse.back().delta - fine.back().delta) <=
          1e-8 * std::fabs(fine.back().delta));
}

TEST_CASE("adaptive integration matches the fixed-step result") {
    auto fixed_cfg = reference_config(8);
    const auto fixed = ev::simulate(fixed_cfg);
    auto ad_cfg = reference_config(8);
    ad_cfg.adaptive = true;
    ad_cfg.adaptive_tol = 1e-10;
    const auto adaptive = ev::simulate(ad_cfg);
    CHECK(adaptive.back().t == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(adaptive.back().radius ==
          doctest::Approx(fixed.back().radius).epsilon(1e-7));
    CHECK(adaptive.back().delta ==
          doctest::Approx(fixed.back().delta).epsilon(1e-6));
}

TEST_CASE("radius grows monotonically and amplitude follows the rate sign") {
    const auto traj = ev::simulate(reference_config(12));
    for (size_t i = 1; i < traj.size(); ++i) {
        CAPTURE(i);
        CHECK(traj[i].radius > traj[i - 1].radius);
        // delta moves in the direction of the recorded rate whenever the
        // rate is decisively nonzero over the step.
        const double r0 = traj[i - 1].rate;
        const double r1 = traj[i].rate;
        if (r0 > 1e-6 && r1 > 1e-6) {
            CHECK(traj[i].delta > traj[i - 1].delta);
        } else if (r0 < -1e-6 && r1 < -1e-6) {
            CHECK(traj[i].delta < traj[i - 1].delta);
        }
    }
}

TEST_CASE("amplitude equals the exponential of the integrated rate") {
    // delta(T)/delta0 = exp(int_0^T F(R(t)) dt); cross-check the coupled
    // RK4 result against composite Simpson over the sampled rates.
    const auto traj = ev::simulate(reference_config(8));
    REQUIRE(traj.size() % 2 == 1);  // even interval count
    const double h = traj[1].t - traj[0].t;
    double integral = traj.front().rate + traj.back().rate;
    for (size_t i = 1; i + 1 < traj.size(); ++i) {
        integral += (i % 2 == 1 ? 4.0 : 2.0) * traj[i].rate;
    }
    integral *= h / 3.0;
    const double ratio = traj.back().delta / traj.front().delta;
    CHECK(std::log(ratio) == doctest::Approx(integral).epsilon(1e-7));
}

TEST_CASE("validity flag trips when the perturbation outgrows the cap") {
    auto cfg = reference_config(8);
    cfg.delta0 = 0.15;  // ratio 0.10 at start; ~0.22 after 5.3x growth
    const auto traj = ev::simulate(cfg);
    CHECK(traj.front().valid);
    CHECK(!traj.back().valid);
    // Flag matches the recorded fields.
    for (const auto& pt : traj) {
        CHECK(pt.valid == (std::fabs(pt.delta) / pt.radius <= 0.2));
    }
}

TEST_CASE("zero initial amplitude stays exactly zero") {
    auto cfg = reference_config(8);
    cfg.delta0 = 0.0;
    const auto traj = ev::simulate(cfg);
    for (const auto& pt : traj) {
        CHECK(pt.delta == 0.0);
        CHECK(pt.valid);
    }
}

TEST_CASE("boundary curve geometry") {
    // Unperturbed state: every vertex sits on the circle of radius R.
    ev::EvolutionState circle{0.0, 2.0, 0.0};
    const auto ring = ev::boundary_curve(circle, 3, 16);
    REQUIRE(ring.size() == 16);
    CHECK(ring[0].theta == doctest::Approx(-3.14159265358979324).epsilon(1e-15));
    for (const auto& pt : ring) {
        CHECK(std::hypot(pt.x, pt.y) == doctest::Approx(2.0).epsilon(1e-14));
    }
    // Uniform angular spacing on [-pi, pi): last point falls short of +pi.
    for (size_t j = 1; j < ring.size(); ++j) {
        CHECK(ring[j].theta - ring[j - 1].theta ==
              doctest::Approx(2.0 * 3.14159265358979324 / 16.0)
                  .epsilon(1e-12));
    }
    CHECK(ring.back().theta < 3.14159265358979324);

    // l = 2, delta = 0.1, R = 1: extremes 1.1 at theta in {-pi, 0} and 0.9
    // at theta = +-pi/2.
    ev::EvolutionState bump{0.0, 1.0, 0.1};
    const auto curve = ev::boundary_curve(bump, 2, 8);
    REQUIRE(curve.size() == 8);
    auto radius_at = [&](size_t j) {
        return std::hypot(curve[j].x, curve[j].y);
    };
    CHECK(radius_at(0) == doctest::Approx(1.1).epsilon(1e-14));  // theta=-pi
    CHECK(radius_at(4) == doctest::Approx(1.1).epsilon(1e-14));  // theta=0
    CHECK(radius_at(2) == doctest::Approx(0.9).epsilon(1e-14));  // theta=-pi/2
    CHECK(radius_at(6) == doctest::Approx(0.9).epsilon(1e-14));  // theta=+pi/2

    CHECK_THROWS_AS(ev::boundary_curve(circle, 2, 7), std::invalid_argument);
    CHECK_THROWS_AS(ev::boundary_curve(circle, 0, 16), std::invalid_argument);
}

TEST_CASE("traveling-wave amplitude map") {
    const auto p2 = params(1.0, 1.0, 2.0);
    // Zero-frequency mode is neutral.
    CHECK(ev::tw_amplitude(p2, Regime::InVitro, 0.0, 0.3, 5.0) == 0.3);
    // In vitro always decays.
    for (double l : {0.2, 1.0, 4.0}) {
        CAPTURE(l);
        CHECK(ev::tw_amplitude(p2, Regime::InVitro, l, 0.3, 2.0) < 0.3);
    }
    // In vivo grows inside the unstable band (0, L) when lambda > 1.
    const auto band = sb::threshold_l(p2);
    REQUIRE(band.has_value());
    CHECK(ev::tw_amplitude(p2, Regime::InVivo, 0.5 * *band, 0.3, 2.0) > 0.3);
    CHECK(ev::tw_amplitude(p2, Regime::InVivo, 2.0 * *band, 0.3, 2.0) < 0.3);
    // Exact exponential of the constant rate.
    const double f = sb::f2(p2, 0.7);
    CHECK(ev::tw_amplitude(p2, Regime::InVivo, 0.7, 0.3, 3.0) ==
          doctest::Approx(0.3 * std::exp(3.0 * f)).epsilon(1e-14));
}

TEST_CASE("configuration validation") {
    auto cfg = reference_config(8);
    cfg.l = 0;
    CHECK_THROWS_AS(ev::simulate(cfg), std::invalid_argument);
    cfg = reference_config(8);
    cfg.r0 = 0.0;
    CHECK_THROWS_AS(ev::simulate(cfg), std::invalid_argument);
    cfg = reference_config(8);
    cfg.t_final = -1.0;
    CHECK_THROWS_AS(ev::simulate(cfg), std::invalid_argument);
    cfg = reference_config(8);
    cfg.dt = -0.1;
    CHECK_THROWS_AS(ev::simulate(cfg), std::invalid_argument);
    cfg = reference_config(8);
    cfg.params.consumption_rate = -2.0;
    CHECK_THROWS_AS(ev::simulate(cfg), std::invalid_argument);
}
