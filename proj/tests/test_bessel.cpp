// Tests for the modified-Bessel kernel: frozen high-precision references,
// identities (Wronskian, derivative recurrences, three-term recurrence),
// scaled/unscaled consistency, batch/single bitwise agreement, and the
// error contract at the domain edges.
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "helestab/bessel.hpp"

namespace bs = helestab::bessel;

namespace {

double rel_err(double value, double reference) {
    return std::fabs(value - reference) / std::fabs(reference);
}

// Reference values computed with 50-digit arithmetic and rounded to the
// nearest double: {n, x, e^{-x} I_n(x), e^{x} K_n(x)}.
struct ScaledRef {
    int n;
    double x;
    double i_scaled;
    double k_scaled;
};

const std::vector<ScaledRef> kScaledTable = {
    {0, 0.001, 0.99900074958351556, 7.0307160023782515},
    {0, 0.5, 0.64503527044915007, 1.5241093857739095},
    {1, 1.0, 0.20791041534970845, 1.6361534862632582},
    {2, 2.0, 0.093239033304733380, 1.8750450621394600},
    {0, 2.0, 0.30850832255367104, 0.84156821507077142},
    {1, 2.0, 0.21526928924893766, 1.0334768470686886},
    {3, 7.5, 0.078571963371959865, 0.78816782167503191},
    {12, 0.1, 4.6127206836362020e-25, 9.0326756649412581e+22},
    {12, 29.0, 0.0061697437761426974, 2.5822444428998140},
    {5, 30.0, 0.047925203168721224, 0.34307147459125822},
    {0, 31.0, 0.071946496696983833, 0.22421013741927490},
    {1, 31.0, 0.070776392834385680, 0.22779816259459250},
    {8, 45.0, 0.029109688834665229, 0.37582404401290478},
    {12, 50.0, 0.013300837295159327, 0.73109603003839002},
    {0, 100.0, 0.039944379299096683, 0.12517562165912658},
    {1, 100.0, 0.039744153025130253, 0.12579995047957853},
    {3, 100.0, 0.038178173175586490, 0.13090761530632726},
    {12, 100.0, 0.019389565226932819, 0.25603669637297609},
    {0, 700.0, 0.015081295651531358, 0.047362369454613572},
    {1, 700.0, 0.015070519444716847, 0.047396187653494544},
    {12, 700.0, 0.013606220539513428, 0.052489297882987218},
    {0, 1000.0, 0.012617240455891257, 0.039628321600754217},
    {64, 0.001, 4.2680459592661896e-301, 1.8304629504011493e+298},
    {64, 50.0, 3.6991009524758722e-18, 1664282060013198.3},
    {20, 300.0, 0.011820202345559259, 0.14068942757171277},
    {33, 33.0, 1.1786212648785205e-8, 908966.97326047642},
};

// Unscaled spot values, same provenance.
struct PlainRef {
    int n;
    double x;
    double value;
};

const std::vector<PlainRef> kPlainI = {
    {0, 1.0, 1.2660658777520083356},   {1, 1.0, 0.56515910399248502721},
    {2, 1.0, 0.13574766976703828118},  {0, 2.0, 2.2795853023360672674},
    {1, 2.0, 1.5906368546373290634},   {5, 10.0, 777.18828640325995991},
    {12, 30.0, 70361879442.410202702}, {0, 0.1, 1.0025015629340956017},
    {12, 0.1, 5.0978447527607503634e-25},
};

const std::vector<PlainRef> kPlainK = {
    {0, 1.0, 0.42102443824070833334},     {1, 1.0, 0.60190723019723457474},
    {2, 1.0, 1.6248388986351774828},      {0, 2.0, 0.11389387274953343565},
    {1, 2.0, 0.13986588181652242728},     {5, 10.0, 5.7541849985312279276e-5},
    {12, 30.0, 2.199359264263283475e-13}, {0, 0.1, 2.4270690247020165578},
    {12, 0.1, 8.1731029266216922353e+22},
};

}  // namespace

TEST_CASE("scaled I and K match high-precision references") {
    for (const auto& r : kScaledTable) {
        CAPTURE(r.n);
        CAPTURE(r.x);
        CHECK(rel_err(bs::bessel_i_scaled(r.n, r.x), r.i_scaled) <= 1e-12);
        CHECK(rel_err(bs::bessel_k_scaled(r.n, r.x), r.k_scaled) <= 1e-12);
    }
}

TEST_CASE("unscaled I and K match high-precision references") {
    for (const auto& r : kPlainI) {
        CAPTURE(r.n);
        CAPTURE(r.x);
        CHECK(rel_err(bs::bessel_i(r.n, r.x), r.value) <= 1e-13);
    }
    for (const auto& r : kPlainK) {
        CAPTURE(r.n);
        CAPTURE(r.x);
        CHECK(rel_err(bs::bessel_k(r.n, r.x), r.value) <= 1e-13);
    }
}

TEST_CASE("Wronskian defect stays tiny over orders and a wide log grid") {
    // I_n K_{n+1} + I_{n+1} K_n = 1/x exactly; the assembled defect times x
    // is the relative error of the identity.
    const double x_lo = 0.1, x_hi = 700.0;
    const int npts = 160;
    for (int n = 0; n <= 12; ++n) {
        for (int i = 0; i < npts; ++i) {
            const double x =
                x_lo * std::pow(x_hi / x_lo, double(i) / double(npts - 1));
            const double defect = bs::wronskian_defect(n, x);
            CAPTURE(n);
            CAPTURE(x);
            CHECK(std::fabs(defect) * x <= 1e-12);
        }
    }
}

TEST_CASE("derivative entry points obey the recurrence definitions") {
    const std::vector<double> xs = {0.3, 1.0, 4.0, 17.0, 29.5, 31.0, 120.0};
    for (double x : xs) {
        CHECK(bs::bessel_i_prime_scaled(0, x) ==
              doctest::Approx(bs::bessel_i_scaled(1, x)).epsilon(1e-15));
        CHECK(bs::bessel_k_prime_scaled(0, x) ==
              doctest::Approx(-bs::bessel_k_scaled(1, x)).epsilon(1e-15));
        for (int n = 1; n <= 12; ++n) {
            const double ip = 0.5 * (bs::bessel_i_scaled(n - 1, x) +
                                     bs::bessel_i_scaled(n + 1, x));
            const double kp = -0.5 * (bs::bessel_k_scaled(n - 1, x) +
                                      bs::bessel_k_scaled(n + 1, x));
            CAPTURE(n);
            CAPTURE(x);
            CHECK(rel_err(bs::bessel_i_prime_scaled(n, x), ip) <= 1e-15);
            CHECK(rel_err(bs::bessel_k_prime_scaled(n, x), kp) <= 1e-15);
        }
    }
}

TEST_CASE("scaled derivatives match finite differences of the scaled values") {
    // d/dx [e^{-x} I_n] = e^{-x}(I_n' - I_n); the analytic value must agree
    // with a central difference of the function itself.
    const std::vector<std::pair<int, double>> pts = {
        {0, 0.7}, {1, 2.0}, {3, 5.0}, {8, 20.0}, {2, 50.0}, {12, 200.0}};
    for (auto [n, x] : pts) {
        const double h = 1e-6 * std::max(1.0, x);
        const double fd_i =
            (bs::bessel_i_scaled(n, x + h) - bs::bessel_i_scaled(n, x - h)) /
            (2.0 * h);
        const double an_i =
            bs::bessel_i_prime_scaled(n, x) - bs::bessel_i_scaled(n, x);
        const double fd_k =
            (bs::bessel_k_scaled(n, x + h) - bs::bessel_k_scaled(n, x - h)) /
            (2.0 * h);
        const double an_k =
            bs::bessel_k_prime_scaled(n, x) + bs::bessel_k_scaled(n, x);
        CAPTURE(n);
        CAPTURE(x);
        CHECK(std::fabs(fd_i - an_i) <=
              1e-8 * std::max(std::fabs(an_i), bs::bessel_i_scaled(n, x)));
        CHECK(std::fabs(fd_k - an_k) <=
              1e-8 * std::max(std::fabs(an_k), bs::bessel_k_scaled(n, x)));
    }
}

TEST_CASE("three-term recurrence closes on the series evaluation path") {
    // I_{n-1} - I_{n+1} = (2n/x) I_n. Checked where the ascending series is
    // in play; the large-x path generates values by this recurrence already.
    const std::vector<double> xs = {0.2, 1.0, 3.0, 9.0, 25.0, 30.0};
    for (double x : xs) {
        for (int n = 1; n <= 10; ++n) {
            const double lhs =
                bs::bessel_i_scaled(n - 1, x) - bs::bessel_i_scaled(n + 1, x);
            const double rhs = 2.0 * n / x * bs::bessel_i_scaled(n, x);
            CAPTURE(n);
            CAPTURE(x);
            CHECK(std::fabs(lhs - rhs) <=
                  1e-12 * std::max(std::fabs(rhs),
                                   bs::bessel_i_scaled(0, x)));
        }
        for (int n = 1; n <= 10; ++n) {
            const double lhs =
                bs::bessel_k_scaled(n + 1, x) - bs::bessel_k_scaled(n - 1, x);
            const double rhs = 2.0 * n / x * bs::bessel_k_scaled(n, x);
            CAPTURE(n);
            CAPTURE(x);
            CHECK(rel_err(lhs, rhs) <= 1e-12);
        }
    }
}

TEST_CASE("batch evaluation is bitwise identical to single-order calls") {
    const std::vector<double> xs = {0.5, 12.0, 29.9, 30.1, 100.0, 640.0};
    for (double x : xs) {
        const auto iv = bs::bessel_i_scaled_all(40, x);
        const auto kv = bs::bessel_k_scaled_all(40, x);
        REQUIRE(iv.size() == 41);
        REQUIRE(kv.size() == 41);
        for (int n = 0; n <= 40; n += 5) {
            CAPTURE(n);
            CAPTURE(x);
            CHECK(iv[size_t(n)] == bs::bessel_i_scaled(n, x));
            CHECK(kv[size_t(n)] == bs::bessel_k_scaled(n, x));
        }
    }
}

TEST_CASE("scaled and unscaled evaluations are mutually consistent") {
    const std::vector<std::pair<int, double>> pts = {
        {0, 0.4}, {1, 1.0}, {4, 6.0}, {12, 28.0}, {3, 45.0}, {0, 120.0}};
    for (auto [n, x] : pts) {
        CAPTURE(n);
        CAPTURE(x);
        CHECK(rel_err(bs::bessel_i(n, x), bs::bessel_i_scaled(n, x) *
                                              std::exp(x)) <= 1e-14);
        CHECK(rel_err(bs::bessel_k(n, x), bs::bessel_k_scaled(n, x) *
                                              std::exp(-x)) <= 1e-14);
    }
}

TEST_CASE("values at x = 0") {
    CHECK(bs::bessel_i(0, 0.0) == 1.0);
    CHECK(bs::bessel_i(3, 0.0) == 0.0);
    CHECK(bs::bessel_i_scaled(0, 0.0) == 1.0);
    CHECK(bs::bessel_i_prime(0, 0.0) == 0.0);
    CHECK(bs::bessel_i_prime(1, 0.0) == 0.5);
}

TEST_CASE("monotonicity in order and argument") {
    // I_n decreases in n at fixed x; K_n increases in n; e^{-x} I_0
    // decreases in x.
    for (double x : {0.5, 3.0, 40.0}) {
        for (int n = 0; n < 8; ++n) {
            CHECK(bs::bessel_i_scaled(n, x) > bs::bessel_i_scaled(n + 1, x));
            CHECK(bs::bessel_k_scaled(n, x) < bs::bessel_k_scaled(n + 1, x));
        }
    }
    CHECK(bs::bessel_i_scaled(0, 1.0) > bs::bessel_i_scaled(0, 2.0));
    CHECK(bs::bessel_i_scaled(0, 50.0) > bs::bessel_i_scaled(0, 51.0));
}

TEST_CASE("domain and overflow errors") {
    CHECK_THROWS_AS(bs::bessel_i(-1, 1.0), std::domain_error);
    CHECK_THROWS_AS(bs::bessel_i(bs::kMaxOrder + 1, 1.0), std::domain_error);
    CHECK_THROWS_AS(bs::bessel_i(0, -0.5), std::domain_error);
    CHECK_THROWS_AS(bs::bessel_i(0, std::numeric_limits<double>::quiet_NaN()),
                    std::domain_error);
    CHECK_THROWS_AS(bs::bessel_k(0, 0.0), std::domain_error);
    CHECK_THROWS_AS(bs::bessel_k(0, -2.0), std::domain_error);
    CHECK_THROWS_AS(bs::bessel_k(-3, 1.0), std::domain_error);
    CHECK_THROWS_AS(bs::bessel_i_scaled_all(bs::kMaxBatchOrder + 1, 1.0),
                    std::domain_error);

    // Unscaled I overflows past x ~ 713; the scaled form stays finite.
    CHECK_THROWS_AS(bs::bessel_i(0, 800.0), std::overflow_error);
    CHECK(bs::bessel_i_scaled(0, 800.0) > 0.0);
    // Unscaled K underflows gracefully to zero instead of throwing.
    CHECK(bs::bessel_k(0, 800.0) == 0.0);
}
