// Modified Bessel functions I_n, K_n of integer order: unscaled, exponentially
// scaled, derivatives by recurrence, and the Wronskian identity defect.
//
// Self-contained kernel: no external special-function library. Accuracy
// targets: 1e-12 relative for x <= 30, 1e-10 relative (scaled) for x <= 700.
// All functions are pure and reentrant.
#pragma once

#include <vector>

namespace helestab::bessel {

// Order cap for single-order entry points. Stability formulas never need
// more; going past it at extreme arguments would overflow K_n in doubles.
inline constexpr int kMaxOrder = 64;

// Batch entry points allow two extra orders: derivative recurrences and the
// Wronskian need I_{n+1}, K_{n+1} internally.
inline constexpr int kMaxBatchOrder = kMaxOrder + 2;

// I_n(x). x = 0 permitted (1 for n=0, 0 otherwise).
// Throws std::domain_error for x < 0 or order out of range,
// std::overflow_error when the unscaled value exceeds double range
// (use bessel_i_scaled instead).
double bessel_i(int n, double x);

// K_n(x). Throws std::domain_error for x <= 0 (K_n diverges at 0).
double bessel_k(int n, double x);

// e^{-x} I_n(x) and e^{+x} K_n(x). Scaled products of matching arguments
// assemble with exact exponent cancellation:
// bessel_i_scaled(n,x)*bessel_k_scaled(m,x) = I_n(x) K_m(x).
double bessel_i_scaled(int n, double x);
double bessel_k_scaled(int n, double x);

// Derivatives by recurrence, never by differencing:
// I_0' = I_1, K_0' = -K_1, I_n' = (I_{n-1}+I_{n+1})/2, K_n' = -(K_{n-1}+K_{n+1})/2.
double bessel_i_prime(int n, double x);
double bessel_k_prime(int n, double x);

// e^{-x} I_n'(x) and e^{+x} K_n'(x).
double bessel_i_prime_scaled(int n, double x);
double bessel_k_prime_scaled(int n, double x);

// All scaled orders 0..nmax in one pass (one backward recurrence / one upward
// recurrence); bitwise consistent with the single-order entry points.
std::vector<double> bessel_i_scaled_all(int nmax, double x);
std::vector<double> bessel_k_scaled_all(int nmax, double x);

// I_n(x)K_{n+1}(x) + I_{n+1}(x)K_n(x) - 1/x, assembled from scaled values.
// Magnitude bounds the joint accuracy of the I and K implementations.
double wronskian_defect(int n, double x);

}  // namespace helestab::bessel
