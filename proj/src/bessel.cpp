// ============================================================================
// Modified Bessel kernel.
//
// I_n: ascending power series for x <= 30 (all terms positive, no
//      cancellation), normalized backward (Miller) recurrence for x > 30.
// K_0, K_1: ascending log series for x <= 2, Steed continued fraction (CF2)
//      for x > 2; higher orders by the forward recurrence, which is stable
//      for K because K_n grows with n.
// Derivatives come from the exact recurrences, never from differencing.
// ============================================================================

#include "helestab/bessel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace helestab::bessel {
namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kEulerGamma = 0.577215664901532860606512090082402431;
constexpr double kSeriesCut = 30.0;  // I_n: series below, Miller above

void check_order(int n, int cap) {
  if (n < 0 || n > cap) {
    throw std::domain_error("bessel: order " + std::to_string(n) +
                            " outside supported range [0," +
                            std::to_string(cap) + "]");
  }
}

void check_arg_i(double x) {
  if (!(x >= 0.0)) {
    throw std::domain_error("bessel_i: argument must be a real number >= 0");
  }
}

void check_arg_k(double x) {
  if (!(x > 0.0)) {
    throw std::domain_error("bessel_k: argument must be a real number > 0");
  }
}

// --- I_n, ascending series (x <= 30) ---------------------------------------
// I_n(x) = sum_k (x/2)^{n+2k} / (k! (n+k)!). The leading term is built by an
// interleaved product so intermediates never overflow; if it underflows to
// zero the true value is far below double range and zero is returned.
double i_series_unscaled(int n, double x) {
  const double half_x = 0.5 * x;
  double term = 1.0;
  for (int j = 1; j <= n; ++j) term *= half_x / j;
  if (term == 0.0) return 0.0;
  double sum = term;
  const double q = half_x * half_x;
  for (int k = 1; k <= 400; ++k) {
    term *= q / (static_cast<double>(k) * (n + k));
    sum += term;
    if (term < sum * 1e-18) break;
  }
  return sum;
}

// --- I_n, normalized Miller recurrence (x > 30) -----------------------------
// Downward p_{k-1} = p_{k+1} + (2k/x) p_k from a seed at a start order chosen
// from x alone, normalized by e^x = I_0 + 2 sum_{k>=1} I_k. The start order
// depends only on x so every call at the same argument walks the same
// sequence and yields bitwise-identical values for shared orders.
std::vector<double> miller_scaled(int nmax, double x) {
  const int start = std::max(68, static_cast<int>(std::ceil(2.2 * x))) + 60;
  std::vector<double> out(static_cast<size_t>(nmax) + 1, 0.0);
  double pkp1 = 0.0;
  double pk = 1e-290;
  double sum = 0.0;
  for (int k = start; k >= 0; --k) {
    sum += (k == 0) ? pk : 2.0 * pk;
    if (k <= nmax) out[static_cast<size_t>(k)] = pk;
    const double pkm1 = pkp1 + (2.0 * k / x) * pk;
    pkp1 = pk;
    pk = pkm1;
    if (pk > 1e250) {  // renormalize; the common factor cancels at the end
      pk *= 1e-250;
      pkp1 *= 1e-250;
      sum *= 1e-250;
      for (double& v : out) v *= 1e-250;
    }
  }
  if (!(sum > 0.0) || !std::isfinite(sum)) {
    throw std::runtime_error("bessel_i: backward recurrence lost normalization");
  }
  for (double& v : out) v /= sum;
  return out;
}

// Scaled I for a single order, shared by the public entry points.
double i_scaled_one(int n, double x) {
  if (x == 0.0) return (n == 0) ? 1.0 : 0.0;
  if (x <= kSeriesCut) return i_series_unscaled(n, x) * std::exp(-x);
  return miller_scaled(n, x)[static_cast<size_t>(n)];
}

// --- K_0, K_1, ascending log series (x <= 2) --------------------------------
// K_0 = -(ln(x/2)+gamma) I_0 + sum_{k>=1} H_k q^k/(k!)^2
// K_1 = 1/x + ln(x/2) I_1 - (x/4) sum_{k>=0} (H_k+H_{k+1}-2gamma) q^k/(k!(k+1)!)
// with q = x^2/4 and H_k the harmonic numbers.
void k01_scaled_series(double x, double* k0s, double* k1s) {
  const double lh = std::log(0.5 * x);
  const double q = 0.25 * x * x;
  double tk = 1.0;  // q^k / (k!)^2
  double uk = 1.0;  // q^k / (k! (k+1)!)
  double hk = 0.0;  // H_k
  double s0 = 0.0;
  double s1 = 0.0;
  for (int k = 0; k <= 80; ++k) {
    if (k > 0) {
      tk *= q / (static_cast<double>(k) * k);
      hk += 1.0 / k;
      s0 += hk * tk;
    }
    const double hk1 = hk + 1.0 / (k + 1);
    s1 += (hk + hk1 - 2.0 * kEulerGamma) * uk;
    uk *= q / (static_cast<double>(k + 1) * (k + 2));
    if (k > 3 && tk < 1e-22) break;
  }
  const double i0 = i_series_unscaled(0, x);
  const double i1 = i_series_unscaled(1, x);
  const double ex = std::exp(x);
  *k0s = (-(lh + kEulerGamma) * i0 + s0) * ex;
  *k1s = (1.0 / x + lh * i1 - 0.25 * x * s1) * ex;
}

// --- K_0, K_1, Steed continued fraction CF2 (x > 2) -------------------------
// Thompson-Barnett evaluation of K_mu for mu = 0; converges in O(sqrt(x))
// iterations for x > 2 and yields the scaled values directly.
void k01_scaled_cf2(double x, double* k0s, double* k1s) {
  constexpr double eps = 1e-16;
  constexpr int max_iter = 10000;
  double b = 2.0 * (1.0 + x);
  double d = 1.0 / b;
  double delh = d;
  double h = d;
  double q1 = 0.0;
  double q2 = 1.0;
  const double a1 = 0.25;
  double q = a1;
  double c = a1;
  double a = -a1;
  double s = 1.0 + q * delh;
  bool converged = false;
  for (int i = 2; i <= max_iter; ++i) {
    a -= 2 * (i - 1);
    c = -a * c / i;
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const double dels = q * delh;
    s += dels;
    if (std::fabs(dels / s) <= eps) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw std::runtime_error("bessel_k: continued fraction failed to converge");
  }
  h = a1 * h;
  const double k0 = std::sqrt(kPi / (2.0 * x)) / s;
  *k0s = k0;
  *k1s = k0 * (x + 0.5 - h) / x;
}

std::vector<double> k_scaled_all_impl(int nmax, double x) {
  double k0s = 0.0;
  double k1s = 0.0;
  if (x <= 2.0) {
    k01_scaled_series(x, &k0s, &k1s);
  } else {
    k01_scaled_cf2(x, &k0s, &k1s);
  }
  std::vector<double> out(static_cast<size_t>(nmax) + 1, 0.0);
  out[0] = k0s;
  if (nmax >= 1) out[1] = k1s;
  for (int j = 1; j < nmax; ++j) {
    out[static_cast<size_t>(j) + 1] =
        out[static_cast<size_t>(j) - 1] + (2.0 * j / x) * out[static_cast<size_t>(j)];
    if (!std::isfinite(out[static_cast<size_t>(j) + 1])) {
      throw std::overflow_error("bessel_k: order " + std::to_string(j + 1) +
                                " overflows at argument " + std::to_string(x));
    }
  }
  return out;
}

double k_scaled_one(int n, double x) {
  return k_scaled_all_impl(n, x)[static_cast<size_t>(n)];
}

}  // namespace

double bessel_i_scaled(int n, double x) {
  check_order(n, kMaxOrder);
  check_arg_i(x);
  return i_scaled_one(n, x);
}

double bessel_i(int n, double x) {
  check_order(n, kMaxOrder);
  check_arg_i(x);
  if (x == 0.0) return (n == 0) ? 1.0 : 0.0;
  if (x <= kSeriesCut) return i_series_unscaled(n, x);
  const double is = miller_scaled(n, x)[static_cast<size_t>(n)];
  if (is == 0.0) return 0.0;
  const double ln_value = std::log(is) + x;
  if (ln_value > 709.78) {
    throw std::overflow_error(
        "bessel_i: unscaled value exceeds double range at x = " +
        std::to_string(x) + "; use bessel_i_scaled");
  }
  if (x > 709.0) return std::exp(ln_value);
  return is * std::exp(x);
}

double bessel_k_scaled(int n, double x) {
  check_order(n, kMaxOrder);
  check_arg_k(x);
  return k_scaled_one(n, x);
}

double bessel_k(int n, double x) {
  check_order(n, kMaxOrder);
  check_arg_k(x);
  const double ks = k_scaled_one(n, x);
  const double ln_value = std::log(ks) - x;
  if (ln_value < -745.0) return 0.0;
  if (ln_value < -700.0) return std::exp(ln_value);
  return ks * std::exp(-x);
}

double bessel_i_prime(int n, double x) {
  check_order(n, kMaxOrder);
  check_arg_i(x);
  if (x == 0.0) return (n == 1) ? 0.5 : 0.0;
  if (x <= kSeriesCut) {
    if (n == 0) return i_series_unscaled(1, x);
    return 0.5 * (i_series_unscaled(n - 1, x) + i_series_unscaled(n + 1, x));
  }
  const std::vector<double> is = miller_scaled(n + 1, x);
  const double ds = (n == 0)
                        ? is[1]
                        : 0.5 * (is[static_cast<size_t>(n) - 1] +
                                 is[static_cast<size_t>(n) + 1]);
  if (ds == 0.0) return 0.0;
  const double ln_value = std::log(ds) + x;
  if (ln_value > 709.78) {
    throw std::overflow_error(
        "bessel_i_prime: unscaled value exceeds double range; "
        "use bessel_i_prime_scaled");
  }
  if (x > 709.0) return std::exp(ln_value);
  return ds * std::exp(x);
}

double bessel_i_prime_scaled(int n, double x) {
  check_order(n, kMaxOrder);
  check_arg_i(x);
  if (x == 0.0) return (n == 1) ? 0.5 : 0.0;
  if (n == 0) return i_scaled_one(1, x);
  if (x <= kSeriesCut) {
    return 0.5 * (i_series_unscaled(n - 1, x) + i_series_unscaled(n + 1, x)) *
           std::exp(-x);
  }
  const std::vector<double> is = miller_scaled(n + 1, x);
  return 0.5 *
         (is[static_cast<size_t>(n) - 1] + is[static_cast<size_t>(n) + 1]);
}

double bessel_k_prime(int n, double x) {
  check_order(n, kMaxOrder);
  check_arg_k(x);
  const std::vector<double> ks = k_scaled_all_impl(n + 1, x);
  const double ds = (n == 0)
                        ? -ks[1]
                        : -0.5 * (ks[static_cast<size_t>(n) - 1] +
                                  ks[static_cast<size_t>(n) + 1]);
  const double ln_value = std::log(-ds) - x;
  if (ln_value < -745.0) return -0.0;
  if (ln_value < -700.0) return -std::exp(ln_value);
  return ds * std::exp(-x);
}

double bessel_k_prime_scaled(int n, double x) {
  check_order(n, kMaxOrder);
  check_arg_k(x);
  const std::vector<double> ks = k_scaled_all_impl(n + 1, x);
  if (n == 0) return -ks[1];
  return -0.5 *
         (ks[static_cast<size_t>(n) - 1] + ks[static_cast<size_t>(n) + 1]);
}

std::vector<double> bessel_i_scaled_all(int nmax, double x) {
  check_order(nmax, kMaxBatchOrder);
  check_arg_i(x);
  std::vector<double> out(static_cast<size_t>(nmax) + 1, 0.0);
  if (x == 0.0) {
    out[0] = 1.0;
    return out;
  }
  if (x <= kSeriesCut) {
    const double ex = std::exp(-x);
    for (int n = 0; n <= nmax; ++n) {
      out[static_cast<size_t>(n)] = i_series_unscaled(n, x) * ex;
    }
    return out;
  }
  return miller_scaled(nmax, x);
}

std::vector<double> bessel_k_scaled_all(int nmax, double x) {
  check_order(nmax, kMaxBatchOrder);
  check_arg_k(x);
  return k_scaled_all_impl(nmax, x);
}

double wronskian_defect(int n, double x) {
  check_order(n, kMaxOrder);
  check_arg_k(x);
  const std::vector<double> is = bessel_i_scaled_all(n + 1, x);
  const std::vector<double> ks = k_scaled_all_impl(n + 1, x);
  return is[static_cast<size_t>(n)] * ks[static_cast<size_t>(n) + 1] +
         is[static_cast<size_t>(n) + 1] * ks[static_cast<size_t>(n)] - 1.0 / x;
}

}  // namespace helestab::bessel
