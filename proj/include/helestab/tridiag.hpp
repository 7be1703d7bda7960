// Thomas elimination for tridiagonal systems.
#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace helestab::tridiag {

// Solves the system with sub-diagonal `sub`, diagonal `diag`, super-diagonal
// `super` and right-hand side `rhs` (all length n; sub[0] and super[n-1] are
// ignored). Forward elimination without pivoting: every system assembled in
// this project is diagonally dominant, but a vanishing pivot is still caught.
inline std::vector<double> solve(const std::vector<double>& sub,
                                 const std::vector<double>& diag,
                                 const std::vector<double>& super,
                                 const std::vector<double>& rhs) {
  const size_t n = diag.size();
  if (sub.size() != n || super.size() != n || rhs.size() != n || n == 0) {
    throw std::invalid_argument("tridiag::solve: inconsistent band sizes");
  }
  std::vector<double> cp(n);
  std::vector<double> dp(n);
  if (diag[0] == 0.0) {
    throw std::runtime_error("tridiag::solve: zero pivot in first row");
  }
  cp[0] = super[0] / diag[0];
  dp[0] = rhs[0] / diag[0];
  for (size_t i = 1; i < n; ++i) {
    const double m = diag[i] - sub[i] * cp[i - 1];
    if (m == 0.0 || !std::isfinite(m)) {
      throw std::runtime_error("tridiag::solve: singular pivot");
    }
    cp[i] = super[i] / m;
    dp[i] = (rhs[i] - sub[i] * dp[i - 1]) / m;
  }
  std::vector<double> x(n);
  x[n - 1] = dp[n - 1];
  for (size_t i = n - 1; i-- > 0;) {
    x[i] = dp[i] - cp[i] * x[i + 1];
  }
  return x;
}

}  // namespace helestab::tridiag
