#pragma once

// Test-side oracles, independent of the library's evaluation paths:
// brute-force power sums, a scan-then-halve stepsize solver, an
// all-principal-minors PSD test, and a central-difference gradient check.

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "gdrate/matrix.hpp"

namespace oracles {

// plain left-to-right summation of x^-j, j = 1..2k
inline double brute_E(double x, int k) {
  double s = 0.0;
  for (int j = 1; j <= 2 * k; ++j) s += std::pow(x, -j);
  return s;
}

inline double brute_F(double x, int k) {
  double s = 0.0;
  for (int j = 1; j <= k; ++j) s += std::pow(x, j);
  return s;
}

inline double brute_T(double rho, double eta, int k) { return brute_E(eta, k) - brute_E(rho, k); }

// gamma*: coarse scan for the sign change of E_N(eta) - E_N(rho) over
// (1/L, 2/L), then interval halving. Structurally different from the
// library's bisection (no tolerance logic, no polish).
inline double gamma_star(int N, double mu, double L, int scan_points = 4096) {
  auto diff = [&](double g) { return brute_E(1.0 - g * mu, N) - brute_E(1.0 - g * L, N); };
  double lo = (1.0 + 1e-9) / L, hi = (2.0 - 1e-9) / L;
  double step = (hi - lo) / scan_points;
  double a = lo;
  while (a + step < hi && diff(a + step) < 0.0) a += step;
  double b = a + step;
  for (int i = 0; i < 200; ++i) {
    const double m = 0.5 * (a + b);
    (diff(m) < 0.0 ? a : b) = m;
  }
  return 0.5 * (a + b);
}

// determinant by Gaussian elimination with partial pivoting
inline double det(std::vector<std::vector<double>> m) {
  const std::size_t n = m.size();
  double d = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::fabs(m[r][c]) > std::fabs(m[piv][c])) piv = r;
    if (m[piv][c] == 0.0) return 0.0;
    if (piv != c) {
      std::swap(m[piv], m[c]);
      d = -d;
    }
    d *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return d;
}

// PSD via Sylvester for the semidefinite case: every principal minor
// (all index subsets, not only leading) must be >= -tol.
inline bool psd_by_principal_minors(const gdrate::Matrix<double>& s, double tol) {
  const std::size_t n = s.rows();
  const double scale = std::max(1.0, s.max_abs());
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) idx.push_back(i);
    std::vector<std::vector<double>> sub(idx.size(), std::vector<double>(idx.size()));
    for (std::size_t a = 0; a < idx.size(); ++a)
      for (std::size_t b = 0; b < idx.size(); ++b) sub[a][b] = s(idx[a], idx[b]) / scale;
    if (det(sub) < -tol) return false;
  }
  return true;
}

// central differences, step 1e-6 * max(1, |x_i|)
inline std::vector<double> fd_gradient(const std::function<double(const std::vector<double>&)>& f,
                                       std::vector<double> x) {
  std::vector<double> g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double h = 1e-6 * std::max(1.0, std::fabs(x[i]));
    const double xi = x[i];
    x[i] = xi + h;
    const double fp = f(x);
    x[i] = xi - h;
    const double fm = f(x);
    x[i] = xi;
    g[i] = (fp - fm) / (2.0 * h);
  }
  return g;
}

}  // namespace oracles
