#pragma once

// Optimal-stepsize solver and surrogate-class construction.
//
// gamma*(N, mu, L) is the unique stepsize equalizing E_N(1 - gamma mu) and
// E_N(1 - gamma L); it lies in (1/L, 2/L). E_N(eta) - E_N(rho) is negative
// below gamma* and positive above, so plain bisection applies. For any
// other gamma the surrogate class bumps L (below gamma*) or lowers mu
// (above gamma*) until the given gamma is optimal for the modified class.

#include <stdexcept>

#include "gdrate/numeric.hpp"
#include "gdrate/scalar_kernel.hpp"

namespace gdrate {

enum class StepsizeRegime { below_optimal, above_optimal, at_optimal };

const char* stepsize_regime_name(StepsizeRegime r);

/// The class (mu_eff, L_eff) for which the given gamma is optimal.
/// Exactly one of mu_eff < mu, L_eff > L, or both unchanged holds.
struct SurrogateClass {
  double mu_eff = 0.0;
  double L_eff = 0.0;
  StepsizeRegime regime = StepsizeRegime::at_optimal;
};

struct SolverOptions {
  double tol = 1e-13;  // relative tolerance on |E_N(eta) - E_N(rho)|
  int max_iterations = 200;
};

class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double bracket_lo, double bracket_hi)
      : std::runtime_error(what), bracket_lo(bracket_lo), bracket_hi(bracket_hi) {}
  double bracket_lo, bracket_hi;
};

double optimal_stepsize(int N, double mu, double L, const SolverOptions& opts = {});

SurrogateClass surrogate_class(const ProblemInstance& inst, const SolverOptions& opts = {});

namespace detail {
/// Generic-precision bisection for gamma*, shared with the high-precision
/// decomposition audit. sign(E_N(eta) - E_N(rho)) is negative at the left
/// end of (1/L, 2/L) and positive at the right end.
template <class T>
T optimal_stepsize_generic(int N, const T& mu, const T& L, const T& edge, int iterations) {
  if (!(L > T(0)) || !(mu < L)) throw std::invalid_argument("optimal_stepsize: need L > 0, mu < L");
  T lo = (T(1) + edge) / L;
  T hi = (T(2) - edge) / L;
  auto diff = [&](const T& g) { return eval_E(T(1) - g * mu, N) - eval_E(T(1) - g * L, N); };
  if (!(diff(lo) < T(0)) || !(diff(hi) > T(0)))
    throw std::runtime_error("optimal_stepsize: no sign change over (1/L, 2/L)");
  for (int it = 0; it < iterations; ++it) {
    T mid = (lo + hi) / T(2);
    (diff(mid) < T(0) ? lo : hi) = mid;
  }
  return (lo + hi) / T(2);
}
}  // namespace detail

}  // namespace gdrate
