#pragma once

// Scalar kernel: the contraction-factor functions E_k, F_k, T_k, the derived
// parameters (rho, eta, kappa), both worst-case rate forms, and the psi
// function used by the convexity audit.
//
//   E_k(x) = sum_{j=1..2k} x^-j     (= (x^-2k - 1)/(1 - x) off x in {0,1})
//   F_k(x) = sum_{j=1..k}  x^j
//   T_k(rho, eta) = E_k(eta) - E_k(rho)
//
// Empty sums are zero for k <= 0; E_k(0) is the caller's +infinity.

#include <stdexcept>
#include <string>

#include "gdrate/numeric.hpp"

namespace gdrate {

/// Problem data: horizon N, class constants (mu, L), constant stepsize gamma.
/// Valid iff L > 0, mu < L, 0 < gamma*L < 2, N >= 1. mu < 0 is allowed.
struct ProblemInstance {
  int N = 1;
  double mu = 0.0;
  double L = 1.0;
  double gamma = 1.0;

  bool valid() const {
    return N >= 1 && L > 0.0 && mu < L && gamma * L > 0.0 && gamma * L < 2.0;
  }
  void ensure_valid() const;
};

template <class T>
struct ScalarParamsT {
  T rho;    // 1 - gamma*L, in (-1, 1)
  T eta;    // 1 - gamma*mu, > -1
  T kappa;  // mu/L, < 1
};
using ScalarParams = ScalarParamsT<double>;

enum class Regime { mu_dominated, rho_dominated, balanced };

const char* regime_name(Regime r);
Regime regime_from_name(const std::string& name);

/// Both forms of the worst-case rate. The max-form fields are defined only
/// for mu >= 0 (has_max_form); the min form holds for every mu < L.
struct RateBound {
  double branch_mu = 0.0;   // kappa / ((kappa - 1) + eta^-2N), NaN when mu < 0
  double branch_rho = 0.0;  // rho^2N
  double max_value = 0.0;   // max of the two branches, NaN when mu < 0
  double min_form = 0.0;    // min{E_N(eta), E_N(rho)}, E_N(0) read as +inf
  Regime regime = Regime::balanced;
  bool has_max_form = false;
};

namespace detail {
// Direct summation; the only evaluation path for exact scalars and the
// fallback within |x - 1| <= 1e-8 for floats (the closed form is 0/0 at 1).
template <class T>
T eval_E_sum(const T& x, int k) {
  T inv = T(1) / x;
  T p(1), s(0);
  for (int j = 1; j <= 2 * k; ++j) {
    p *= inv;
    s += p;
  }
  return s;
}
template <class T>
T eval_F_sum(const T& x, int k) {
  T p(1), s(0);
  for (int j = 1; j <= k; ++j) {
    p *= x;
    s += p;
  }
  return s;
}
}  // namespace detail

/// E_k(x). Domain error at x = 0 with k >= 1; callers that want the
/// +infinity limit there must handle it themselves (rate_bound does).
/// Exact and high-precision scalars always sum directly; the double
/// overload uses the closed form away from x = 1.
template <class T>
  requires(!std::is_same_v<T, double>)
T eval_E(const T& x, int k) {
  if (k <= 0) return T(0);
  if (x == T(0)) throw std::domain_error("eval_E: x = 0 (limit is +infinity)");
  return detail::eval_E_sum(x, k);
}
double eval_E(double x, int k);

template <class T>
  requires(!std::is_same_v<T, double>)
T eval_F(const T& x, int k) {
  if (k <= 0) return T(0);
  return detail::eval_F_sum(x, k);
}
double eval_F(double x, int k);

template <class T>
T eval_T(const T& rho, const T& eta, int k) {
  if (k <= 0) return T(0);
  return eval_E(eta, k) - eval_E(rho, k);
}

template <class T>
ScalarParamsT<T> derive_params(int N, const T& mu, const T& L, const T& gamma) {
  ProblemInstance probe{N, to_double(mu), to_double(L), to_double(gamma)};
  probe.ensure_valid();
  return ScalarParamsT<T>{T(1) - gamma * L, T(1) - gamma * mu, mu / L};
}
ScalarParams derive_params(const ProblemInstance& inst);

/// E_N evaluated with the x = 0 limit folded in (+inf), for min-form use.
double eval_E_extended(double x, int k);

RateBound rate_bound(const ProblemInstance& inst);

/// psi(t) on [0, N]; rho in (-1,0), eta > 0. Convex in t, odd in t, with
/// psi(N) = -2N log(-rho) exactly on the T_N = 0 locus.
double eval_psi(double t, double rho, double eta, double N);

namespace tolerances {
inline constexpr double kDirectSumWindow = 1e-8;   // |x-1| window for summation fallback
inline constexpr double kMuLimitSwitch = 1e-12;    // |mu*gamma| below which branch_mu uses its limit
inline constexpr double kPsiBranchSwitch = 1e-10;  // |eta-1| below which psi takes the eta=1 branch
inline constexpr double kBalancedRegime = 1e-12;   // relative E-gap for the balanced tag
}  // namespace tolerances

}  // namespace gdrate
