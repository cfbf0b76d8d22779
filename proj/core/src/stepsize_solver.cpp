#include "gdrate/stepsize_solver.hpp"

#include <algorithm>
#include <cmath>

namespace gdrate {

const char* stepsize_regime_name(StepsizeRegime r) {
  switch (r) {
    case StepsizeRegime::below_optimal: return "below_optimal";
    case StepsizeRegime::above_optimal: return "above_optimal";
    case StepsizeRegime::at_optimal: return "at_optimal";
  }
  return "?";
}

namespace {

// |E_N(eta) - E_N(rho)| relative to the larger branch.
double t_gap_relative(int N, double mu, double L, double gamma) {
  const double eh = eval_E_extended(1.0 - gamma * mu, N);
  const double er = eval_E_extended(1.0 - gamma * L, N);
  if (std::isinf(eh) || std::isinf(er)) return 1.0;
  return std::fabs(eh - er) / std::max(eh, er);
}

}  // namespace

double optimal_stepsize(int N, double mu, double L, const SolverOptions& opts) {
  if (N < 1) throw std::invalid_argument("optimal_stepsize: N must be >= 1");
  if (!(L > 0.0) || !(mu < L)) throw std::invalid_argument("optimal_stepsize: need L > 0, mu < L");
  const double edge = 1e-12;
  double lo = (1.0 + edge) / L;
  double hi = (2.0 - edge) / L;
  auto diff = [&](double g) {
    return eval_E_extended(1.0 - g * mu, N) - eval_E_extended(1.0 - g * L, N);
  };
  // E_N(rho) -> +inf at gamma -> 1/L+, -> 0 at gamma -> 2/L-, so the sign
  // convention is fixed at the ends; anything else means the assumed single
  // sign change failed.
  if (!(diff(lo) < 0.0) || !(diff(hi) > 0.0))
    throw SolverError("optimal_stepsize: bracket endpoints do not change sign", lo, hi);

  double gamma = 0.0;
  bool converged = false;
  for (int it = 0; it < opts.max_iterations; ++it) {
    gamma = 0.5 * (lo + hi);
    if (t_gap_relative(N, mu, L, gamma) <= opts.tol) {
      converged = true;
      break;
    }
    (diff(gamma) < 0.0 ? lo : hi) = gamma;
    if (hi - lo <= std::numeric_limits<double>::epsilon() * gamma) {
      gamma = 0.5 * (lo + hi);
      converged = true;
      break;
    }
  }
  if (!converged && t_gap_relative(N, mu, L, gamma) > opts.tol)
    throw SolverError("optimal_stepsize: no convergence after max iterations", lo, hi);

  // ulp-scan polish: settle on the representable gamma minimizing the gap.
  double best = gamma, best_gap = t_gap_relative(N, mu, L, gamma);
  for (int dir : {-1, +1}) {
    double g = gamma;
    for (int step = 0; step < 32; ++step) {
      g = std::nextafter(g, dir > 0 ? 2.0 / L : 0.0);
      const double gap = t_gap_relative(N, mu, L, g);
      if (gap < best_gap) {
        best_gap = gap;
        best = g;
      }
    }
  }
  return best;
}

SurrogateClass surrogate_class(const ProblemInstance& inst, const SolverOptions& opts) {
  inst.ensure_valid();
  const int N = inst.N;
  SurrogateClass out{inst.mu, inst.L, StepsizeRegime::at_optimal};

  const double e_eta = eval_E_extended(1.0 - inst.gamma * inst.mu, N);
  const double e_rho = eval_E_extended(1.0 - inst.gamma * inst.L, N);
  const double scale = std::isinf(e_eta) || std::isinf(e_rho) ? infinity() : std::max(e_eta, e_rho);
  if (std::isfinite(scale) && std::fabs(e_eta - e_rho) <= tolerances::kBalancedRegime * scale)
    return out;

  if (e_eta < e_rho) {
    // gamma below optimal: raise L' until E_N(1 - gamma L') = E_N(eta).
    // E_N is increasing on (-1, 0) from 0 to +inf, so the root is unique.
    out.regime = StepsizeRegime::below_optimal;
    double lo = -1.0 + 1e-15, hi = -1e-300;
    auto diff = [&](double r) { return eval_E(r, N) - e_eta; };
    for (int it = 0; it < opts.max_iterations; ++it) {
      const double mid = 0.5 * (lo + hi);
      (diff(mid) < 0.0 ? lo : hi) = mid;
    }
    const double rho_eff = 0.5 * (lo + hi);
    out.L_eff = (1.0 - rho_eff) / inst.gamma;
  } else {
    // gamma above optimal: lower mu' until E_N(eta') = E_N(rho).
    // E_N is decreasing on (0, inf) from +inf to 0; expand the upper end
    // of the eta' bracket until it crosses.
    out.regime = StepsizeRegime::above_optimal;
    const double rho = 1.0 - inst.gamma * inst.L;
    double lo = std::max(-rho, 1e-8), hi = 2.0;
    int guard = 0;
    while (eval_E(hi, N) > e_rho) {
      hi *= 2.0;
      if (++guard > 4096)
        throw SolverError("surrogate_class: eta' bracket expansion failed", lo, hi);
    }
    auto diff = [&](double e2) { return eval_E(e2, N) - e_rho; };
    for (int it = 0; it < opts.max_iterations; ++it) {
      const double mid = 0.5 * (lo + hi);
      (diff(mid) > 0.0 ? lo : hi) = mid;
    }
    const double eta_eff = 0.5 * (lo + hi);
    out.mu_eff = (1.0 - eta_eff) / inst.gamma;
  }
  return out;
}

}  // namespace gdrate
