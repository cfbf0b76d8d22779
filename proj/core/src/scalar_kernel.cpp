#include "gdrate/scalar_kernel.hpp"

#include <cmath>

namespace gdrate {

void ProblemInstance::ensure_valid() const {
  if (!(N >= 1)) throw std::invalid_argument("ProblemInstance: N must be >= 1");
  if (!(L > 0.0)) throw std::invalid_argument("ProblemInstance: L must be > 0");
  if (!(mu < L)) throw std::invalid_argument("ProblemInstance: mu must be < L");
  if (!(gamma * L > 0.0 && gamma * L < 2.0))
    throw std::invalid_argument("ProblemInstance: gamma*L must lie in (0, 2)");
}

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::mu_dominated: return "mu_dominated";
    case Regime::rho_dominated: return "rho_dominated";
    case Regime::balanced: return "balanced";
  }
  return "?";
}

Regime regime_from_name(const std::string& name) {
  if (name == "mu_dominated") return Regime::mu_dominated;
  if (name == "rho_dominated") return Regime::rho_dominated;
  if (name == "balanced") return Regime::balanced;
  throw std::invalid_argument("unknown regime tag: " + name);
}

double eval_E(double x, int k) {
  if (k <= 0) return 0.0;
  if (x == 0.0) throw std::domain_error("eval_E: x = 0 (limit is +infinity)");
  if (std::fabs(x - 1.0) <= tolerances::kDirectSumWindow) return detail::eval_E_sum(x, k);
  // (x^-2k - 1)/(1 - x); even negative power lets us work with |x|.
  return even_pow_minus_one(x, -2L * k) / (1.0 - x);
}

double eval_F(double x, int k) {
  if (k <= 0) return 0.0;
  if (x == 0.0) return 0.0;
  if (std::fabs(x - 1.0) <= tolerances::kDirectSumWindow) return detail::eval_F_sum(x, k);
  // x (1 - x^k)/(1 - x) with x^k - 1 via expm1 so |x| near 1 stays accurate
  const double u = std::expm1(k * std::log1p(std::fabs(x) - 1.0));  // |x|^k - 1
  const double xk_minus_1 = (x > 0.0 || k % 2 == 0) ? u : -u - 2.0;
  return -x * xk_minus_1 / (1.0 - x);
}

ScalarParams derive_params(const ProblemInstance& inst) {
  return derive_params<double>(inst.N, inst.mu, inst.L, inst.gamma);
}

double eval_E_extended(double x, int k) {
  if (k <= 0) return 0.0;
  if (x == 0.0) return infinity();
  return eval_E(x, k);
}

RateBound rate_bound(const ProblemInstance& inst) {
  inst.ensure_valid();
  const ScalarParams p = derive_params(inst);
  RateBound out;

  const double e_eta = eval_E_extended(p.eta, inst.N);
  const double e_rho = eval_E_extended(p.rho, inst.N);
  out.min_form = std::min(e_eta, e_rho);

  const double scale = std::max(e_eta, e_rho);
  if (std::isfinite(scale) && std::fabs(e_eta - e_rho) <= tolerances::kBalancedRegime * scale)
    out.regime = Regime::balanced;
  else
    out.regime = e_eta < e_rho ? Regime::mu_dominated : Regime::rho_dominated;

  out.branch_rho = int_pow(p.rho, 2L * inst.N);
  out.has_max_form = inst.mu >= 0.0;
  if (out.has_max_form) {
    if (std::fabs(inst.mu * inst.gamma) <= tolerances::kMuLimitSwitch) {
      // kappa -> 0 limit of the mu branch; the printed form is 0/0 there.
      out.branch_mu = 1.0 / (1.0 + 2.0 * inst.N * inst.gamma * inst.L);
    } else {
      const double u = even_pow_minus_one(p.eta, -2L * inst.N);  // eta^-2N - 1
      out.branch_mu = p.kappa / (p.kappa + u);
    }
    out.max_value = std::max(out.branch_mu, out.branch_rho);
  } else {
    out.branch_mu = quiet_nan();
    out.max_value = quiet_nan();
  }
  return out;
}

double eval_psi(double t, double rho, double eta, double N) {
  if (!(rho > -1.0 && rho < 0.0)) throw std::domain_error("eval_psi: rho must be in (-1, 0)");
  if (!(eta > 0.0)) throw std::domain_error("eval_psi: eta must be > 0");
  if (!(N > 0.0)) throw std::domain_error("eval_psi: N must be > 0");
  double num, den;
  if (std::fabs(eta - 1.0) <= tolerances::kPsiBranchSwitch) {
    num = 1.0 + (1.0 - rho) * (N + t);
    den = 1.0 + (1.0 - rho) * (N - t);
  } else {
    num = -(eta - rho) + (1.0 - rho) * std::pow(eta, -t - N);
    den = -(eta - rho) + (1.0 - rho) * std::pow(eta, t - N);
  }
  const double ratio = num / den;
  if (!(ratio > 0.0)) throw std::domain_error("eval_psi: log argument not positive");
  return std::log(ratio);
}

}  // namespace gdrate
