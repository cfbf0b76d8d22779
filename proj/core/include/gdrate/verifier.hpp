#pragma once

// Certificate verification: the balance condition, multiplier signs, PSD of
// the PEP matrix, the closed-form rank-one decomposition, a randomized
// quadratic-identity oracle, numeric proposition audits, and the end-to-end
// certify() pipeline.

#include <cstdint>
#include <string>
#include <vector>

#include "gdrate/certificate_builder.hpp"
#include "gdrate/matrix.hpp"
#include "gdrate/pep_assembler.hpp"
#include "gdrate/rng.hpp"
#include "gdrate/scalar_kernel.hpp"
#include "gdrate/stepsize_solver.hpp"

namespace gdrate {

/// Per-node balance residuals: sum_i lambda_{i,k} - sum_j lambda_{k,j} - rhs(k)
/// with rhs(N) = 1, rhs(0) = -1, 0 otherwise. Exactly zero (in exact
/// arithmetic) for any builder certificate; the identity is algebraic in
/// (rho, eta).
template <class T>
std::vector<T> check_balance(const CertificateBundleT<T>& cert) {
  const int N = cert.N;
  std::vector<T> residual(N + 1, T(0));
  for (const auto& [ij, v] : cert.lambda) {
    residual[ij.second] += v;  // flows into node j
    residual[ij.first] -= v;   // flows out of node i
  }
  residual[N] -= T(1);
  residual[0] += T(1);
  return residual;
}

struct PsdResult {
  double min_eigenvalue = 0.0;
  bool pass = false;
};

/// Minimum eigenvalue via a symmetric eigensolver; pass iff
/// min_eig >= -psd_tol * max(1, max-abs entry).
PsdResult check_psd(const Matrix<double>& S_sym, double psd_tol = 1e-8);

/// Rank-one decomposition of the PEP matrix: coef * sum_k delta_k v_k v_k^T
/// with coef = eta^2 (1-rho) / (2 (eta-rho)^2), delta_1 = T_1,
/// delta_k = T_k - (F_{N-k}/F_{N-k+1})^2 T_{k-1}, and v_k carrying a single
/// 1 at position k followed by -1/F_{N-k}(eta). delta_N equals T_N, so it
/// vanishes exactly on the optimal-stepsize locus.
template <class T>
struct DecompositionT {
  T coef{};
  std::vector<T> delta;               // delta_1..delta_N
  std::vector<std::vector<T>> vectors;  // v_1..v_N, each length N+1

  Matrix<T> reconstruct() const {
    const std::size_t n = vectors.empty() ? 0 : vectors.front().size();
    Matrix<T> m(n, n);
    for (std::size_t k = 0; k < delta.size(); ++k) add_scaled_outer(m, coef * delta[k], vectors[k]);
    return m;
  }
};
using Decomposition = DecompositionT<double>;

template <class T>
DecompositionT<T> closed_form_pep_matrix(int N, const T& rho, const T& eta) {
  if (N < 1) throw std::invalid_argument("closed_form_pep_matrix: N must be >= 1");
  if (rho == T(0) || eta == T(0))
    throw std::domain_error("closed_form_pep_matrix: rho, eta must be nonzero");
  DecompositionT<T> d;
  d.coef = eta * eta * (T(1) - rho) / (T(2) * (eta - rho) * (eta - rho));
  d.delta.reserve(N);
  d.vectors.reserve(N);
  for (int k = 1; k <= N; ++k) {
    if (k == 1) {
      d.delta.push_back(eval_T(rho, eta, 1));
    } else {
      const T f_lo = eval_F(eta, N - k);      // zero at k = N
      const T f_hi = eval_F(eta, N - k + 1);
      if (f_hi == T(0)) throw std::domain_error("closed_form_pep_matrix: F_{N-k+1}(eta) = 0");
      const T ratio = f_lo / f_hi;
      d.delta.push_back(eval_T(rho, eta, k) - ratio * ratio * eval_T(rho, eta, k - 1));
    }
    std::vector<T> v(N + 1, T(0));
    v[k] = T(1);
    if (k < N) {
      const T tail = T(-1) / eval_F(eta, N - k);
      for (int j = k + 1; j <= N; ++j) v[j] = tail;
    }
    d.vectors.push_back(std::move(v));
  }
  return d;
}

struct OracleResult {
  int trials = 0;
  double max_relative_error = 0.0;
};

/// Randomized check that the assembled quadratic form reproduces the direct
/// weighted-sum expansion. Per seeded trial: draw gradients g_0..g_N in R^d
/// and free values f+_0..f+_N, run the GD recursion, and compare
///   S_direct = f+_0 - f+_N + |g_0|^2/2L - |g_N|^2/2tau + sum lambda_ij Q_ij
/// against L * <S_sym x, x> on the difference basis. The random f+ values
/// exercise the linear-term cancellation that the balance condition
/// guarantees. Errors are relative to max(1, |S_direct|).
OracleResult oracle_quadratic_identity(const ProblemInstance& inst_eff,
                                       const CertificateBundle& cert,
                                       const Matrix<double>& S_sym, int trials, int dim,
                                       std::uint64_t seed);

struct AuditItem {
  bool pass = false;
  double worst_margin = 0.0;
};

struct PropositionAudits {
  AuditItem prop1;  // rho/eta ranges and T_k >= 0 for k < N; margin = min T_k
  AuditItem prop2;  // psi convexity; margin = min second difference / scale
  AuditItem prop3;  // T_{k+1}/F_{N-k-1} - T_k/F_{N-k} >= 0; vacuous for N <= 2
  AuditItem prop4;  // (eta-rho)/eta E_k(rho) - T_k/F_{N-k} >= 0; vacuous for N = 1
  double psi_endpoint0_error = 0.0;  // |psi(0)|
  double psi_endpointN_error = 0.0;  // |psi(N) + 2N log(-rho)|
  double psi_chord_margin = 0.0;     // min over grid of -2t log(-rho) - psi(t)
  double t_final = 0.0;              // T_N at the pair, recorded not gated

  bool all_pass() const { return prop1.pass && prop2.pass && prop3.pass && prop4.pass; }
};

PropositionAudits check_propositions(int N, double rho, double eta, int grid_size = 256);

enum class BoundForm { max_form, min_form };
const char* bound_form_name(BoundForm f);

struct CertifyConfig {
  SolverOptions solver{};
  double balance_tol = 1e-10;
  double lambda_tol = 1e-10;  // min lambda >= -lambda_tol
  double psd_tol = 1e-8;      // relative to max(1, max-abs entry)
  double oracle_tol = 1e-8;
  int oracle_trials = 100;
  int oracle_dim = 3;
  std::uint64_t seed = 42;
  int psi_grid = 256;
};

struct VerificationReport {
  ProblemInstance instance{};
  SurrogateClass surrogate{};
  double rho_eff = 0.0, eta_eff = 0.0, tau = 0.0;
  std::vector<double> balance_residuals;
  double min_lambda = 0.0;
  double min_eigenvalue = 0.0;
  double decomposition_residual = 0.0;  // max-abs entry difference, binary64 pair
  PropositionAudits proposition_audits{};
  OracleResult oracle{};
  std::uint64_t seed = 0;
  bool certified = false;
  std::string failed_stage;  // empty when certified
  double bound_value = 0.0;
  BoundForm bound_form = BoundForm::max_form;
  CertifyConfig config{};
};

/// End-to-end pipeline: surrogate class -> certificate -> matrices ->
/// balance (exact rational), sign scan, PSD, decomposition residual,
/// oracle trials, proposition audits -> bound composition. Sub-check
/// failures set certified = false and name the stage; mathematical
/// infeasibility never throws.
VerificationReport certify(const ProblemInstance& inst, const CertifyConfig& cfg = {});

/// Report as a flat JSON document, numbers at 17 significant digits,
/// deterministic field order.
std::string report_to_json(const VerificationReport& report);

/// Rank-one decomposition audit at a true optimal-stepsize pair, solved and
/// evaluated in 50-digit arithmetic (a binary64 pair cannot sit on the
/// T_N = 0 locus closely enough for the absolute delta tolerances at large
/// E_N scales).
struct DecompositionAudit {
  double min_delta = 0.0;
  double abs_delta_final = 0.0;    // |delta_N|
  double residual_relative = 0.0;  // max-abs residual / max(1, max-abs S_sym)
};
DecompositionAudit audit_decomposition_at_optimal(int N, double mu, double L);

}  // namespace gdrate
