#include "gdrate/verifier.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace gdrate {

namespace {

Eigen::MatrixXd to_eigen(const Matrix<double>& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  return out;
}

}  // namespace

const char* bound_form_name(BoundForm f) {
  return f == BoundForm::max_form ? "max_form_eq3" : "min_form_eq13";
}

PsdResult check_psd(const Matrix<double>& S_sym, double psd_tol) {
  if (S_sym.rows() != S_sym.cols()) throw std::invalid_argument("check_psd: matrix not square");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.compute(to_eigen(S_sym), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("check_psd: eigensolver failed");
  PsdResult r;
  r.min_eigenvalue = solver.eigenvalues().minCoeff();
  r.pass = r.min_eigenvalue >= -psd_tol * std::max(1.0, S_sym.max_abs());
  return r;
}

OracleResult oracle_quadratic_identity(const ProblemInstance& inst_eff,
                                       const CertificateBundle& cert,
                                       const Matrix<double>& S_sym, int trials, int dim,
                                       std::uint64_t seed) {
  const int N = cert.N;
  if (S_sym.rows() != static_cast<std::size_t>(N + 1))
    throw std::invalid_argument("oracle: S_sym shape does not match certificate");
  if (dim < 1 || trials < 1) throw std::invalid_argument("oracle: trials and dim must be >= 1");
  const double L = inst_eff.L;
  const double mu = inst_eff.mu;
  const double gamma = inst_eff.gamma;
  const double q_coef = mu * L / (2.0 * (L - mu));
  const int n = N + 1;

  auto dot = [dim](const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (int t = 0; t < dim; ++t) s += a[t] * b[t];
    return s;
  };

  OracleResult out;
  out.trials = trials;
  for (int trial = 0; trial < trials; ++trial) {
    Rng rng = Rng::for_trial(seed, static_cast<std::uint64_t>(trial));
    std::vector<std::vector<double>> g(n, std::vector<double>(dim));
    std::vector<double> f_plus(n);
    for (auto& gk : g)
      for (auto& v : gk) v = rng.symmetric();
    for (auto& v : f_plus) v = rng.symmetric();

    // GD recursion from x_0 = 0, then the x+ points.
    std::vector<std::vector<double>> x(n, std::vector<double>(dim, 0.0));
    for (int k = 0; k < N; ++k)
      for (int t = 0; t < dim; ++t) x[k + 1][t] = x[k][t] - gamma * g[k][t];
    std::vector<std::vector<double>> x_plus(n, std::vector<double>(dim));
    for (int k = 0; k < n; ++k)
      for (int t = 0; t < dim; ++t) x_plus[k][t] = x[k][t] - g[k][t] / L;

    double s_direct = f_plus[0] - f_plus[N] + dot(g[0], g[0]) / (2.0 * L) -
                      dot(g[N], g[N]) / (2.0 * cert.tau);
    std::vector<double> diff(dim);
    for (const auto& [ij, lambda] : cert.lambda) {
      const auto [i, j] = ij;
      for (int t = 0; t < dim; ++t) diff[t] = x_plus[i][t] - x_plus[j][t];
      s_direct += lambda * (f_plus[j] - f_plus[i] + dot(g[j], diff) + q_coef * dot(diff, diff));
    }

    // difference basis: (x0+ - x0, x1+ - x0+, ..., xN+ - x_{N-1}+)
    std::vector<std::vector<double>> basis(n, std::vector<double>(dim));
    for (int t = 0; t < dim; ++t) basis[0][t] = x_plus[0][t] - x[0][t];
    for (int k = 1; k < n; ++k)
      for (int t = 0; t < dim; ++t) basis[k][t] = x_plus[k][t] - x_plus[k - 1][t];
    double s_matrix = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) s_matrix += S_sym(i, j) * dot(basis[i], basis[j]);
    s_matrix *= L;

    const double err = std::fabs(s_direct - s_matrix) / std::max(1.0, std::fabs(s_direct));
    out.max_relative_error = std::max(out.max_relative_error, err);
  }
  return out;
}

PropositionAudits check_propositions(int N, double rho, double eta, int grid_size) {
  PropositionAudits out;
  const double inf = infinity();

  // ranges and T_k signs
  const bool ranges_ok = rho > -1.0 && rho < 0.0 && eta > -rho;
  double min_t = inf;
  if (ranges_ok) {
    for (int k = 1; k <= N - 1; ++k) min_t = std::min(min_t, eval_T(rho, eta, k));
    out.t_final = eval_T(rho, eta, N);
  }
  out.prop1.worst_margin = min_t;
  out.prop1.pass = ranges_ok && min_t >= -1e-10;

  // psi convexity on a uniform grid, endpoint identities, chord bound
  out.prop2.worst_margin = -inf;
  out.prop2.pass = false;
  if (ranges_ok && eta > 0.0 && grid_size >= 3) {
    try {
      const double nn = static_cast<double>(N);
      std::vector<double> psi(grid_size);
      double psi_scale = 1.0;
      double chord_margin = inf;
      const double log_mrho = std::log(-rho);
      for (int i = 0; i < grid_size; ++i) {
        const double t = nn * i / (grid_size - 1);
        psi[i] = eval_psi(t, rho, eta, nn);
        psi_scale = std::max(psi_scale, std::fabs(psi[i]));
        chord_margin = std::min(chord_margin, -2.0 * t * log_mrho - psi[i]);
      }
      double min_d2 = inf;
      for (int i = 1; i + 1 < grid_size; ++i)
        min_d2 = std::min(min_d2, psi[i + 1] - 2.0 * psi[i] + psi[i - 1]);
      out.prop2.worst_margin = min_d2 / psi_scale;
      out.psi_endpoint0_error = std::fabs(psi.front());
      out.psi_endpointN_error = std::fabs(psi.back() + 2.0 * nn * log_mrho);
      out.psi_chord_margin = chord_margin;
      out.prop2.pass = out.prop2.worst_margin >= -1e-8 && out.psi_endpoint0_error <= 1e-10 &&
                       out.psi_endpointN_error <= 1e-10 && chord_margin >= -1e-8;
    } catch (const std::domain_error&) {
      out.prop2.pass = false;  // domain violation is an audit failure, not an exception
    }
  }

  // T_{k+1}/F_{N-k-1} >= T_k/F_{N-k} for k = 1..N-2 (vacuous for N <= 2)
  double min3 = inf;
  for (int k = 1; k <= N - 2; ++k)
    min3 = std::min(min3, eval_T(rho, eta, k + 1) / eval_F(eta, N - k - 1) -
                              eval_T(rho, eta, k) / eval_F(eta, N - k));
  out.prop3.worst_margin = min3;
  out.prop3.pass = ranges_ok && min3 >= -1e-10;

  // (eta-rho)/eta E_k(rho) >= T_k/F_{N-k} for k = 1..N-1 (vacuous for N = 1)
  double min4 = inf;
  for (int k = 1; k <= N - 1; ++k)
    min4 = std::min(min4, (eta - rho) / eta * eval_E(rho, k) -
                              eval_T(rho, eta, k) / eval_F(eta, N - k));
  out.prop4.worst_margin = min4;
  out.prop4.pass = ranges_ok && min4 >= -1e-10;
  return out;
}

VerificationReport certify(const ProblemInstance& inst, const CertifyConfig& cfg) {
  inst.ensure_valid();
  VerificationReport rep;
  rep.instance = inst;
  rep.config = cfg;
  rep.seed = cfg.seed;

  rep.surrogate = surrogate_class(inst, cfg.solver);
  const double L_eff = rep.surrogate.L_eff;
  const double mu_eff = rep.surrogate.mu_eff;
  rep.rho_eff = 1.0 - inst.gamma * L_eff;
  rep.eta_eff = 1.0 - inst.gamma * mu_eff;

  const CertificateBundle cert = build_certificate(inst.N, rep.rho_eff, rep.eta_eff, L_eff);
  rep.tau = cert.tau;

  // balance + multiplier signs, exactly: binary64 inputs are dyadic
  // rationals, and the balance identity cancels algebraically.
  const CertificateBundleT<Rational> cert_exact =
      build_certificate(inst.N, Rational(rep.rho_eff), Rational(rep.eta_eff), Rational(L_eff));
  const std::vector<Rational> residual_exact = check_balance(cert_exact);
  rep.balance_residuals.resize(residual_exact.size());
  double max_residual = 0.0;
  for (std::size_t i = 0; i < residual_exact.size(); ++i) {
    rep.balance_residuals[i] = to_double(residual_exact[i]);
    max_residual = std::max(max_residual, std::fabs(rep.balance_residuals[i]));
  }
  rep.min_lambda = to_double(cert_exact.min_lambda());

  const double kappa_eff = mu_eff / L_eff;
  const PepMatrixSet pep = build_pep_set(cert, kappa_eff);
  const PsdResult psd = check_psd(pep.S_sym, cfg.psd_tol);
  rep.min_eigenvalue = psd.min_eigenvalue;

  const Decomposition decomp = closed_form_pep_matrix(inst.N, rep.rho_eff, rep.eta_eff);
  rep.decomposition_residual = (pep.S_sym - decomp.reconstruct()).max_abs();

  ProblemInstance inst_eff = inst;
  inst_eff.mu = mu_eff;
  inst_eff.L = L_eff;
  rep.oracle = oracle_quadratic_identity(inst_eff, cert, pep.S_sym, cfg.oracle_trials,
                                         cfg.oracle_dim, cfg.seed);

  rep.proposition_audits = check_propositions(inst.N, rep.rho_eff, rep.eta_eff, cfg.psi_grid);

  // bound composition at the original class; the certificate proves the
  // min form, and for mu >= 0 adding f_N+ >= f_* upgrades it to the max form.
  const RateBound rb = rate_bound(inst);
  if (rb.has_max_form) {
    rep.bound_form = BoundForm::max_form;
    rep.bound_value = rb.max_value;
  } else {
    rep.bound_form = BoundForm::min_form;
    rep.bound_value = rb.min_form;
  }

  rep.certified = true;
  if (max_residual > cfg.balance_tol) {
    rep.certified = false;
    rep.failed_stage = "balance";
  } else if (rep.min_lambda < -cfg.lambda_tol || !(rep.tau > 0.0)) {
    rep.certified = false;
    rep.failed_stage = "multiplier_signs";
  } else if (!psd.pass) {
    rep.certified = false;
    rep.failed_stage = "psd";
  } else if (rep.oracle.max_relative_error > cfg.oracle_tol) {
    rep.certified = false;
    rep.failed_stage = "oracle_identity";
  }
  return rep;
}

DecompositionAudit audit_decomposition_at_optimal(int N, double mu, double L) {
  const BigFloat bmu(mu), bL(L);
  const BigFloat gamma =
      detail::optimal_stepsize_generic<BigFloat>(N, bmu, bL, BigFloat("1e-40"), 220);
  const BigFloat rho = 1 - gamma * bL;
  const BigFloat eta = 1 - gamma * bmu;

  const auto cert = build_certificate<BigFloat>(N, rho, eta, bL);
  const auto pep = build_pep_set<BigFloat>(cert, bmu / bL);
  const auto decomp = closed_form_pep_matrix<BigFloat>(N, rho, eta);

  DecompositionAudit out;
  BigFloat min_delta = decomp.delta.front();
  for (const auto& d : decomp.delta) min_delta = std::min(min_delta, d);
  out.min_delta = to_double(min_delta);
  out.abs_delta_final = to_double(BigFloat(abs_value(decomp.delta.back())));
  const BigFloat residual = (pep.S_sym - decomp.reconstruct()).max_abs();
  const BigFloat scale = std::max(BigFloat(1), pep.S_sym.max_abs());
  out.residual_relative = to_double(BigFloat(residual / scale));
  return out;
}

namespace {

// 17 significant digits; non-finite values become quoted lowercase
// sentinels so the document stays parseable JSON.
std::string fmt(double v) {
  if (std::isnan(v)) return "\"nan\"";
  if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void append_audit(std::string& s, const char* name, const AuditItem& item, bool last,
                  const std::string& extra = {}) {
  s += "    {\"name\": \"";
  s += name;
  s += "\", \"pass\": ";
  s += item.pass ? "true" : "false";
  s += ", \"worst_margin\": ";
  s += fmt(item.worst_margin);
  s += extra;
  s += last ? "}\n" : "},\n";
}

}  // namespace

std::string report_to_json(const VerificationReport& r) {
  std::string s;
  s += "{\n";
  s += "  \"instance\": {\"N\": " + std::to_string(r.instance.N) + ", \"mu\": " + fmt(r.instance.mu) +
       ", \"L\": " + fmt(r.instance.L) + ", \"gamma\": " + fmt(r.instance.gamma) +
       ", \"gamma_normalized\": " + fmt(r.instance.gamma * r.instance.L) + "},\n";
  s += "  \"surrogate\": {\"mu_eff\": " + fmt(r.surrogate.mu_eff) +
       ", \"L_eff\": " + fmt(r.surrogate.L_eff) + ", \"regime\": \"" +
       stepsize_regime_name(r.surrogate.regime) + "\"},\n";
  s += "  \"rho_eff\": " + fmt(r.rho_eff) + ",\n";
  s += "  \"eta_eff\": " + fmt(r.eta_eff) + ",\n";
  s += "  \"tau\": " + fmt(r.tau) + ",\n";
  s += "  \"balance_residuals\": [";
  for (std::size_t i = 0; i < r.balance_residuals.size(); ++i) {
    if (i) s += ", ";
    s += fmt(r.balance_residuals[i]);
  }
  s += "],\n";
  s += "  \"min_lambda\": " + fmt(r.min_lambda) + ",\n";
  s += "  \"min_eigenvalue\": " + fmt(r.min_eigenvalue) + ",\n";
  s += "  \"decomposition_residual\": " + fmt(r.decomposition_residual) + ",\n";
  s += "  \"proposition_audits\": [\n";
  const auto& pa = r.proposition_audits;
  append_audit(s, "prop1", pa.prop1, false,
               ", \"t_final\": " + fmt(pa.t_final));
  append_audit(s, "prop2", pa.prop2, false,
               ", \"psi_endpoint0_error\": " + fmt(pa.psi_endpoint0_error) +
                   ", \"psi_endpointN_error\": " + fmt(pa.psi_endpointN_error) +
                   ", \"psi_chord_margin\": " + fmt(pa.psi_chord_margin));
  append_audit(s, "prop3", pa.prop3, false);
  append_audit(s, "prop4", pa.prop4, true);
  s += "  ],\n";
  s += "  \"oracle_trials\": {\"count\": " + std::to_string(r.oracle.trials) +
       ", \"max_relative_error\": " + fmt(r.oracle.max_relative_error) + ", \"rng\": \"" +
       kRngAlgorithm + "\", \"seed\": " + std::to_string(r.seed) + "},\n";
  s += std::string("  \"certified\": ") + (r.certified ? "true" : "false") + ",\n";
  s += "  \"failed_stage\": \"" + r.failed_stage + "\",\n";
  s += "  \"bound_value\": " + fmt(r.bound_value) + ",\n";
  s += std::string("  \"bound_form\": \"") + bound_form_name(r.bound_form) + "\",\n";
  s += "  \"tolerances\": {\"solver_tol\": " + fmt(r.config.solver.tol) +
       ", \"balance_tol\": " + fmt(r.config.balance_tol) +
       ", \"lambda_tol\": " + fmt(r.config.lambda_tol) + ", \"psd_tol\": " + fmt(r.config.psd_tol) +
       ", \"oracle_tol\": " + fmt(r.config.oracle_tol) + "}\n";
  s += "}\n";
  return s;
}

}  // namespace gdrate
