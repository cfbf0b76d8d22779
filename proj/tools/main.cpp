// gdrate CLI: rate computation, optimal stepsizes, certification, gamma
// sweeps, GD simulation probes, and the quadratic-identity oracle.
//
// Exit codes: 0 success (and certified / bound valid), 1 certification or
// bound-validity failure (also unwritable output), 2 invalid input.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "gdrate/gd_lab.hpp"
#include "gdrate/scalar_kernel.hpp"
#include "gdrate/stepsize_solver.hpp"
#include "gdrate/verifier.hpp"

namespace {

using namespace gdrate;

int g_human_precision = 17;  // GDRATE_OUTPUT_PRECISION overrides human output only

std::string fmt17(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_human(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", g_human_precision, v);
  return buf;
}

std::string fmt_json(double v) {
  if (std::isnan(v)) return "\"nan\"";
  if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
  return fmt17(v);
}

struct OutputTarget {
  std::optional<std::string> path;

  // Returns false (caller exits 1) when the path cannot be written.
  bool write(const std::string& content) const {
    if (!path) {
      std::cout << content;
      return true;
    }
    std::ofstream f(*path, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot open output path: " << *path << "\n";
      return false;
    }
    f << content;
    f.flush();
    if (!f) {
      std::cerr << "error: write failed: " << *path << "\n";
      return false;
    }
    return true;
  }
};

constexpr const char* kCsvHeader = "gamma,branch_mu,branch_rho,bound,min_form,regime\n";

std::string csv_row(double gamma, const RateBound& rb) {
  return fmt17(gamma) + "," + fmt17(rb.branch_mu) + "," + fmt17(rb.branch_rho) + "," +
         fmt17(rb.max_value) + "," + fmt17(rb.min_form) + "," + regime_name(rb.regime) + "\n";
}

std::string rate_json(const ProblemInstance& inst, const RateBound& rb) {
  std::string s = "{\n";
  s += "  \"N\": " + std::to_string(inst.N) + ",\n";
  s += "  \"mu\": " + fmt_json(inst.mu) + ",\n";
  s += "  \"L\": " + fmt_json(inst.L) + ",\n";
  s += "  \"gamma\": " + fmt_json(inst.gamma) + ",\n";
  s += "  \"gamma_normalized\": " + fmt_json(inst.gamma * inst.L) + ",\n";
  s += "  \"branch_mu\": " + fmt_json(rb.branch_mu) + ",\n";
  s += "  \"branch_rho\": " + fmt_json(rb.branch_rho) + ",\n";
  s += "  \"bound\": " + fmt_json(rb.max_value) + ",\n";
  s += "  \"min_form\": " + fmt_json(rb.min_form) + ",\n";
  s += std::string("  \"regime\": \"") + regime_name(rb.regime) + "\"\n";
  s += "}\n";
  return s;
}

std::string rate_human(const ProblemInstance& inst, const RateBound& rb) {
  std::string s;
  s += "gamma            = " + fmt_human(inst.gamma) + "  (normalized " +
       fmt_human(inst.gamma * inst.L) + ")\n";
  s += "branch_mu        = " + fmt_human(rb.branch_mu) + "\n";
  s += "branch_rho       = " + fmt_human(rb.branch_rho) + "\n";
  s += "bound (max form) = " + fmt_human(rb.max_value) + "\n";
  s += "min_form         = " + fmt_human(rb.min_form) + "\n";
  s += std::string("regime           = ") + regime_name(rb.regime) + "\n";
  return s;
}

std::string certify_human(const VerificationReport& r) {
  std::string s;
  s += std::string("certified        = ") + (r.certified ? "true" : "false") + "\n";
  if (!r.certified) s += "failed_stage     = " + r.failed_stage + "\n";
  s += std::string("bound_form       = ") + bound_form_name(r.bound_form) + "\n";
  s += "bound_value      = " + fmt_human(r.bound_value) + "\n";
  s += std::string("surrogate        = ") + stepsize_regime_name(r.surrogate.regime) +
       " (mu_eff " + fmt_human(r.surrogate.mu_eff) + ", L_eff " + fmt_human(r.surrogate.L_eff) +
       ")\n";
  double max_res = 0;
  for (double v : r.balance_residuals) max_res = std::max(max_res, std::fabs(v));
  s += "balance residual = " + fmt_human(max_res) + "\n";
  s += "min lambda       = " + fmt_human(r.min_lambda) + "\n";
  s += "min eigenvalue   = " + fmt_human(r.min_eigenvalue) + "\n";
  s += "oracle error     = " + fmt_human(r.oracle.max_relative_error) + "\n";
  return s;
}

int run(int argc, char** argv) {
  CLI::App app{
      "gdrate: exact worst-case rates and dual certificates for constant-stepsize gradient "
      "descent.\nOutput columns gated by mu < 0 print the lowercase sentinel `nan`.\n"
      "GDRATE_OUTPUT_PRECISION (1..17) overrides the human-readable precision."};
  app.require_subcommand(1);

  if (const char* env = std::getenv("GDRATE_OUTPUT_PRECISION")) {
    const int p = std::atoi(env);
    if (p >= 1 && p <= 17) g_human_precision = p;
  }

  // shared flags
  int N = 1;
  double mu = 0.0, L = 1.0, gamma = 1.0;
  double tol = 1e-13;
  std::string format = "human";
  std::optional<std::string> out_path;
  auto add_instance_flags = [&](CLI::App* cmd, bool with_gamma) {
    cmd->add_option("--N", N, "iteration count (>= 1)")->required();
    cmd->add_option("--mu", mu, "strong convexity modulus (mu < L; negative allowed)");
    cmd->add_option("--L", L, "smoothness constant (> 0)");
    if (with_gamma) cmd->add_option("--gamma", gamma, "stepsize, 0 < gamma*L < 2")->required();
    cmd->add_option("--format", format, "output format: human, json, csv");
    cmd->add_option("--out", out_path, "output path (default stdout)");
    cmd->add_option("--tol", tol, "solver tolerance (relative)");
  };

  auto* c_rate = app.add_subcommand("rate", "worst-case rate for one instance");
  add_instance_flags(c_rate, true);

  auto* c_opt = app.add_subcommand("optimal-step", "optimal stepsize gamma*(N, mu, L)");
  add_instance_flags(c_opt, false);

  int trials = 100, dim = 3;
  std::uint64_t seed = 42;
  auto* c_cert = app.add_subcommand("certify", "build and verify a dual certificate");
  add_instance_flags(c_cert, true);
  c_cert->add_option("--trials", trials, "oracle trials");
  c_cert->add_option("--dim", dim, "oracle vector dimension");
  c_cert->add_option("--seed", seed, "oracle RNG seed");

  double gamma_min = 0.1, gamma_max = 1.9;
  int steps = 19;
  auto* c_sweep = app.add_subcommand("sweep", "rate bounds over a gamma grid (CSV)");
  add_instance_flags(c_sweep, false);
  c_sweep->add_option("--gamma-min", gamma_min, "grid start")->required();
  c_sweep->add_option("--gamma-max", gamma_max, "grid end")->required();
  c_sweep->add_option("--steps", steps, "number of grid points")->required();

  int sim_trials = 1000;
  std::string family = "quadratic";
  auto* c_sim = app.add_subcommand("simulate", "empirical tightness probe via GD runs");
  add_instance_flags(c_sim, true);
  c_sim->add_option("--family", family, "quadratic, huber, or piecewise_quadratic");
  c_sim->add_option("--trials", sim_trials, "number of random instances");
  c_sim->add_option("--seed", seed, "RNG seed");

  auto* c_oracle = app.add_subcommand("oracle", "randomized quadratic-identity check");
  add_instance_flags(c_oracle, true);
  c_oracle->add_option("--trials", trials, "oracle trials");
  c_oracle->add_option("--dim", dim, "oracle vector dimension");
  c_oracle->add_option("--seed", seed, "RNG seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n" << app.help();
    return 2;
  }

  OutputTarget target{out_path};
  try {
    if (c_rate->parsed()) {
      ProblemInstance inst{N, mu, L, gamma};
      inst.ensure_valid();
      const RateBound rb = rate_bound(inst);
      std::string body;
      if (format == "csv")
        body = std::string(kCsvHeader) + csv_row(gamma, rb);
      else if (format == "json")
        body = rate_json(inst, rb);
      else if (format == "human")
        body = rate_human(inst, rb);
      else
        throw std::invalid_argument("unsupported format: " + format);
      return target.write(body) ? 0 : 1;
    }

    if (c_opt->parsed()) {
      const double gs = optimal_stepsize(N, mu, L, SolverOptions{tol, 200});
      std::string body;
      if (format == "json") {
        body = "{\n  \"N\": " + std::to_string(N) + ",\n  \"mu\": " + fmt_json(mu) +
               ",\n  \"L\": " + fmt_json(L) + ",\n  \"gamma_star\": " + fmt_json(gs) +
               ",\n  \"gamma_star_normalized\": " + fmt_json(gs * L) + "\n}\n";
      } else if (format == "csv") {
        body = "gamma_star,gamma_star_normalized\n" + fmt17(gs) + "," + fmt17(gs * L) + "\n";
      } else if (format == "human") {
        body = "gamma_star            = " + fmt_human(gs) + "\n" +
               "gamma_star_normalized = " + fmt_human(gs * L) + "\n";
      } else {
        throw std::invalid_argument("unsupported format: " + format);
      }
      return target.write(body) ? 0 : 1;
    }

    if (c_cert->parsed()) {
      ProblemInstance inst{N, mu, L, gamma};
      inst.ensure_valid();
      CertifyConfig cfg;
      cfg.solver.tol = tol;
      cfg.oracle_trials = trials;
      cfg.oracle_dim = dim;
      cfg.seed = seed;
      const VerificationReport rep = certify(inst, cfg);
      std::string body;
      if (format == "json")
        body = report_to_json(rep);
      else if (format == "human")
        body = certify_human(rep);
      else
        throw std::invalid_argument("unsupported format for certify: " + format);
      if (!target.write(body)) return 1;
      return rep.certified ? 0 : 1;
    }

    if (c_sweep->parsed()) {
      if (steps < 0) throw std::invalid_argument("steps must be >= 0");
      if (format != "csv" && format != "human")
        throw std::invalid_argument("sweep emits CSV; use --format csv");
      std::string body = kCsvHeader;
      for (int i = 0; i < steps; ++i) {
        const double g = steps == 1 ? gamma_min
                                    : gamma_min + (gamma_max - gamma_min) * i / (steps - 1);
        ProblemInstance inst{N, mu, L, g};
        inst.ensure_valid();
        body += csv_row(g, rate_bound(inst));
      }
      return target.write(body) ? 0 : 1;
    }

    if (c_sim->parsed()) {
      ProblemInstance inst{N, mu, L, gamma};
      inst.ensure_valid();
      const ProbeResult res = empirical_probe(inst, function_family_from_name(family), sim_trials, seed);
      const bool ok = res.quotient <= 1.0 + 1e-9;
      std::string body;
      if (format == "json") {
        body = "{\n  \"family\": \"" + family + "\",\n  \"trials\": " + std::to_string(sim_trials) +
               ",\n  \"trials_used\": " + std::to_string(res.trials_used) +
               ",\n  \"seed\": " + std::to_string(seed) +
               ",\n  \"max_ratio\": " + fmt_json(res.max_ratio) +
               ",\n  \"bound_value\": " + fmt_json(res.bound_value) +
               ",\n  \"quotient\": " + fmt_json(res.quotient) +
               ",\n  \"bound_valid\": " + (ok ? "true" : "false") + "\n}\n";
      } else if (format == "human") {
        body = "max observed ratio = " + fmt_human(res.max_ratio) + "\n" +
               "bound value        = " + fmt_human(res.bound_value) + "\n" +
               "quotient           = " + fmt_human(res.quotient) + "\n" +
               std::string("bound valid        = ") + (ok ? "true" : "false") + "\n";
      } else {
        throw std::invalid_argument("unsupported format for simulate: " + format);
      }
      if (!target.write(body)) return 1;
      return ok ? 0 : 1;
    }

    if (c_oracle->parsed()) {
      ProblemInstance inst{N, mu, L, gamma};
      inst.ensure_valid();
      const SurrogateClass sc = surrogate_class(inst, SolverOptions{tol, 200});
      const double rho_eff = 1.0 - gamma * sc.L_eff;
      const double eta_eff = 1.0 - gamma * sc.mu_eff;
      const CertificateBundle cert = build_certificate(N, rho_eff, eta_eff, sc.L_eff);
      const PepMatrixSet pep = build_pep_set(cert, sc.mu_eff / sc.L_eff);
      ProblemInstance inst_eff = inst;
      inst_eff.mu = sc.mu_eff;
      inst_eff.L = sc.L_eff;
      const OracleResult res =
          oracle_quadratic_identity(inst_eff, cert, pep.S_sym, trials, dim, seed);
      const bool ok = res.max_relative_error <= 1e-8;
      std::string body;
      if (format == "json") {
        body = "{\n  \"trials\": " + std::to_string(res.trials) +
               ",\n  \"dim\": " + std::to_string(dim) + ",\n  \"seed\": " + std::to_string(seed) +
               ",\n  \"rng\": \"" + kRngAlgorithm + "\"" +
               ",\n  \"max_relative_error\": " + fmt_json(res.max_relative_error) +
               ",\n  \"pass\": " + (ok ? "true" : "false") + "\n}\n";
      } else if (format == "human") {
        body = "oracle trials      = " + std::to_string(res.trials) + "\n" +
               "max relative error = " + fmt_human(res.max_relative_error) + "\n" +
               std::string("pass               = ") + (ok ? "true" : "false") + "\n";
      } else {
        throw std::invalid_argument("unsupported format for oracle: " + format);
      }
      if (!target.write(body)) return 1;
      return ok ? 0 : 1;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
