#include <doctest.h>

#include <cmath>
#include <vector>

#include "gdrate/verifier.hpp"
#include "support/oracles.hpp"

using namespace gdrate;

namespace {

CertificateBundle optimal_cert(int N, double mu, double L = 1.0) {
  const double g = optimal_stepsize(N, mu, L);
  return build_certificate(N, 1.0 - g * L, 1.0 - g * mu, L);
}

}  // namespace

TEST_CASE("balance residuals") {
  SUBCASE("worked N = 1 case") {
    CertificateBundle cert;
    cert.N = 1;
    cert.lambda[{1, 0}] = 1.0;
    cert.lambda[{0, 1}] = 2.0;
    const auto res = check_balance(cert);
    REQUIRE(res.size() == 2);
    CHECK(res[0] == 0.0);
    CHECK(res[1] == 0.0);
  }
  SUBCASE("all-zero multipliers leave the boundary mismatch") {
    CertificateBundle cert;
    cert.N = 3;
    for (const auto& p : interpolation_index_set(3))
      if (p.second != kStarIndex) cert.lambda[p] = 0.0;
    const auto res = check_balance(cert);
    CHECK(res[0] == 1.0);
    CHECK(res[1] == 0.0);
    CHECK(res[2] == 0.0);
    CHECK(res[3] == -1.0);
  }
  SUBCASE("builder certificates balance exactly in rational mode") {
    // the identity is algebraic in (rho, eta): it holds off the optimal
    // locus too, for any dyadic pair
    for (int N : {1, 2, 3, 7, 10}) {
      const auto cert =
          build_certificate<Rational>(N, Rational(-0.725), Rational(1.3109375), Rational(1));
      for (const auto& r : check_balance(cert)) CHECK(r == Rational(0));
    }
  }
}

TEST_CASE("check_psd") {
  SUBCASE("zero matrix passes") {
    Matrix<double> z(3, 3);
    const auto r = check_psd(z);
    CHECK(r.min_eigenvalue == doctest::Approx(0.0));
    CHECK(r.pass);
  }
  SUBCASE("indefinite diagonal fails") {
    Matrix<double> m(2, 2);
    m(0, 0) = 1.0;
    m(1, 1) = -1.0;
    const auto r = check_psd(m);
    CHECK(r.min_eigenvalue == doctest::Approx(-1.0));
    CHECK_FALSE(r.pass);
  }
  SUBCASE("worked N = 1 PEP matrix is PSD (zero)") {
    const auto pep = build_pep_set(optimal_cert(1, 0.0), 0.0);
    const auto r = check_psd(pep.S_sym);
    CHECK(std::fabs(r.min_eigenvalue) <= 1e-14);
    CHECK(r.pass);
  }
}

TEST_CASE("check_psd agrees with the principal-minor oracle on small cases") {
  std::vector<Matrix<double>> suite;
  for (double mu : {-0.5, 0.0, 0.3, 0.8}) {
    suite.push_back(build_pep_set(optimal_cert(2, mu), mu).S_sym);  // 3x3
    suite.push_back(build_pep_set(optimal_cert(3, mu), mu).S_sym);  // 4x4
  }
  // a few deliberately indefinite ones
  Matrix<double> bad(3, 3);
  bad(0, 0) = 1.0;
  bad(1, 1) = -0.3;
  bad(2, 2) = 0.2;
  suite.push_back(bad);
  Matrix<double> bad2 = suite.front();
  bad2(0, 0) -= 1.0;
  suite.push_back(bad2);
  for (const auto& s : suite)
    CHECK(check_psd(s, 1e-8).pass == oracles::psd_by_principal_minors(s, 1e-8));
}

TEST_CASE("closed-form decomposition") {
  SUBCASE("vanishes at the N = 1 optimal pair") {
    const auto d = closed_form_pep_matrix(1, -0.5, 1.0);
    REQUIRE(d.delta.size() == 1);
    CHECK(d.delta[0] == doctest::Approx(0.0));
    CHECK(d.reconstruct().max_abs() <= 1e-15);
  }
  SUBCASE("last vector is the final basis vector") {
    for (int N : {1, 3, 6}) {
      const auto d = closed_form_pep_matrix(N, -0.4, 1.2);
      const auto& vN = d.vectors.back();
      for (int j = 0; j < N; ++j) CHECK(vN[j] == 0.0);
      CHECK(vN[N] == 1.0);
    }
  }
  SUBCASE("direct values off the optimal locus") {
    const auto d = closed_form_pep_matrix(2, -0.5, 1.0);
    CHECK(d.delta[0] == doctest::Approx(0.0));   // T_1 = 0 here
    CHECK(d.delta[1] == doctest::Approx(-6.0));  // T_2 = 4 - 10; F_0 kills the correction
  }
  SUBCASE("reconstruction matches the assembled matrix at optimal pairs") {
    for (int N : {1, 2, 3, 5, 8}) {
      for (double mu : {-0.5, -0.1, 0.0, 0.1, 0.5}) {
        const double g = optimal_stepsize(N, mu, 1.0);
        const double rho = 1.0 - g, eta = 1.0 - g * mu;
        const auto pep = build_pep_set(build_certificate(N, rho, eta, 1.0), mu);
        const auto recon = closed_form_pep_matrix(N, rho, eta).reconstruct();
        const double scale = std::max(1.0, pep.S_sym.max_abs());
        CHECK((pep.S_sym - recon).max_abs() <= 1e-9 * scale);
      }
    }
  }
}

TEST_CASE("high-precision decomposition audit") {
  for (int N : {1, 2, 5}) {
    for (double mu : {-0.5, 0.0, 0.9}) {
      const auto audit = audit_decomposition_at_optimal(N, mu, 1.0);
      CHECK(audit.min_delta >= -1e-12);
      CHECK(audit.abs_delta_final <= 1e-10);
      CHECK(audit.residual_relative <= 1e-9);
    }
  }
}

TEST_CASE("quadratic-identity oracle") {
  SUBCASE("N = 1 optimal certificate: both sides vanish") {
    const auto cert = optimal_cert(1, 0.0);
    const auto pep = build_pep_set(cert, 0.0);
    const ProblemInstance inst{1, 0.0, 1.0, 1.5};
    const auto r = oracle_quadratic_identity(inst, cert, pep.S_sym, 100, 3, 123);
    CHECK(r.trials == 100);
    CHECK(r.max_relative_error <= 1e-10);
  }
  SUBCASE("holds across sizes and classes") {
    for (int N : {2, 3, 5}) {
      for (double mu : {-0.3, 0.0, 0.6}) {
        const double g = optimal_stepsize(N, mu, 1.0);
        const auto cert = build_certificate(N, 1.0 - g, 1.0 - g * mu, 1.0);
        const auto pep = build_pep_set(cert, mu);
        const ProblemInstance inst{N, mu, 1.0, g};
        const auto r = oracle_quadratic_identity(inst, cert, pep.S_sym, 100, 3, 7);
        CHECK(r.max_relative_error <= 1e-10);
      }
    }
  }
  SUBCASE("zero gradients reduce to the balanced linear terms") {
    // with g = 0 all points coincide, so S_direct collapses to the f+
    // cancellation; a balanced certificate gives exactly zero
    const auto cert = optimal_cert(2, 0.0);
    double node_sum[3] = {0, 0, 0};
    for (const auto& [ij, lam] : cert.lambda) {
      node_sum[ij.second] += lam;
      node_sum[ij.first] -= lam;
    }
    CHECK(node_sum[0] == doctest::Approx(-1.0));  // cancels the head f+_0
    CHECK(node_sum[2] == doctest::Approx(1.0));   // cancels the head -f+_N
  }
  SUBCASE("rejects mismatched shapes") {
    const auto cert = optimal_cert(2, 0.0);
    Matrix<double> wrong(2, 2);
    const ProblemInstance inst{2, 0.0, 1.0, 1.6};
    CHECK_THROWS_AS(oracle_quadratic_identity(inst, cert, wrong, 10, 3, 1),
                    std::invalid_argument);
  }
}

TEST_CASE("single-multiplier mutations are detected") {
  for (int N : {2, 3}) {
    const double mu = 0.1;
    const double g = optimal_stepsize(N, mu, 1.0);
    const double rho = 1.0 - g, eta = 1.0 - g * mu;
    const auto cert = build_certificate(N, rho, eta, 1.0);
    const ProblemInstance inst{N, mu, 1.0, g};
    for (const auto& [key, value] : cert.lambda) {
      for (double factor : {1.1, 0.9}) {
        CertificateBundle mutated = cert;
        mutated.lambda[key] = value * factor;
        double max_residual = 0.0;
        for (double r : check_balance(mutated)) max_residual = std::max(max_residual, std::fabs(r));
        const auto pep = build_pep_set(mutated, mu);
        const auto oracle = oracle_quadratic_identity(inst, mutated, pep.S_sym, 40, 3, 99);
        const bool detected = max_residual > 1e-10 || oracle.max_relative_error > 1e-8;
        CHECK(detected);
      }
    }
  }
}

TEST_CASE("proposition audits") {
  SUBCASE("closed pair, N = 1") {
    const auto a = check_propositions(1, -0.8, 4.0, 256);
    CHECK(a.prop1.pass);
    CHECK(std::fabs(a.t_final) <= 1e-12);
    CHECK(a.prop2.pass);
    CHECK(a.psi_endpoint0_error <= 1e-12);
    CHECK(a.psi_endpointN_error <= 1e-12);
    CHECK(a.prop3.pass);  // vacuous
    CHECK(std::isinf(a.prop3.worst_margin));
    CHECK(a.prop4.pass);  // vacuous at N = 1
    CHECK(a.all_pass());
  }
  SUBCASE("optimal pairs across the grid") {
    for (int N : {1, 2, 3, 5, 10}) {
      for (double mu : {-0.5, 0.0, 0.5, 0.9}) {
        const double g = optimal_stepsize(N, mu, 1.0);
        const auto a = check_propositions(N, 1.0 - g, 1.0 - g * mu, 256);
        CHECK(a.prop1.pass);
        CHECK(a.prop2.pass);
        CHECK(a.prop3.pass);
        CHECK(a.prop4.pass);
        CHECK(a.prop3.worst_margin >= -1e-10);
        CHECK(a.prop4.worst_margin >= -1e-10);
        CHECK(a.psi_chord_margin >= -1e-8);
      }
    }
  }
  SUBCASE("out-of-range parameters fail as audits, not exceptions") {
    const auto a = check_propositions(2, 0.5, 1.5, 64);  // rho > 0
    CHECK_FALSE(a.prop1.pass);
    CHECK_FALSE(a.all_pass());
  }
}

TEST_CASE("certify end to end") {
  SUBCASE("worked N = 1 case") {
    const auto rep = certify({1, 0.0, 1.0, 1.5});
    CHECK(rep.certified);
    CHECK(rep.failed_stage.empty());
    CHECK(rep.bound_value == doctest::Approx(0.25));
    CHECK(rep.bound_form == BoundForm::max_form);
    CHECK(rep.tau == doctest::Approx(0.25));
    for (double r : rep.balance_residuals) CHECK(r == 0.0);
    CHECK(rep.min_lambda == doctest::Approx(1.0));
    CHECK(std::fabs(rep.min_eigenvalue) <= 1e-12);
    CHECK(rep.surrogate.regime == StepsizeRegime::at_optimal);
  }
  SUBCASE("surrogate certification at gamma = 1.8") {
    const auto rep = certify({1, 0.0, 1.0, 1.8});
    CHECK(rep.certified);
    CHECK(rep.surrogate.regime == StepsizeRegime::above_optimal);
    CHECK(rep.surrogate.mu_eff == doctest::Approx(-5.0 / 3.0).epsilon(1e-10));
    CHECK(rep.bound_value == doctest::Approx(0.64).epsilon(1e-12));  // rho^2 dominates
  }
  SUBCASE("negative mu certifies the min form only") {
    const double g = optimal_stepsize(3, -0.2, 1.0);
    const auto rep = certify({3, -0.2, 1.0, g});
    CHECK(rep.certified);
    CHECK(rep.bound_form == BoundForm::min_form);
    const RateBound rb = rate_bound({3, -0.2, 1.0, g});
    CHECK(rep.bound_value == doctest::Approx(rb.min_form));
  }
  SUBCASE("reports are serializable and stable") {
    const auto rep = certify({2, 0.1, 1.0, 1.3});
    const std::string a = report_to_json(rep);
    const std::string b = report_to_json(certify({2, 0.1, 1.0, 1.3}));
    CHECK(a == b);
    CHECK(a.find("\"certified\": true") != std::string::npos);
    CHECK(a.find("\"bound_form\": \"max_form_eq3\"") != std::string::npos);
  }
}
