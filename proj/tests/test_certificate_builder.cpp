#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "gdrate/certificate_builder.hpp"
#include "gdrate/stepsize_solver.hpp"

using namespace gdrate;

TEST_CASE("interpolation index set") {
  SUBCASE("N = 1") {
    const auto set = interpolation_index_set(1);
    REQUIRE(set.size() == 3);
    CHECK(set[0] == IndexPair{0, 1});
    CHECK(set[1] == IndexPair{1, 0});
    CHECK(set[2] == IndexPair{1, kStarIndex});
  }
  SUBCASE("N = 2") {
    const auto set = interpolation_index_set(2);
    REQUIRE(set.size() == 6);
    const std::vector<IndexPair> expected = {{0, 1}, {1, 0}, {1, 2}, {2, 0}, {2, 1}, {2, kStarIndex}};
    for (const auto& p : expected) CHECK(std::count(set.begin(), set.end(), p) == 1);
  }
  SUBCASE("size is 3N including the star pair") {
    for (int N = 1; N <= 12; ++N) CHECK(interpolation_index_set(N).size() == 3u * N);
  }
}

TEST_CASE("alpha/beta sequences") {
  SUBCASE("empty for N = 1") {
    const auto ab = build_alpha_beta(1, -0.5, 1.0);
    CHECK(ab.alpha.empty());
    CHECK(ab.beta.empty());
  }
  SUBCASE("N = 2 direct values") {
    const auto ab = build_alpha_beta(2, -0.5, 1.0);
    REQUIRE(ab.alpha.size() == 1);
    CHECK(ab.alpha[0] == doctest::Approx(0.0));  // T_1(-1/2, 1) = 0
    CHECK(ab.beta[0] == doctest::Approx(3.0));   // 1.5 * E_1(-1/2)
  }
  SUBCASE("rejects eta on a zero of F") {
    CHECK_THROWS_AS(build_alpha_beta(3, -0.5, -1.0), std::domain_error);  // F_1(-1) + eta^2 = 0 case
    CHECK_THROWS_AS(build_alpha_beta(2, -0.5, -0.5), std::domain_error);  // rho = eta
  }
}

TEST_CASE("N = 1 certificates in closed form") {
  SUBCASE("optimal pair for mu = 0") {
    const auto cert = build_certificate(1, -0.5, 1.0, 1.0);
    CHECK(cert.tau == doctest::Approx(0.25));
    CHECK(cert.at(1, 0) == doctest::Approx(1.0));
    CHECK(cert.at(0, 1) == doctest::Approx(2.0));
    CHECK(cert.lambda.size() == 2);
  }
  SUBCASE("surrogate pair at gamma = 1.8") {
    const auto cert = build_certificate(1, -0.8, 4.0, 1.0);
    CHECK(cert.tau == doctest::Approx(0.64));
    CHECK(cert.at(1, 0) == doctest::Approx(0.25));  // -(1 + 1/rho)
    CHECK(cert.at(0, 1) == doctest::Approx(1.25));
  }
  SUBCASE("exact in rational mode") {
    const auto cert = build_certificate<Rational>(1, Rational(-1, 2), Rational(1), Rational(1));
    CHECK(cert.tau == Rational(1, 4));
    CHECK(cert.at(1, 0) == Rational(1));
    CHECK(cert.at(0, 1) == Rational(2));
  }
}

TEST_CASE("last-pair identity lambda_{N-1,N} - lambda_{N,N-1}") {
  for (int N : {2, 3, 5, 8}) {
    for (double mu : {-0.4, 0.0, 0.6}) {
      const double g = optimal_stepsize(N, mu, 1.0);
      const double rho = 1.0 - g, eta = 1.0 - g * mu;
      const auto cert = build_certificate(N, rho, eta, 1.0);
      const auto ab = build_alpha_beta(N, rho, eta);
      double alpha_sum = 0.0;
      for (double a : ab.alpha) alpha_sum += a;
      const double expected = 1.0 - eta * rho / (eta - rho) * alpha_sum;
      CHECK(cert.at(N - 1, N) - cert.at(N, N - 1) ==
            doctest::Approx(expected).epsilon(1e-10));
    }
  }
}

TEST_CASE("alternate route for lambda_{N,N-1}") {
  // same multiplier rewritten through beta_{N-1}-style terms; two algebraic
  // routes must agree
  for (int N : {1, 2, 3, 6}) {
    for (double mu : {-0.3, 0.0, 0.5}) {
      const double g = optimal_stepsize(N, mu, 1.0);
      const double rho = 1.0 - g, eta = 1.0 - g * mu;
      const auto cert = build_certificate(N, rho, eta, 1.0);
      auto t_over_f = [&](int k, int j) {
        return k <= 0 ? 0.0 : eval_T(rho, eta, k) / eval_F(eta, j);
      };
      const double e_prev = N >= 2 ? eval_E(rho, N - 1) : 0.0;
      const double rewrite =
          -rho * eta / (eta - rho) * ((eta - rho) / eta * e_prev - t_over_f(N - 1, 1)) +
          eta / (eta - rho) * (t_over_f(N - 1, 1) - t_over_f(N - 2, 2)) -
          rho * (int_pow(rho, -2L * N + 1) + int_pow(rho, -2L * N));
      CHECK(cert.at(N, N - 1) == doctest::Approx(rewrite).epsilon(1e-10));
    }
  }
}

TEST_CASE("certificates at optimal pairs are non-negative over the grid") {
  for (int N = 1; N <= 10; ++N) {
    for (double kappa : {-0.5, -0.1, 0.0, 0.1, 0.5, 0.9}) {
      const double g = optimal_stepsize(N, kappa, 1.0);
      const auto cert = build_certificate(N, 1.0 - g, 1.0 - g * kappa, 1.0);
      CHECK(cert.tau > 0.0);
      CHECK(to_double(cert.min_lambda()) >= -1e-12);
      // support is exactly the finite part of the index set
      auto set = interpolation_index_set(N);
      set.pop_back();  // star pair is composed at bound time, never stored
      REQUIRE(cert.lambda.size() == set.size());
      for (const auto& p : set) CHECK(cert.lambda.count(p) == 1);
    }
  }
}

TEST_CASE("multiplier signs follow alpha/beta signs") {
  // -eta*rho/(eta-rho) > 0 for rho in (-1,0), eta > 0, so the subdiagonal
  // and last-row multipliers inherit the sign of beta_k / alpha_k.
  for (int N : {3, 5}) {
    for (double mu : {-0.2, 0.4}) {
      const double g = optimal_stepsize(N, mu, 1.0);
      const double rho = 1.0 - g, eta = 1.0 - g * mu;
      const double scale = -eta * rho / (eta - rho);
      REQUIRE(scale > 0.0);
      const auto ab = build_alpha_beta(N, rho, eta);
      const auto cert = build_certificate(N, rho, eta, 1.0);
      for (int k = 1; k <= N - 1; ++k) {
        CHECK((cert.at(k, k - 1) >= 0.0) == (ab.beta[k - 1] >= 0.0));
        CHECK((cert.at(N, k - 1) >= 0.0) == (ab.alpha[k - 1] >= 0.0));
      }
    }
  }
}

TEST_CASE("builder input validation") {
  CHECK_THROWS_AS(build_certificate(0, -0.5, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(build_certificate(2, 0.0, 1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(build_certificate(2, 0.7, 0.7, 1.0), std::domain_error);
  CHECK_THROWS_AS(CertificateBundle{}.at(0, 1), std::out_of_range);
}
