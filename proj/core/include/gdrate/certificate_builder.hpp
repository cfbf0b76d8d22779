#pragma once

// Dual-certificate construction for constant-stepsize GD: the interpolation
// index set, the alpha/beta weight sequences, and the multiplier bundle
// (tau, {lambda_ij}). Construction is total on its numeric domain; it never
// checks feasibility — the verifier does.

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gdrate/numeric.hpp"
#include "gdrate/scalar_kernel.hpp"

namespace gdrate {

using IndexPair = std::pair<int, int>;
inline constexpr int kStarIndex = -1;  // the (N, *) pair; handled at bound composition

/// {(k,k+1), (k+1,k), (N,k)}_{0<=k<=N-1} plus (N,*), duplicates removed,
/// in deterministic (row-major) order with the star pair last.
/// Size is 3N including the star pair.
std::vector<IndexPair> interpolation_index_set(int N);

template <class T>
struct AlphaBetaT {
  std::vector<T> alpha;  // alpha_1..alpha_{N-1}; empty for N = 1
  std::vector<T> beta;   // beta_1..beta_{N-1}
};
using AlphaBeta = AlphaBetaT<double>;

/// The multiplier bundle. lambda is keyed by the finite part of the index
/// set in row-major order; tau carries the units of L.
template <class T>
struct CertificateBundleT {
  T tau{};
  std::map<IndexPair, T> lambda;
  int N = 0;
  T rho{}, eta{}, L{};

  const T& at(int i, int j) const {
    auto it = lambda.find({i, j});
    if (it == lambda.end()) throw std::out_of_range("certificate: missing multiplier");
    return it->second;
  }
  /// Zero for pairs outside the stored support.
  T value_or_zero(int i, int j) const {
    auto it = lambda.find({i, j});
    return it == lambda.end() ? T(0) : it->second;
  }
  T min_lambda() const {
    T m = lambda.begin()->second;
    for (const auto& [ij, v] : lambda)
      if (v < m) m = v;
    return m;
  }
};
using CertificateBundle = CertificateBundleT<double>;

namespace detail {
template <class T>
T t_over_f(const T& rho, const T& eta, int k, int j) {
  // T_k / F_j(eta) with the k <= 0 empty-sum convention.
  if (k <= 0) return T(0);
  T f = eval_F(eta, j);
  if (f == T(0)) throw std::domain_error("build_alpha_beta: F_j(eta) = 0");
  return eval_T(rho, eta, k) / f;
}
}  // namespace detail

/// alpha_k and beta_k for k = 1..N-1 (three-case alpha; see the bundle
/// builder for how they weight the multipliers).
template <class T>
AlphaBetaT<T> build_alpha_beta(int N, const T& rho, const T& eta) {
  if (N < 1) throw std::invalid_argument("build_alpha_beta: N must be >= 1");
  if (rho == T(0) || eta == T(0)) throw std::domain_error("build_alpha_beta: rho, eta must be nonzero");
  if (rho == eta) throw std::domain_error("build_alpha_beta: rho = eta");
  AlphaBetaT<T> out;
  if (N == 1) return out;
  out.alpha.reserve(N - 1);
  out.beta.reserve(N - 1);
  for (int k = 1; k <= N - 1; ++k) {
    T a;
    if (k == 1) {
      a = detail::t_over_f(rho, eta, 1, N - 1);
    } else if (k == 2) {
      a = -(T(1) / rho) * detail::t_over_f(rho, eta, 1, N - 1) +
          (detail::t_over_f(rho, eta, 2, N - 2) - detail::t_over_f(rho, eta, 1, N - 1));
    } else {
      a = -(T(1) / rho) *
              (detail::t_over_f(rho, eta, k - 1, N - k + 1) - detail::t_over_f(rho, eta, k - 2, N - k + 2)) +
          (detail::t_over_f(rho, eta, k, N - k) - detail::t_over_f(rho, eta, k - 1, N - k + 1));
    }
    out.alpha.push_back(a);
    out.beta.push_back((eta - rho) / eta * eval_E(rho, k) - detail::t_over_f(rho, eta, k, N - k));
  }
  return out;
}

/// The full multiplier set at (rho, eta, L):
///   tau          = L rho^2N
///   lambda_{k,k-1} = -eta rho/(eta-rho) * beta_k          k = 1..N-1
///   lambda_{N,k-1} = -eta rho/(eta-rho) * alpha_k         k = 1..N-1
///   lambda_{k-1,k} = 1 - eta rho/(eta-rho) (sum_{j<=k} alpha_j + beta_k)
///   lambda_{N,N-1} per its displayed form (T_k = 0 for k <= 0, so it is
///                  -rho E_N(rho) at N = 1)
///   lambda_{N-1,N} = lambda_{N,N-1} + 1 - eta rho/(eta-rho) sum alpha_j
/// Feasibility is expected only when (rho, eta) is near the T_N = 0 locus.
template <class T>
CertificateBundleT<T> build_certificate(int N, const T& rho, const T& eta, const T& L) {
  if (N < 1) throw std::invalid_argument("build_certificate: N must be >= 1");
  if (rho == eta) throw std::domain_error("build_certificate: rho = eta");
  if (rho == T(0) || eta == T(0)) throw std::domain_error("build_certificate: rho, eta must be nonzero");

  CertificateBundleT<T> cert;
  cert.N = N;
  cert.rho = rho;
  cert.eta = eta;
  cert.L = L;
  cert.tau = L * int_pow(rho, 2L * N);

  const T s = eta * rho / (eta - rho);
  const AlphaBetaT<T> ab = build_alpha_beta(N, rho, eta);
  T alpha_sum(0);
  for (int k = 1; k <= N - 1; ++k) {
    const T& a = ab.alpha[k - 1];
    const T& b = ab.beta[k - 1];
    cert.lambda[{k, k - 1}] = -s * b;
    cert.lambda[{N, k - 1}] = -s * a;
    alpha_sum += a;
    cert.lambda[{k - 1, k}] = T(1) - s * (alpha_sum + b);
  }
  const T lam_NN1 =
      -rho * eval_E(rho, N) -
      s * (-detail::t_over_f(rho, eta, N - 1, 1) -
           (T(1) / rho) * (detail::t_over_f(rho, eta, N - 1, 1) - detail::t_over_f(rho, eta, N - 2, 2)));
  cert.lambda[{N, N - 1}] = lam_NN1;
  cert.lambda[{N - 1, N}] = lam_NN1 + T(1) - s * alpha_sum;
  return cert;
}

}  // namespace gdrate
