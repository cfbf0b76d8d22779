#pragma once

// Assembly of the quadratic-form machinery behind a certificate: the
// reparametrized step matrix Htilde and its inverse, the bilinear-identity
// matrices A and B, and the PEP matrix
//
//   S = A^T Hinv + kappa/(2(1-kappa)) B + h0 h0^T / 2 - L/(2 tau) hN hN^T,
//
// where h0 and hN are the first and last rows of Hinv. The quadratic form
// lives on the difference basis x = (x0+ - x0, x1+ - x0+, ..., xN+ - x_{N-1}+)
// with g = -L Hinv^-1... i.e. x = -(1/L) Htilde g.
//
// h0/hN are taken from Hinv (not Htilde): with g = -L Hinv x the boundary
// gradient norms are ||g_0||^2 = L^2 (h0.x)^2 and ||g_N||^2 = L^2 (hN.x)^2,
// which is what the tau term needs; row 0 is the same either way. This
// choice is cross-checked against the randomized quadratic-identity oracle.

#include <stdexcept>
#include <vector>

#include "gdrate/certificate_builder.hpp"
#include "gdrate/matrix.hpp"
#include "gdrate/numeric.hpp"

namespace gdrate {

/// Lower-triangular N x N step schedule, normalized by L. GD is (gamma L) I.
template <class T>
struct HScheduleT {
  Matrix<T> entries;

  explicit HScheduleT(int N) : entries(N, N) {}
  static HScheduleT gd(int N, const T& gamma_L) {
    HScheduleT h(N);
    for (int i = 0; i < N; ++i) h.entries(i, i) = gamma_L;
    return h;
  }
  int steps() const { return static_cast<int>(entries.rows()); }
  void ensure_lower_triangular() const {
    for (std::size_t i = 0; i < entries.rows(); ++i)
      for (std::size_t j = i + 1; j < entries.cols(); ++j)
        if (!(entries(i, j) == T(0)))
          throw std::invalid_argument("HSchedule: entries above the diagonal must be zero");
  }
};
using HSchedule = HScheduleT<double>;

template <class T>
struct PepMatrixSetT {
  Matrix<T> htilde, htilde_inv;  // (N+1) x (N+1), unit lower triangular
  Matrix<T> A, B;
  std::vector<T> h0, hN;  // first/last rows of htilde_inv
  Matrix<T> S, S_sym;
};
using PepMatrixSet = PepMatrixSetT<double>;

/// Htilde from an H schedule: row 0 is e0; row k >= 1 carries
/// H_{k,1..k-1}, H_{k,k} - 1, then the unit diagonal. The inverse comes
/// from forward substitution (exact for exact scalars).
template <class T>
std::pair<Matrix<T>, Matrix<T>> build_htilde(const HScheduleT<T>& H) {
  H.ensure_lower_triangular();
  const int N = H.steps();
  const int n = N + 1;
  Matrix<T> ht(n, n);
  ht(0, 0) = T(1);
  for (int r = 1; r <= N; ++r) {
    for (int c = 0; c <= r - 2; ++c) ht(r, c) = H.entries(r - 1, c);
    ht(r, r - 1) = H.entries(r - 1, r - 1) - T(1);
    ht(r, r) = T(1);
  }
  // unit lower triangular solve, column by column
  Matrix<T> inv(n, n);
  for (int col = 0; col < n; ++col)
    for (int i = 0; i < n; ++i) {
      T v = i == col ? T(1) : T(0);
      for (int m = 0; m < i; ++m) v -= ht(i, m) * inv(m, col);
      inv(i, col) = v;
    }
  return {std::move(ht), std::move(inv)};
}

/// A and B from a certificate over the interpolation index set:
///   A[k][k]   = lambda_{k-1,k}                    (k = 1..N)
///   A[k][k+1] = -lambda_{k+1,k} - lambda_{N,k}    (k <= N-2), -lambda_{N,N-1} at k = N-1
///   A[k][j]   = -lambda_{N,k}                     (j >= k+2)
///   B[k][k]   = lambda_{k-1,k} + lambda_{k,k-1} + e_k (k <= N-1),
///               lambda_{N-1,N} + e_N at k = N
///   B[i][j]   = e_min(i,j) off-diagonal (i,j >= 1), e_k = sum_{j<k} lambda_{N,j}
/// with zero first row/column of B and zero first column of A.
template <class T>
std::pair<Matrix<T>, Matrix<T>> build_ab(const CertificateBundleT<T>& cert) {
  const int N = cert.N;
  if (N < 1) throw std::invalid_argument("build_ab: malformed certificate");
  const int n = N + 1;
  auto lam = [&cert](int i, int j) -> const T& { return cert.at(i, j); };

  Matrix<T> A(n, n), B(n, n);
  for (int k = 1; k <= N; ++k) A(k, k) = lam(k - 1, k);
  for (int k = 0; k <= N - 1; ++k)
    A(k, k + 1) = k <= N - 2 ? T(-lam(k + 1, k) - lam(N, k)) : T(-lam(N, N - 1));
  for (int k = 0; k <= N - 2; ++k) {
    const T c = -lam(N, k);
    for (int j = k + 2; j <= N; ++j) A(k, j) = c;
  }

  std::vector<T> e(n, T(0));
  for (int k = 1; k <= N; ++k) e[k] = e[k - 1] + lam(N, k - 1);
  for (int k = 1; k <= N; ++k)
    B(k, k) = k <= N - 1 ? T(lam(k - 1, k) + lam(k, k - 1) + e[k]) : T(lam(N - 1, N) + e[N]);
  for (int i = 1; i <= N; ++i)
    for (int j = 1; j <= N; ++j)
      if (i != j) B(i, j) = e[std::min(i, j)];
  return {std::move(A), std::move(B)};
}

template <class T>
std::pair<Matrix<T>, Matrix<T>> assemble_pep_matrix(const Matrix<T>& A, const Matrix<T>& B,
                                                    const Matrix<T>& htilde_inv, const T& kappa,
                                                    const T& tau, const T& L) {
  if (kappa == T(1)) throw std::domain_error("assemble_pep_matrix: kappa = 1");
  if (!(tau > T(0))) throw std::domain_error("assemble_pep_matrix: tau must be > 0");
  const std::size_t n = htilde_inv.rows();
  Matrix<T> S = A.transposed() * htilde_inv;
  if (!(kappa == T(0))) S += B * (kappa / (T(2) * (T(1) - kappa)));
  const std::vector<T> h0 = htilde_inv.row(0), hN = htilde_inv.row(n - 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      S(i, j) += h0[i] * h0[j] / T(2);
      S(i, j) -= L / (T(2) * tau) * hN[i] * hN[j];
    }
  Matrix<T> S_sym = S.symmetric_part();
  return {std::move(S), std::move(S_sym)};
}

/// Full matrix set for a GD certificate.
template <class T>
PepMatrixSetT<T> build_pep_set(const CertificateBundleT<T>& cert, const T& kappa) {
  PepMatrixSetT<T> out;
  const T gamma_L = T(1) - cert.rho;
  auto [ht, inv] = build_htilde(HScheduleT<T>::gd(cert.N, gamma_L));
  out.htilde = std::move(ht);
  out.htilde_inv = std::move(inv);
  auto [A, B] = build_ab(cert);
  out.A = std::move(A);
  out.B = std::move(B);
  out.h0 = out.htilde_inv.row(0);
  out.hN = out.htilde_inv.row(cert.N);
  auto [S, S_sym] = assemble_pep_matrix(out.A, out.B, out.htilde_inv, kappa, cert.tau, cert.L);
  out.S = std::move(S);
  out.S_sym = std::move(S_sym);
  return out;
}

}  // namespace gdrate
