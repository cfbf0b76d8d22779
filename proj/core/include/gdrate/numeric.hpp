#pragma once

// Scalar backends shared by the whole library.
//
// Everything numerical is written against a generic scalar T so the same
// formulas run in three modes:
//   double    - the production pipeline,
//   Rational  - exact arithmetic on dyadic/rational inputs,
//   BigFloat  - 50-digit floats for audits that need a stepsize solved far
//               below binary64 resolution.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <type_traits>

namespace gdrate {

using Rational = boost::multiprecision::cpp_rational;
using BigFloat = boost::multiprecision::cpp_bin_float_50;

template <class T>
inline constexpr bool is_exact_scalar_v = false;
template <>
inline constexpr bool is_exact_scalar_v<Rational> = true;

template <class T>
struct scalar_name;
template <>
struct scalar_name<double> { static constexpr const char* value = "double"; };
template <>
struct scalar_name<Rational> { static constexpr const char* value = "rational"; };
template <>
struct scalar_name<BigFloat> { static constexpr const char* value = "bin_float_50"; };

/// x^n by squaring; n may be negative (requires x != 0 then).
template <class T>
T int_pow(T x, long n) {
  if (n < 0) {
    if (x == T(0)) throw std::domain_error("int_pow: zero base with negative exponent");
    return T(1) / int_pow(x, -n);
  }
  T r(1);
  while (n > 0) {
    if (n & 1) r *= x;
    x *= x;
    n >>= 1;
  }
  return r;
}

template <class T>
T abs_value(const T& x) {
  return x < T(0) ? T(-x) : x;
}
inline double abs_value(const double& x) { return std::fabs(x); }

template <class T>
double to_double(const T& x) {
  return x.template convert_to<double>();
}
inline double to_double(const double& x) { return x; }

/// |x|^p - 1 for even p, computed without cancellation near |x| = 1.
/// Used by the binary64 rate formulas; exact scalars never call this.
inline double even_pow_minus_one(double x, long p) {
  const double a = std::fabs(x);
  if (a == 0.0) {
    if (p < 0) throw std::domain_error("even_pow_minus_one: zero base, negative power");
    return p == 0 ? 0.0 : -1.0;
  }
  return std::expm1(static_cast<double>(p) * std::log1p(a - 1.0));
}

inline double quiet_nan() { return std::numeric_limits<double>::quiet_NaN(); }
inline double infinity() { return std::numeric_limits<double>::infinity(); }

}  // namespace gdrate
