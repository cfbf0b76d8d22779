#pragma once

// GD simulation on concrete function families, measuring the performance
// ratio |grad f(x_N)|^2 / (f(x_0) - f*) against the certified bounds.
// All gradients are analytic; finite differences exist only in tests.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "gdrate/scalar_kernel.hpp"

namespace gdrate {

enum class FunctionFamily { quadratic, huber, piecewise_quadratic };

const char* function_family_name(FunctionFamily f);
FunctionFamily function_family_from_name(const std::string& name);

/// A concrete test function with known gradient and (when it exists) a
/// known minimum value.
///   quadratic            f(x) = 1/2 sum_i eig_i x_i^2       (f* = 0)
///   huber                1/2 c |x|^2 inside radius r, linear growth
///                        c r |x| - 1/2 c r^2 outside        (f* = 0)
///   piecewise_quadratic  1D, C1, curvature c_i per interval, derivative
///                        anchored to zero at t = 0          (f* = 0 iff
///                        every curvature is >= 0)
struct FunctionSpec {
  FunctionFamily variant = FunctionFamily::quadratic;
  std::vector<double> eigenvalues;  // quadratic
  double huber_curvature = 1.0;     // huber: c <= L
  double huber_radius = 1.0;        // huber: r > 0
  int huber_dimension = 1;
  std::vector<double> breakpoints;  // piecewise: strictly increasing
  std::vector<double> curvatures;   // piecewise: breakpoints.size() + 1 entries

  static FunctionSpec quadratic(std::vector<double> eigenvalues);
  static FunctionSpec huber(double curvature, double radius, int dimension = 1);
  static FunctionSpec piecewise(std::vector<double> breakpoints, std::vector<double> curvatures);

  int dimension() const;
  double value(const std::vector<double>& x) const;
  std::vector<double> gradient(const std::vector<double>& x) const;

  bool has_f_star() const;
  double f_star() const;  // throws when the minimum is not known

  /// Largest curvature (smoothness constant of the function itself).
  double smoothness() const;
  /// Membership in the class (mu, L).
  bool in_class(double mu, double L) const;

  void ensure_valid() const;
};

struct Trajectory {
  std::vector<std::vector<double>> points;  // x_0..x_N
  std::vector<double> values;               // f_0..f_N
  std::vector<std::vector<double>> gradients;
  std::vector<std::vector<double>> points_plus;  // x_k - g_k / L
  std::vector<double> values_plus;               // f_k - |g_k|^2 / 2L

  int horizon() const { return static_cast<int>(points.size()) - 1; }
  double gradient_norm_sq(int k) const;
};

/// Exact GD recursion x_{k+1} = x_k - gamma g_k. The derived x+/f+ fields
/// use L_plus, defaulting to the function's own smoothness constant.
Trajectory run_gd(const FunctionSpec& spec, const std::vector<double>& x0, double gamma, int N,
                  double L_plus = 0.0);

/// |g_N|^2 / (f_0 - f_star); rejects a degenerate start f_0 <= f_star.
double performance_ratio(const Trajectory& traj, double f_star);

struct ProbeResult {
  double max_ratio = 0.0;    // worst observed criterion value
  double bound_value = 0.0;  // 2 L max_value (mu >= 0) or 2 / min_form (mu < 0)
  double quotient = 0.0;     // max_ratio / bound_value; <= 1 + 1e-9 when the bound holds
  int trials_used = 0;
};

/// Randomized tightness probe. For mu >= 0 the ratio is measured against
/// the max-form bound; for mu < 0 trajectories are checked against the
/// min form on f_0 - f_N (no f* needed). Families that cannot realize the
/// class are rejected (huber requires mu <= 0).
ProbeResult empirical_probe(const ProblemInstance& inst, FunctionFamily family, int trials,
                            std::uint64_t seed);

}  // namespace gdrate
