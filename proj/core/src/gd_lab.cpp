#include "gdrate/gd_lab.hpp"

#include <algorithm>
#include <cmath>

#include "gdrate/rng.hpp"

namespace gdrate {

const char* function_family_name(FunctionFamily f) {
  switch (f) {
    case FunctionFamily::quadratic: return "quadratic";
    case FunctionFamily::huber: return "huber";
    case FunctionFamily::piecewise_quadratic: return "piecewise_quadratic";
  }
  return "?";
}

FunctionFamily function_family_from_name(const std::string& name) {
  if (name == "quadratic") return FunctionFamily::quadratic;
  if (name == "huber") return FunctionFamily::huber;
  if (name == "piecewise_quadratic" || name == "piecewise") return FunctionFamily::piecewise_quadratic;
  throw std::invalid_argument("unknown function family: " + name);
}

FunctionSpec FunctionSpec::quadratic(std::vector<double> eigenvalues) {
  FunctionSpec s;
  s.variant = FunctionFamily::quadratic;
  s.eigenvalues = std::move(eigenvalues);
  s.ensure_valid();
  return s;
}

FunctionSpec FunctionSpec::huber(double curvature, double radius, int dimension) {
  FunctionSpec s;
  s.variant = FunctionFamily::huber;
  s.huber_curvature = curvature;
  s.huber_radius = radius;
  s.huber_dimension = dimension;
  s.ensure_valid();
  return s;
}

FunctionSpec FunctionSpec::piecewise(std::vector<double> breakpoints, std::vector<double> curvatures) {
  FunctionSpec s;
  s.variant = FunctionFamily::piecewise_quadratic;
  s.breakpoints = std::move(breakpoints);
  s.curvatures = std::move(curvatures);
  s.ensure_valid();
  return s;
}

void FunctionSpec::ensure_valid() const {
  switch (variant) {
    case FunctionFamily::quadratic:
      if (eigenvalues.empty()) throw std::invalid_argument("quadratic: needs eigenvalues");
      return;
    case FunctionFamily::huber:
      if (!(huber_curvature > 0.0) || !(huber_radius > 0.0) || huber_dimension < 1)
        throw std::invalid_argument("huber: needs curvature > 0, radius > 0, dimension >= 1");
      return;
    case FunctionFamily::piecewise_quadratic:
      if (curvatures.size() != breakpoints.size() + 1)
        throw std::invalid_argument("piecewise: needs one curvature per interval");
      if (!std::is_sorted(breakpoints.begin(), breakpoints.end()))
        throw std::invalid_argument("piecewise: breakpoints must be sorted");
      return;
  }
}

int FunctionSpec::dimension() const {
  switch (variant) {
    case FunctionFamily::quadratic: return static_cast<int>(eigenvalues.size());
    case FunctionFamily::huber: return huber_dimension;
    case FunctionFamily::piecewise_quadratic: return 1;
  }
  return 0;
}

namespace {

double norm(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

// Piecewise 1D state at t: walk the intervals from the anchor at 0, where
// the derivative is 0 and the value is 0. Value and derivative stay
// continuous across breakpoints (quadratic pieces).
struct PiecewiseState {
  double value, slope;
};

PiecewiseState piecewise_eval(const std::vector<double>& bp, const std::vector<double>& c, double t) {
  // interval index containing a coordinate: first breakpoint above it
  auto interval_of = [&bp](double x) {
    return static_cast<std::size_t>(std::upper_bound(bp.begin(), bp.end(), x) - bp.begin());
  };
  double pos = 0.0, g = 0.0, f = 0.0;
  std::size_t idx = interval_of(0.0);
  if (t >= 0.0) {
    while (idx < bp.size() && bp[idx] < t) {
      const double h = bp[idx] - pos;
      f += g * h + 0.5 * c[idx] * h * h;
      g += c[idx] * h;
      pos = bp[idx];
      ++idx;
    }
    const double h = t - pos;
    f += g * h + 0.5 * c[idx] * h * h;
    g += c[idx] * h;
  } else {
    while (idx > 0 && bp[idx - 1] > t) {
      const double h = bp[idx - 1] - pos;  // negative
      f += g * h + 0.5 * c[idx] * h * h;
      g += c[idx] * h;
      pos = bp[idx - 1];
      --idx;
    }
    const double h = t - pos;
    f += g * h + 0.5 * c[idx] * h * h;
    g += c[idx] * h;
  }
  return {f, g};
}

}  // namespace

double FunctionSpec::value(const std::vector<double>& x) const {
  if (static_cast<int>(x.size()) != dimension())
    throw std::invalid_argument("FunctionSpec: dimension mismatch");
  switch (variant) {
    case FunctionFamily::quadratic: {
      double s = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) s += eigenvalues[i] * x[i] * x[i];
      return 0.5 * s;
    }
    case FunctionFamily::huber: {
      const double r = huber_radius, c = huber_curvature, nx = norm(x);
      return nx <= r ? 0.5 * c * nx * nx : c * r * nx - 0.5 * c * r * r;
    }
    case FunctionFamily::piecewise_quadratic:
      return piecewise_eval(breakpoints, curvatures, x[0]).value;
  }
  return 0.0;
}

std::vector<double> FunctionSpec::gradient(const std::vector<double>& x) const {
  if (static_cast<int>(x.size()) != dimension())
    throw std::invalid_argument("FunctionSpec: dimension mismatch");
  switch (variant) {
    case FunctionFamily::quadratic: {
      std::vector<double> g(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) g[i] = eigenvalues[i] * x[i];
      return g;
    }
    case FunctionFamily::huber: {
      const double r = huber_radius, c = huber_curvature, nx = norm(x);
      std::vector<double> g(x.size());
      if (nx <= r) {
        for (std::size_t i = 0; i < x.size(); ++i) g[i] = c * x[i];
      } else {
        for (std::size_t i = 0; i < x.size(); ++i) g[i] = c * r * x[i] / nx;
      }
      return g;
    }
    case FunctionFamily::piecewise_quadratic:
      return {piecewise_eval(breakpoints, curvatures, x[0]).slope};
  }
  return {};
}

bool FunctionSpec::has_f_star() const {
  switch (variant) {
    case FunctionFamily::quadratic:
      return std::all_of(eigenvalues.begin(), eigenvalues.end(), [](double e) { return e >= 0.0; });
    case FunctionFamily::huber:
      return true;
    case FunctionFamily::piecewise_quadratic:
      return std::all_of(curvatures.begin(), curvatures.end(), [](double c) { return c >= 0.0; });
  }
  return false;
}

double FunctionSpec::f_star() const {
  if (!has_f_star()) throw std::domain_error("FunctionSpec: minimum value not available");
  return 0.0;  // every family here is anchored so the minimum value is 0
}

double FunctionSpec::smoothness() const {
  switch (variant) {
    case FunctionFamily::quadratic: {
      double m = 0.0;
      for (double e : eigenvalues) m = std::max(m, std::fabs(e));
      return m;
    }
    case FunctionFamily::huber:
      return huber_curvature;
    case FunctionFamily::piecewise_quadratic: {
      double m = 0.0;
      for (double c : curvatures) m = std::max(m, std::fabs(c));
      return m;
    }
  }
  return 0.0;
}

bool FunctionSpec::in_class(double mu, double L) const {
  auto within = [mu, L](double c) { return c >= mu && c <= L; };
  switch (variant) {
    case FunctionFamily::quadratic:
      return std::all_of(eigenvalues.begin(), eigenvalues.end(), within);
    case FunctionFamily::huber:
      return mu <= 0.0 && huber_curvature <= L;
    case FunctionFamily::piecewise_quadratic:
      return std::all_of(curvatures.begin(), curvatures.end(), within);
  }
  return false;
}

double Trajectory::gradient_norm_sq(int k) const {
  double s = 0.0;
  for (double v : gradients[k]) s += v * v;
  return s;
}

Trajectory run_gd(const FunctionSpec& spec, const std::vector<double>& x0, double gamma, int N,
                  double L_plus) {
  spec.ensure_valid();
  if (static_cast<int>(x0.size()) != spec.dimension())
    throw std::invalid_argument("run_gd: x0 dimension mismatch");
  if (N < 0) throw std::invalid_argument("run_gd: N must be >= 0");
  const double L = L_plus > 0.0 ? L_plus : spec.smoothness();

  Trajectory t;
  t.points.reserve(N + 1);
  t.points.push_back(x0);
  for (int k = 0; k < N; ++k) {
    const std::vector<double> g = spec.gradient(t.points.back());
    std::vector<double> next = t.points.back();
    for (std::size_t i = 0; i < next.size(); ++i) next[i] -= gamma * g[i];
    t.points.push_back(std::move(next));
  }
  for (int k = 0; k <= N; ++k) {
    t.values.push_back(spec.value(t.points[k]));
    t.gradients.push_back(spec.gradient(t.points[k]));
    std::vector<double> plus = t.points[k];
    for (std::size_t i = 0; i < plus.size(); ++i) plus[i] -= t.gradients[k][i] / L;
    t.points_plus.push_back(std::move(plus));
    t.values_plus.push_back(t.values[k] - t.gradient_norm_sq(k) / (2.0 * L));
  }
  return t;
}

double performance_ratio(const Trajectory& traj, double f_star) {
  const double suboptimality = traj.values.front() - f_star;
  if (!(suboptimality > 0.0))
    throw std::invalid_argument("performance_ratio: degenerate start (f_0 <= f*)");
  return traj.gradient_norm_sq(traj.horizon()) / suboptimality;
}

namespace {

FunctionSpec random_spec(const ProblemInstance& inst, FunctionFamily family, Rng& rng,
                         bool exact_L_quadratic) {
  switch (family) {
    case FunctionFamily::quadratic: {
      if (exact_L_quadratic) return FunctionSpec::quadratic({inst.L});
      const int d = 8;
      std::vector<double> eigs(d);
      for (auto& e : eigs) e = inst.mu + (inst.L - inst.mu) * rng.uniform01();
      eigs[0] = inst.L;  // keep the extreme mode represented
      return FunctionSpec::quadratic(std::move(eigs));
    }
    case FunctionFamily::huber: {
      const double c = inst.L * (0.05 + 0.95 * rng.uniform01());
      const double r = 0.1 + 2.0 * rng.uniform01();
      return FunctionSpec::huber(c, r, 3);
    }
    case FunctionFamily::piecewise_quadratic: {
      std::vector<double> bp(4);
      for (auto& b : bp) b = rng.uniform(-2.0, 2.0);
      std::sort(bp.begin(), bp.end());
      std::vector<double> c(bp.size() + 1);
      for (auto& ci : c) ci = inst.mu + (inst.L - inst.mu) * rng.uniform01();
      c[c.size() / 2] = inst.L;
      return FunctionSpec::piecewise(std::move(bp), std::move(c));
    }
  }
  throw std::logic_error("random_spec: unreachable");
}

std::vector<double> random_start(const FunctionSpec& spec, Rng& rng) {
  std::vector<double> x0(spec.dimension());
  double n = 0.0;
  do {
    for (auto& v : x0) v = rng.uniform(-2.0, 2.0);
    n = norm(x0);
  } while (n < 1e-3);
  return x0;
}

}  // namespace

ProbeResult empirical_probe(const ProblemInstance& inst, FunctionFamily family, int trials,
                            std::uint64_t seed) {
  inst.ensure_valid();
  if (trials < 1) throw std::invalid_argument("empirical_probe: trials must be >= 1");
  if (family == FunctionFamily::huber && inst.mu > 0.0)
    throw std::invalid_argument("empirical_probe: huber cannot realize mu > 0");

  const RateBound rb = rate_bound(inst);
  ProbeResult out;
  out.bound_value = inst.mu >= 0.0 ? 2.0 * inst.L * rb.max_value : 2.0 / rb.min_form;

  for (int trial = 0; trial < trials; ++trial) {
    Rng rng = Rng::for_trial(seed, static_cast<std::uint64_t>(trial));
    const FunctionSpec spec = random_spec(inst, family, rng, trial == 0);
    const std::vector<double> x0 = random_start(spec, rng);
    const Trajectory traj = run_gd(spec, x0, inst.gamma, inst.N, inst.L);

    double ratio;
    if (inst.mu >= 0.0) {
      const double subopt = traj.values.front() - spec.f_star();
      if (!(subopt > 1e-12)) continue;  // skipped degenerate start
      ratio = performance_ratio(traj, spec.f_star());
    } else {
      const double drop = traj.values.front() - traj.values.back();
      if (!(drop > 1e-12)) continue;
      ratio = inst.gamma * traj.gradient_norm_sq(inst.N) / drop;
    }
    if (ratio > out.max_ratio) out.max_ratio = ratio;
    ++out.trials_used;
  }
  out.quotient = out.max_ratio / out.bound_value;
  return out;
}

}  // namespace gdrate
