#include "bernpos/analysis.hpp"

#include "bernpos/moments.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace bernpos {

ModulusCache::ModulusCache(const FunctionOracle& f, int r, std::uint64_t seed) : f_(f), r_(r), seed_(seed) {
  if (r > f.max_order) throw std::domain_error("ModulusCache: r exceeds available derivatives");
}

double ModulusCache::operator()(double h) {
  if (h <= 0.0) return 0.0;
  if (auto it = cache_.find(h); it != cache_.end()) return it->second;
  const double value = modulus_order_r(f_, r_, h, default_modulus_step(f_.dim, h), seed_);
  cache_.emplace(h, value);
  return value;
}

namespace {

struct LocalScales {
  double max_delta = 0.0;
  double sum_delta = 0.0;
};

LocalScales scales(const DegreeVector& n, std::span<const double> x) {
  if (x.size() != n.dim()) throw ContractViolation("bound rhs: dimension mismatch");
  LocalScales s;
  for (std::size_t j = 0; j < n.dim(); ++j) {
    const double d = delta_n(n[j], x[j]);
    s.max_delta = std::max(s.max_delta, d);
    s.sum_delta += d;
  }
  return s;
}

}  // namespace

double rhs_thm1_i(const FunctionOracle& f, const DegreeVector& n, std::span<const double> x, int r,
                  ModulusCache& omega) {
  if (r != 0 && r != 1) throw ContractViolation("rhs_thm1_i: r must be 0 or 1");
  if (omega.order() != r) throw ContractViolation("rhs_thm1_i: modulus cache has the wrong order");
  const auto s = scales(n, x);
  return (f.dim + 1) * omega(s.max_delta) * std::pow(s.sum_delta, r);
}

double rhs_thm1_i(const FunctionOracle& f, const DegreeVector& n, std::span<const double> x, int r) {
  ModulusCache omega(f, r);
  return rhs_thm1_i(f, n, x, r, omega);
}

double rhs_thm1_ii(const FunctionOracle& f, const DegreeVector& n, std::span<const double> x, int r, double constant,
                   ModulusCache& omega) {
  if (r < 2) throw ContractViolation("rhs_thm1_ii: needs r >= 2");
  if (!(constant > 0.0)) throw ContractViolation("rhs_thm1_ii: constant must be positive");
  if (omega.order() != r) throw ContractViolation("rhs_thm1_ii: modulus cache has the wrong order");
  (void)f;
  const auto s = scales(n, x);
  const double D = D_n(n, x);
  return constant * omega(D) * std::pow(D, r - 2) * s.sum_delta * s.sum_delta;
}

double rhs_thm1_ii(const FunctionOracle& f, const DegreeVector& n, std::span<const double> x, int r,
                   double constant) {
  ModulusCache omega(f, r);
  return rhs_thm1_ii(f, n, x, r, constant, omega);
}

std::string to_string(Builder b) { return b == Builder::bernstein ? "B" : "Q"; }
std::string to_string(BoundKind k) { return k == BoundKind::thm1_i ? "thm1_i" : "thm1_ii"; }

double BoundReport::constant_spread() const {
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (const auto& p : per_degree)
    if (p.fitted_constant > 0.0) {
      lo = std::min(lo, p.fitted_constant);
      hi = std::max(hi, p.fitted_constant);
    }
  return hi > 0.0 && std::isfinite(lo) ? hi / lo : 1.0;
}

std::vector<std::vector<double>> default_verification_points(int d, std::uint64_t seed) {
  if (d == 1) return tensor_grid(1, 1001, true);
  if (d == 2) return tensor_grid(2, 41);
  auto pts = random_points(d, 10000, seed);
  for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
    std::vector<double> v(static_cast<std::size_t>(d));
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = (mask >> j) & 1U ? 1.0 : 0.0;
    pts.push_back(std::move(v));
  }
  return pts;
}

BoundReport verify_bound(const FunctionOracle& f, const VerifyOptions& opt) {
  if (opt.kind == BoundKind::thm1_i && (opt.r > 1 || opt.builder != Builder::bernstein))
    throw ContractViolation("verify_bound: thm1_i applies to B with r in {0,1}");
  if (opt.kind == BoundKind::thm1_ii && opt.r < 2)
    throw ContractViolation("verify_bound: thm1_ii needs r >= 2");
  if (opt.degrees.empty() || opt.points.empty()) throw ContractViolation("verify_bound: no degrees or points");

  BoundReport report;
  report.func = f.name;
  report.d = f.dim;
  report.r = opt.r;
  report.builder = opt.builder;
  report.kind = opt.kind;
  report.declared_constant = opt.declared_constant;
  report.slack = opt.slack;
  report.seed = opt.seed;

  ModulusCache omega(f, opt.r, opt.seed.value_or(1));
  for (const auto& n : opt.degrees) {
    const auto P = opt.builder == Builder::bernstein ? bernstein_op<double>(f, n) : lorentz_Q<double>(f, n, opt.r);
    const auto profile = error_profile(f, P, opt.points);
    PerDegreeSummary summary{n, 0.0, profile.sup_error, 0.0};
    for (double e : profile.vertex_errors) summary.vertex_max_err = std::max(summary.vertex_max_err, e);
    report.vertex_max_err = std::max(report.vertex_max_err, summary.vertex_max_err);

    for (std::size_t k = 0; k < opt.points.size(); ++k) {
      const auto& x = opt.points[k];
      const double observed = profile.abs_errors[k];
      const double rhs = opt.kind == BoundKind::thm1_i ? rhs_thm1_i(f, n, x, opt.r, omega)
                                                        : rhs_thm1_ii(f, n, x, opt.r, 1.0, omega);
      if (rhs > 0.0) {
        const double ratio = observed / rhs;
        BoundCase c{n, x, observed, rhs, ratio};
        summary.fitted_constant = std::max(summary.fitted_constant, ratio);
        if (opt.declared_constant && observed > *opt.declared_constant * rhs + opt.slack) report.violations.push_back(c);
        report.cases.push_back(std::move(c));
      } else {
        report.zero_rhs_max_err = std::max(report.zero_rhs_max_err, observed);
        if (observed > opt.slack) report.violations.push_back({n, x, observed, rhs, 0.0});
      }
    }
    report.max_ratio = std::max(report.max_ratio, summary.fitted_constant);
    report.per_degree.push_back(std::move(summary));
  }
  report.fitted_constant = report.max_ratio;
  return report;
}

PositivityReport positivity_scan(const FunctionOracle& f, int r, int n_max, bool exact) {
  if (!(f.lower_bound_m > 0.0)) throw std::domain_error("positivity_scan: needs lower bound m > 0");
  if (n_max < 1) throw ContractViolation("positivity_scan: need n_max >= 1");
  PositivityReport report;
  report.func = f.name;
  report.r = r;
  report.n_max = n_max;
  report.exact = exact && f.has_exact();
  const auto d = static_cast<std::size_t>(f.dim);
  for (int n = 1; n <= n_max; ++n) {
    const auto degree = DegreeVector::uniform(d, n);
    PositivityStep step;
    step.n = n;
    if (report.exact) {
      const auto [value, idx] = min_coefficient(lorentz_Q<Rational>(f, degree, r));
      step.min_coefficient = value.convert_to<double>();
      step.argmin = idx;
      step.nonnegative = value >= 0;
    } else {
      const auto [value, idx] = min_coefficient(lorentz_Q<double>(f, degree, r));
      step.min_coefficient = value;
      step.argmin = idx;
      step.nonnegative = value >= -1e-12;
    }
    report.trace.push_back(std::move(step));
  }
  for (std::size_t k = report.trace.size(); k-- > 0;) {
    if (!report.trace[k].nonnegative) break;
    report.threshold = report.trace[k].n;
  }
  return report;
}

double cube_integral(const FunctionOracle& f) {
  using quad = boost::math::quadrature::gauss<double, 30>;
  const auto d = static_cast<std::size_t>(f.dim);
  std::vector<double> x(d);
  std::function<double(std::size_t)> nest = [&](std::size_t axis) -> double {
    if (axis == d) return f.eval(x);
    return quad::integrate(
        [&](double t) {
          x[axis] = t;
          return nest(axis + 1);
        },
        0.0, 1.0);
  };
  return nest(0);
}

DensityReport density_demo(const FunctionOracle& f, const DegreeVector& n, int r) {
  if (!(f.lower_bound_m > 0.0)) throw std::domain_error("density_demo: needs lower bound m > 0");
  const auto Q = lorentz_Q<double>(f, n, r);
  const double mass = integral(Q);
  if (!(mass > 0.0)) throw ContractViolation("density_demo: nonpositive integral");
  DensityReport report{scale(Q, 1.0 / mass), mass, cube_integral(f), 0.0, {}, 0.0, 0.0};
  report.mass_mismatch = std::abs(mass / report.target_integral - 1.0);

  const auto points = f.dim == 1 ? tensor_grid(1, 101) : tensor_grid(f.dim, f.dim == 2 ? 41 : 9);
  std::vector<double> interior;
  for (const auto& x : points) {
    const bool boundary = std::any_of(x.begin(), x.end(), [](double v) { return v == 0.0 || v == 1.0; });
    if (boundary) continue;
    interior.push_back(std::abs(f.eval(x) - Q.eval(x)) / mass);
  }
  if (!interior.empty()) {
    std::sort(interior.begin(), interior.end());
    report.interior_median_error = interior[interior.size() / 2];
    report.interior_max_error = interior.back();
  }
  const std::size_t d = n.dim();
  std::vector<double> v(d);
  for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
    for (std::size_t j = 0; j < d; ++j) v[j] = (mask >> (d - 1 - j)) & 1U ? 1.0 : 0.0;
    report.vertex_errors.push_back(std::abs(f.eval(v) - Q.eval(v)) / mass);
  }
  return report;
}

}  // namespace bernpos
