#include "bernpos/moments.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace bernpos {

namespace {

std::vector<Rational> derivative(const std::vector<Rational>& p) {
  if (p.size() <= 1) return {Rational(0)};
  std::vector<Rational> out(p.size() - 1);
  for (std::size_t j = 1; j < p.size(); ++j) out[j - 1] = p[j] * static_cast<long>(j);
  return out;
}

// Multiply by x(1-x) = x - x^2.
std::vector<Rational> times_x_one_minus_x(const std::vector<Rational>& p) {
  std::vector<Rational> out(p.size() + 2, Rational(0));
  for (std::size_t j = 0; j < p.size(); ++j) {
    out[j + 1] += p[j];
    out[j + 2] -= p[j];
  }
  return out;
}

void trim(std::vector<Rational>& p) {
  while (p.size() > 1 && p.back() == 0) p.pop_back();
}

}  // namespace

MomentTable central_moments(int n, int s_max) {
  if (n < 1 || s_max < 0) throw std::domain_error("central_moments: need n >= 1, s_max >= 0");
  MomentTable table{n, s_max, {}};
  table.polys.push_back({Rational(1)});
  if (s_max >= 1) table.polys.push_back({Rational(0)});
  // T_{n,s+1} = x(1-x) [T'_{ns} + n s T_{n,s-1}]
  for (int s = 1; s < s_max; ++s) {
    auto inner = derivative(table.polys[s]);
    const auto& prev = table.polys[s - 1];
    if (inner.size() < prev.size()) inner.resize(prev.size(), Rational(0));
    for (std::size_t j = 0; j < prev.size(); ++j) inner[j] += prev[j] * static_cast<long>(n) * s;
    auto next = times_x_one_minus_x(inner);
    trim(next);
    table.polys.push_back(std::move(next));
  }
  return table;
}

double MomentTable::eval(int s, double x) const {
  const auto& p = polys.at(static_cast<std::size_t>(s));
  double acc = 0.0;
  for (std::size_t j = p.size(); j-- > 0;) acc = acc * x + p[j].convert_to<double>();
  return acc;
}

Rational MomentTable::eval_exact(int s, const Rational& x) const {
  const auto& p = polys.at(static_cast<std::size_t>(s));
  Rational acc = 0;
  for (std::size_t j = p.size(); j-- > 0;) acc = acc * x + p[j];
  return acc;
}

std::vector<Rational> MomentTable::scaled(int s) const {
  std::vector<Rational> out = polys.at(static_cast<std::size_t>(s));
  const Rational scale = Rational(1) / Rational(boost::multiprecision::pow(BigInt(n), static_cast<unsigned>(s)));
  for (auto& c : out) c *= scale;
  return out;
}

PolyDivision divide_by_x_one_minus_x(std::span<const Rational> mono) {
  // Divisor -x^2 + x + 0, long division from the top degree.
  std::vector<Rational> rem(mono.begin(), mono.end());
  trim(rem);
  if (rem.size() < 3) return {{Rational(0)}, rem};
  std::vector<Rational> quot(rem.size() - 2, Rational(0));
  for (std::size_t deg = rem.size() - 1; deg >= 2; --deg) {
    const Rational q = -rem[deg];
    quot[deg - 2] = q;
    rem[deg] = 0;
    rem[deg - 1] -= q;  // q * x^{deg-2} * x
  }
  rem.resize(2);
  return {quot, rem};
}

double delta_n(int n, double t) {
  if (n < 1) throw std::domain_error("delta_n: need n >= 1");
  if (t < 0.0 || t > 1.0) throw std::domain_error("delta_n: t outside [0,1]");
  return std::sqrt(t * (1.0 - t) / n);
}

double Delta_n(int n, double t) { return std::max(1.0 / n, delta_n(n, t)); }

double D_n(const DegreeVector& n, std::span<const double> x) {
  if (x.size() != n.dim()) throw ContractViolation("D_n: dimension mismatch");
  double out = 0.0;
  for (std::size_t j = 0; j < n.dim(); ++j) out = std::max(out, Delta_n(n[j], x[j]));
  return out;
}

std::vector<double> binomial_pmf(int n, double x) {
  if (n < 0) throw std::domain_error("binomial_pmf: need n >= 0");
  if (x < 0.0 || x > 1.0) throw std::domain_error("binomial_pmf: x outside [0,1]");
  std::vector<double> p(static_cast<std::size_t>(n + 1), 0.0);
  if (x == 0.0) {
    p.front() = 1.0;
    return p;
  }
  if (x == 1.0) {
    p.back() = 1.0;
    return p;
  }
  const long double lx = std::log(static_cast<long double>(x));
  const long double l1x = std::log1p(-static_cast<long double>(x));
  const long double lgn = std::lgamma(static_cast<long double>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    const long double lg = lgn - std::lgamma(static_cast<long double>(k) + 1) -
                           std::lgamma(static_cast<long double>(n - k) + 1);
    p[k] = static_cast<double>(std::exp(lg + k * lx + (n - k) * l1x));
  }
  return p;
}

namespace {

// sum_k w(k - nx) p_k in extended precision
template <class F>
double moment_sum(int n, double x, F&& weight) {
  const auto p = binomial_pmf(n, x);
  long double acc = 0;
  const long double nx = static_cast<long double>(n) * x;
  for (int k = 0; k <= n; ++k)
    if (p[k] != 0.0) acc += weight(static_cast<long double>(k) - nx) * p[k];
  return static_cast<double>(acc);
}

long double ipow(long double v, int s) {
  long double out = 1;
  for (int i = 0; i < s; ++i) out *= v;
  return out;
}

}  // namespace

double abs_moment(int n, int s, double x) {
  if (n < 1 || s < 0) throw std::domain_error("abs_moment: need n >= 1, s >= 0");
  return moment_sum(n, x, [s](long double d) { return ipow(std::fabs(d), s); });
}

double abs_moment_scaled(int n, int s, double x) {
  if (n < 1 || s < 0) throw std::domain_error("abs_moment_scaled: need n >= 1, s >= 0");
  return moment_sum(n, x, [s, n](long double d) { return ipow(std::fabs(d) / n, s); });
}

double central_moment_direct_scaled(int n, int s, double x) {
  if (n < 1 || s < 0) throw std::domain_error("central_moment_direct_scaled: need n >= 1, s >= 0");
  return moment_sum(n, x, [s, n](long double d) { return ipow(d / n, s); });
}

double lemma1_constant(int s) {
  static constexpr double A[] = {1.0, 1.0, 1.0, 2.0, 4.0};
  if (s < 0 || s > 4) throw std::out_of_range("lemma1_constant: A_s known only for s <= 4");
  return A[s];
}

double lemma1_rhs(int n, int s, double x, double A_s) {
  if (s < 0) throw std::domain_error("lemma1_rhs: need s >= 0");
  const double d = delta_n(n, x);
  const double D = Delta_n(n, x);
  return A_s * std::pow(d, std::min(2, s)) * std::pow(D, std::max(0, s - 2));
}

std::vector<double> lemma1_grid(int grid_size) {
  if (grid_size < 2) throw ContractViolation("lemma1_grid: need at least 2 points");
  std::set<double> pts;
  for (int i = 0; i < grid_size; ++i) pts.insert(static_cast<double>(i) / (grid_size - 1));
  for (int k = 1; k <= 6; ++k) {
    const double e = std::pow(10.0, -k);
    pts.insert(e);
    pts.insert(1.0 - e);
  }
  return {pts.begin(), pts.end()};
}

bool Lemma1Report::has_violations() const {
  return std::any_of(per_s.begin(), per_s.end(), [](const auto& r) { return !r.violations.empty(); });
}

Lemma1Report lemma1_check(const Lemma1Options& opt) {
  if (opt.n_min < 1 || opt.n_max < opt.n_min || opt.s_min < 0 || opt.s_max < opt.s_min)
    throw ContractViolation("lemma1_check: empty or invalid range");
  Lemma1Report report{opt.n_min, opt.n_max, opt.s_min, opt.s_max, opt.grid_size, opt.slack, {}};
  const auto grid = lemma1_grid(opt.grid_size);

  for (int s = opt.s_min; s <= opt.s_max; ++s) {
    Lemma1SReport sr;
    sr.s = s;
    if (s <= 4) sr.declared_constant = lemma1_constant(s);
    for (const auto& [os, value] : opt.constant_overrides)
      if (os == s) sr.declared_constant = value;
    if (s == 0 || s == 2) sr.equality_max_dev = 0.0;
    report.per_s.push_back(std::move(sr));
  }

  for (int n = opt.n_min; n <= opt.n_max; ++n) {
    std::vector<double> fitted_n(report.per_s.size(), 0.0);
    for (double x : grid) {
      const auto p = binomial_pmf(n, x);
      const long double nx = static_cast<long double>(n) * x;
      for (std::size_t si = 0; si < report.per_s.size(); ++si) {
        auto& sr = report.per_s[si];
        const int s = sr.s;
        long double acc = 0;
        for (int k = 0; k <= n; ++k)
          if (p[k] != 0.0) acc += ipow(std::fabs(static_cast<long double>(k) - nx) / n, s) * p[k];
        const double observed = static_cast<double>(acc);
        const double unit = lemma1_rhs(n, s, x, 1.0);
        if (unit > 0.0) {
          const double ratio = observed / unit;
          fitted_n[si] = std::max(fitted_n[si], ratio);
          sr.fitted_constant = std::max(sr.fitted_constant, ratio);
          if (sr.equality_max_dev && x > 0.0 && x < 1.0)
            sr.equality_max_dev = std::max(*sr.equality_max_dev, std::abs(ratio - 1.0));
        } else {
          sr.zero_rhs_max_abs = std::max(sr.zero_rhs_max_abs, std::abs(observed));
        }
        if (sr.declared_constant) {
          const double rhs = *sr.declared_constant * unit;
          if (observed > rhs + opt.slack) sr.violations.push_back({n, s, x, observed, rhs});
        }
      }
    }
    for (std::size_t si = 0; si < report.per_s.size(); ++si) report.per_s[si].fitted_by_n.emplace_back(n, fitted_n[si]);
  }
  return report;
}

}  // namespace bernpos
