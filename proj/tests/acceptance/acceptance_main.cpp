// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
// Usage: bernpos_acceptance [criterion-number ...]

#include "bernpos/analysis.hpp"
#include "bernpos/combinatorics.hpp"
#include "bernpos/moments.hpp"
#include "bernpos/operators.hpp"
#include "bernpos/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace bernpos;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// ---- moment criteria -------------------------------------------------------

Outcome lemma_constants() {
  Lemma1Options opt;
  opt.n_max = 200;
  opt.s_min = 0;
  opt.s_max = 4;
  opt.grid_size = 201;
  opt.slack = 1e-12;
  const auto rep = lemma1_check(opt);
  Outcome o;
  std::ostringstream ss;
  for (const auto& s : rep.per_s) {
    ss << "A" << s.s << "=" << fmt(s.fitted_constant) << "/" << fmt(s.declared_constant.value_or(0)) << " ";
    if (!s.violations.empty()) o.pass = false;
  }
  o.detail = "fitted/declared " + ss.str();
  return o;
}

Outcome equality_cases() {
  Outcome o;
  int bad = 0;
  for (int n = 1; n <= 50; ++n) {
    const auto t = central_moments(n, 2);
    const auto t0 = t.scaled(0);
    const auto t2 = t.scaled(2);
    // Tbar_0 = 1; Tbar_2 = x(1-x)/n = x/n - x^2/n.  For s = 2 the absolute moment is the signed one.
    std::vector<Rational> want2{Rational(0), Rational(1, n), Rational(-1, n)};
    auto trim = [](std::vector<Rational> v) {
      while (!v.empty() && v.back() == 0) v.pop_back();
      return v;
    };
    if (trim(t0) != std::vector<Rational>{Rational(1)}) ++bad;
    if (trim(t2) != want2) ++bad;
  }
  o.pass = bad == 0;
  o.detail = "n=1..50 exact rational identities, mismatches=" + std::to_string(bad);
  return o;
}

Outcome endpoint_vanishing() {
  Outcome o;
  int bad = 0;
  for (int n = 1; n <= 200; ++n)
    for (int s = 1; s <= 8; ++s)
      for (double x : {0.0, 1.0})
        if (abs_moment_scaled(n, s, x) != 0.0) ++bad;
  // Exact cross-check on the polynomial form for n <= 50.
  for (int n = 1; n <= 50; ++n) {
    const auto t = central_moments(n, 8);
    for (int s = 1; s <= 8; ++s)
      if (t.eval_exact(s, Rational(0)) != 0 || t.eval_exact(s, Rational(1)) != 0) ++bad;
  }
  o.pass = bad == 0;
  o.detail = "s=1..8, n<=200 direct sums and exact n<=50, nonzero=" + std::to_string(bad);
  return o;
}

Outcome schwartz_chain() {
  Outcome o;
  double worst = -1e300;
  int bad = 0;
  const auto grid = lemma1_grid(201);
  for (int n = 1; n <= 200; ++n)
    for (double x : grid) {
      const double t3 = abs_moment_scaled(n, 3, x);
      const double bound = std::sqrt(abs_moment_scaled(n, 2, x) * abs_moment_scaled(n, 4, x));
      worst = std::max(worst, t3 - bound);
      if (t3 > bound + 1e-12) ++bad;
    }
  o.pass = bad == 0;
  o.detail = "max(T3 - sqrt(T2 T4))=" + fmt(worst) + " violations=" + std::to_string(bad);
  return o;
}

Outcome divisibility() {
  Outcome o;
  int bad = 0;
  for (int n = 1; n <= 50; ++n) {
    const auto t = central_moments(n, 8);
    for (int s = 2; s <= 8; ++s) {
      const auto div = divide_by_x_one_minus_x(t.polys[static_cast<std::size_t>(s)]);
      if (std::any_of(div.remainder.begin(), div.remainder.end(), [](const Rational& r) { return r != 0; })) ++bad;
    }
  }
  o.pass = bad == 0;
  o.detail = "s=2..8, n<=50 nonzero remainders=" + std::to_string(bad);
  return o;
}

// ---- operator criteria -----------------------------------------------------

Outcome thm1_i() {
  Outcome o;
  double worst = 0.0;
  int cases = 0, bad = 0;
  std::vector<DegreeVector> degrees;
  for (int d = 1; d <= 2; ++d)
    for (const auto& name : builtin_names()) {
      const auto f = builtin(name, d);
      for (int r = 0; r <= 1; ++r) {
        VerifyOptions opt;
        opt.r = r;
        opt.kind = BoundKind::thm1_i;
        for (int n : {8, 16, 32, 64}) opt.degrees.push_back(DegreeVector::uniform(static_cast<std::size_t>(d), n));
        opt.points = default_verification_points(d);
        opt.declared_constant = 1.05;
        const auto rep = verify_bound(f, opt);
        worst = std::max(worst, rep.max_ratio);
        bad += static_cast<int>(rep.violations.size());
        ++cases;
      }
    }
  o.pass = bad == 0;
  o.detail = std::to_string(cases) + " cases, max observed/rhs=" + fmt(worst) + " (allowed 1.05), violations=" +
             std::to_string(bad);
  return o;
}

// Random quadratics with a positive minimum on the cube, all monomials of total degree <= 2.
std::vector<FunctionOracle> quadratic_family(int d, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(-9, 9);
  std::vector<FunctionOracle> out;
  for (int c = 0; c < count; ++c) {
    std::vector<MonomialTerm> terms;
    Rational abs_sum = 0;
    for (int a = 0; a <= 2; ++a)
      for (int b = 0; b <= (d == 2 ? 2 - a : 0); ++b) {
        if (a + b == 0) continue;
        const Rational coef(num(rng), 4);
        abs_sum += abs(coef);
        terms.push_back({d == 1 ? MultiIndex{a} : MultiIndex{a, b}, coef});
      }
    // Constant term large enough that f >= 1/2 on the cube.
    const Rational c0 = abs_sum + Rational(1, 2);
    terms.push_back({MultiIndex::zeros(static_cast<std::size_t>(d)), c0});
    out.push_back(make_polynomial("quad" + std::to_string(c), d, terms, 0.5));
  }
  return out;
}

Outcome quadratic_exactness() {
  Outcome o;
  double worst = 0.0;
  int cases = 0;
  for (int d = 1; d <= 2; ++d) {
    auto fams = quadratic_family(d, 6, 11 + static_cast<std::uint64_t>(d));
    fams.push_back(builtin("quadratic_shifted", d));
    fams.push_back(builtin("affine", d));
    fams.push_back(builtin("const_c", d));
    const auto pts = d == 1 ? tensor_grid(1, 201, true) : tensor_grid(2, 41);
    std::vector<DegreeVector> degrees;
    if (d == 1)
      for (int n = 1; n <= 20; ++n) degrees.push_back(DegreeVector{n});
    else
      for (int a : {1, 2, 3, 5, 8, 13, 20})
        for (int b : {1, 4, 7, 20}) degrees.push_back(DegreeVector{a, b});
    for (const auto& f : fams)
      for (const auto& n : degrees) {
        const auto q = lorentz_Q<double>(f, n, 2);
        worst = std::max(worst, error_profile(f, q, pts).sup_error);
        ++cases;
      }
  }
  o.pass = worst <= 1e-10;
  o.detail = std::to_string(cases) + " (f, n) cases, sup error=" + fmt(worst) + " (tol 1e-10)";
  return o;
}

Outcome vertex_interpolation() {
  Outcome o;
  double worst_float = 0.0;
  int exact_bad = 0, cases = 0;
  for (int d = 1; d <= 2; ++d) {
    std::vector<DegreeVector> degrees = d == 1 ? std::vector<DegreeVector>{{1}, {4}, {9}, {16}}
                                               : std::vector<DegreeVector>{{2, 2}, {3, 5}, {6, 4}};
    std::vector<std::vector<Rational>> verts_q;
    std::vector<std::vector<double>> verts;
    for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
      std::vector<double> v(static_cast<std::size_t>(d));
      for (std::size_t j = 0; j < v.size(); ++j) v[j] = (mask >> j) & 1U ? 1.0 : 0.0;
      verts.push_back(v);
      verts_q.emplace_back(v.begin(), v.end());
    }
    for (const auto& name : builtin_names()) {
      const auto f = builtin(name, d);
      for (int r = 0; r <= 4; ++r) {
        if (r >= 2 && r > f.max_order) continue;
        for (const auto& n : degrees) {
          const auto qf = lorentz_Q<double>(f, n, r);
          for (const auto& v : verts) worst_float = std::max(worst_float, std::abs(f.eval(v) - qf.eval(v)));
          if (f.has_exact()) {
            const auto qe = lorentz_Q<Rational>(f, n, r);
            for (const auto& v : verts_q)
              if (qe.eval(v) != f.derivative_exact(MultiIndex::zeros(v.size()), v)) ++exact_bad;
          }
          ++cases;
        }
      }
    }
  }
  o.pass = exact_bad == 0 && worst_float <= 1e-12;
  o.detail = std::to_string(cases) + " cases, exact mismatches=" + std::to_string(exact_bad) +
             ", float max=" + fmt(worst_float) + " (tol 1e-12)";
  return o;
}

Outcome rate_stability() {
  Outcome o;
  const auto f = builtin("smooth_bump", 1);
  VerifyOptions opt;
  opt.builder = Builder::lorentz;
  opt.r = 2;
  opt.kind = BoundKind::thm1_ii;
  for (int n = 8; n <= 256; n *= 2) opt.degrees.push_back(DegreeVector{n});
  opt.points = default_verification_points(1);
  const auto rep = verify_bound(f, opt);
  bool decreasing = true;
  std::ostringstream ss;
  for (std::size_t k = 0; k < rep.per_degree.size(); ++k) {
    const auto& p = rep.per_degree[k];
    ss << p.n[0] << ":" << fmt(p.fitted_constant) << "/" << fmt(p.sup_error) << " ";
    if (k > 0 && !(p.sup_error < rep.per_degree[k - 1].sup_error)) decreasing = false;
  }
  const double spread = rep.constant_spread();
  o.pass = spread < 4.0 && decreasing && rep.zero_rhs_max_err <= 1e-12;
  o.detail = "spread=" + fmt(spread) + " decreasing=" + (decreasing ? "yes" : "no") + " n:C/sup " + ss.str();
  return o;
}

Outcome positivity() {
  Outcome o;
  const auto f = builtin("quadratic_shifted", 1);
  const auto rep = positivity_scan(f, 2, 200, true);
  o.pass = rep.exact && rep.threshold.has_value();
  o.detail = std::string("exact scan to n=200, n0=") + (rep.threshold ? std::to_string(*rep.threshold) : "none") +
             ", min coefficient at n=200=" + fmt(rep.trace.back().min_coefficient);
  return o;
}

Outcome dual_path() {
  Outcome o;
  double worst = 0.0;
  int cases = 0;
  for (int d = 1; d <= 2; ++d) {
    const auto pts = random_points(d, 1000, 2024 + static_cast<std::uint64_t>(d));
    std::vector<DegreeVector> degrees =
        d == 1 ? std::vector<DegreeVector>{{3}, {10}, {25}} : std::vector<DegreeVector>{{4, 4}, {6, 9}};
    for (const auto& name : builtin_names()) {
      const auto f = builtin(name, d);
      for (int r = 0; r <= 4; ++r)
        for (const auto& n : degrees) {
          const auto q = lorentz_Q<double>(f, n, r);
          for (const auto& x : pts) worst = std::max(worst, std::abs(q.eval(x) - eval_Q_pointwise(f, n, r, x)));
          ++cases;
        }
    }
  }
  o.pass = worst <= 1e-10;
  o.detail = std::to_string(cases) + " cases x 1000 points, max diff=" + fmt(worst) + " (tol 1e-10)";
  return o;
}

Outcome oracle_hygiene() {
  Outcome o;
  double worst = 0.0;
  std::string where;
  for (int d = 1; d <= 3; ++d)
    for (const auto& name : builtin_names()) {
      const auto rep = fd_check(builtin(name, d), 20);
      if (rep.max_rel_error >= worst) {
        worst = rep.max_rel_error;
        where = name + " d=" + std::to_string(d);
      }
    }
  o.pass = worst <= 1e-5;
  o.detail = "max relative error=" + fmt(worst) + " at " + where + " (tol 1e-5)";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"moment-constants", lemma_constants},  {"moment-equality", equality_cases},
      {"endpoint-vanishing", endpoint_vanishing}, {"schwartz-chain", schwartz_chain},
      {"divisibility", divisibility},          {"bernstein-bound", thm1_i},
      {"quadratic-exactness", quadratic_exactness}, {"vertex-interpolation", vertex_interpolation},
      {"rate-stability", rate_stability},      {"positivity-threshold", positivity},
      {"dual-path", dual_path},                {"oracle-hygiene", oracle_hygiene}};

  std::set<int> wanted;
  for (int k = 1; k < argc; ++k) wanted.insert(std::stoi(argv[k]));

  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const int id = static_cast<int>(k) + 1;
    if (!wanted.empty() && !wanted.count(id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] %02d %-22s %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", id, criteria[k].first.c_str(),
                o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  std::printf("%d failed\n", failures);
  return failures == 0 ? 0 : 1;
}
