#pragma once

// Central and absolute moments of the binomial kernel,
//   T_{ns}(x)  = sum_k (k - nx)^s p_{nk}(x),
//   T*_{ns}(x) = sum_k |k - nx|^s p_{nk}(x),
// their n^{-s}-scaled variants, the local scales delta_n / Delta_n / D_n and
// the sharpened moment bound  Tbar*_{ns} <= A_s delta^{min(2,s)} Delta^{max(0,s-2)}.

#include "bernpos/bernstein.hpp"
#include "bernpos/combinatorics.hpp"

#include <optional>
#include <span>
#include <vector>

namespace bernpos {

/// Exact monomial coefficients of T_{ns}, s = 0..s_max.
struct MomentTable {
  int n = 0;
  int s_max = 0;
  std::vector<std::vector<Rational>> polys;

  double eval(int s, double x) const;
  Rational eval_exact(int s, const Rational& x) const;

  /// Monomial coefficients of Tbar_{ns} = n^{-s} T_{ns}.
  std::vector<Rational> scaled(int s) const;
};

MomentTable central_moments(int n, int s_max);

/// Bernstein form (degree max(s,1)) of Tbar_{ns}; exact, then rounded for double.
template <class T>
BernsteinPoly1D<T> scaled_moment_bernstein(const MomentTable& table, int s) {
  const auto mono = table.scaled(s);
  const auto exact = from_monomial<Rational>(mono, std::max(s, 1));
  if constexpr (std::is_same_v<T, Rational>) {
    return exact;
  } else {
    std::vector<double> c;
    c.reserve(exact.coeffs().size());
    for (const auto& v : exact.coeffs()) c.push_back(v.template convert_to<double>());
    return BernsteinPoly1D<double>(std::move(c));
  }
}

/// Exact quotient and remainder of a monomial polynomial divided by x(1-x).
struct PolyDivision {
  std::vector<Rational> quotient;
  std::vector<Rational> remainder;
};
PolyDivision divide_by_x_one_minus_x(std::span<const Rational> mono);

double delta_n(int n, double t);
double Delta_n(int n, double t);
double D_n(const DegreeVector& n, std::span<const double> x);

/// Binomial probabilities p_{n0}(x)..p_{nn}(x) computed in extended precision.
std::vector<double> binomial_pmf(int n, double x);

/// T*_{ns}(x) by direct O(n) summation.
double abs_moment(int n, int s, double x);
/// Tbar*_{ns}(x) = n^{-s} T*_{ns}(x).
double abs_moment_scaled(int n, int s, double x);
/// Tbar_{ns}(x) by direct signed summation (independent of the recurrence).
double central_moment_direct_scaled(int n, int s, double x);

/// A_0..A_4 = 1, 1, 1, 2, 4.  Throws std::out_of_range for s > 4.
double lemma1_constant(int s);

/// A_s delta_n(x)^{min(2,s)} Delta_n(x)^{max(0,s-2)}.
double lemma1_rhs(int n, int s, double x, double A_s);

/// [0,1] on grid_size equispaced points plus 10^{-k} and 1-10^{-k}, k=1..6.
std::vector<double> lemma1_grid(int grid_size);

struct Lemma1Violation {
  int n;
  int s;
  double x;
  double observed;
  double rhs;
};

struct Lemma1SReport {
  int s = 0;
  std::optional<double> declared_constant;  // A_s when known
  double fitted_constant = 0.0;              // sup Tbar*/(delta^.. Delta^..) over rhs > 0
  std::vector<std::pair<int, double>> fitted_by_n;
  double zero_rhs_max_abs = 0.0;             // max Tbar* where the rhs vanishes
  std::optional<double> equality_max_dev;    // s = 0, 2: max |Tbar*/rhs - 1|
  std::vector<Lemma1Violation> violations;
};

struct Lemma1Report {
  int n_min = 1, n_max = 1, s_min = 0, s_max = 0, grid_size = 0;
  double slack = 1e-12;
  std::vector<Lemma1SReport> per_s;

  bool has_violations() const;
};

struct Lemma1Options {
  int n_min = 1;
  int n_max = 200;
  int s_min = 0;
  int s_max = 8;
  int grid_size = 201;
  double slack = 1e-12;
  /// Replaces the built-in A_s for s <= 4 (negative controls).
  std::vector<std::pair<int, double>> constant_overrides;
};

Lemma1Report lemma1_check(const Lemma1Options& options);

}  // namespace bernpos
