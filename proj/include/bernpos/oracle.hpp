#pragma once

#include "bernpos/combinatorics.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bernpos {

using DerivFn = std::function<double(const MultiIndex&, std::span<const double>)>;
using ExactDerivFn = std::function<Rational(const MultiIndex&, std::span<const Rational>)>;
using ScalarFn = std::function<double(std::span<const double>)>;

/// Target function on [0,1]^d with analytic partial derivatives up to
/// max_order and the class bounds m <= f <= M_0, |f^(i)| <= M_i.
struct FunctionOracle {
  std::string name;
  int dim = 1;
  int max_order = 0;
  DerivFn deriv;
  ExactDerivFn exact_deriv;  // empty unless values are rational at rational points
  double lower_bound_m = 0.0;
  std::map<MultiIndex, double> deriv_bounds;  // M_i, keyed by multi-index; zeros() holds M_0

  double eval(std::span<const double> x) const;
  /// Throws std::domain_error when <i> exceeds max_order.
  double derivative(const MultiIndex& i, std::span<const double> x) const;

  bool has_exact() const { return static_cast<bool>(exact_deriv); }
  Rational derivative_exact(const MultiIndex& i, std::span<const Rational> x) const;

  /// The oracle for f^(i) itself, with max_order reduced by <i>.
  ScalarFn partial(const MultiIndex& i) const;
};

/// Polynomial sum_t c_t x^{e_t}; exact in both backends.
struct MonomialTerm {
  MultiIndex exponent;
  Rational coeff;
};
FunctionOracle make_polynomial(std::string name, int d, std::vector<MonomialTerm> terms, double lower_bound_m,
                               int max_order = 8);

/// Registry lookup.  Names: const_c, affine, quadratic_shifted, smooth_bump,
/// runge_shifted.  Recognised parameters: "c" (const_c), "m" (smooth_bump,
/// runge_shifted).  Unknown names throw std::out_of_range.
FunctionOracle builtin(const std::string& name, int d, const std::map<std::string, double>& params = {});
std::vector<std::string> builtin_names();

/// a*f + b with a > 0.
FunctionOracle transform(const FunctionOracle& f, double scale, double shift);

/// Grid minimum of f: 101^d grid for d <= 2, 10^4 seeded random points otherwise.
double sampled_minimum(const FunctionOracle& f, std::uint64_t seed = 1);

struct FdReport {
  double max_rel_error = 0.0;
  MultiIndex worst_index;
  std::vector<double> worst_point;
  int checked = 0;
};

/// Each analytic derivative f^(i), 1 <= <i> <= max_order, against the central
/// difference of f^(i - e_j) at step `step`.  Relative error is scaled by
/// max(1, M_i).
FdReport fd_check(const FunctionOracle& f, int samples, std::uint64_t seed = 7, double step = 1e-4);

struct ModulusEstimate {
  double h = 0.0;
  double value = 0.0;
  double grid_step = 0.0;
};

/// max |f(s) - f(t)| over grid pairs with |s - t|_1 <= h.  Requires
/// grid_step <= h/4.  d >= 3 uses `mc_pairs` random pairs drawn with `seed`.
ModulusEstimate modulus(const ScalarFn& f, int d, double h, double grid_step, std::uint64_t seed = 1,
                        std::size_t mc_pairs = 1000000);

/// Grid step used when the caller does not pick one.
double default_modulus_step(int d, double h);

/// omega^(r)(h): max over <i> = r of omega(f^(i), h).
double modulus_order_r(const FunctionOracle& f, int r, double h, double grid_step, std::uint64_t seed = 1);

}  // namespace bernpos
