#pragma once

// Empirical checks of the degree-of-approximation estimates:
//
//   |f - B_n^f|(x) <= (d+1) w^(r)(max_j delta_j) [sum_j delta_j]^r,       r = 0, 1
//   |f - Q_{n,r}^f|(x) <= C w^(r)(D_n(x)) D_n(x)^{r-2} [sum_j delta_j]^2,  r >= 2
//
// with delta_j = delta_{n_j}(x_j) and w^(r) estimated numerically.  Points
// where the right side vanishes are checked separately (error must vanish).

#include "bernpos/bernstein.hpp"
#include "bernpos/operators.hpp"
#include "bernpos/oracle.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace bernpos {

/// Memoised w^(r)(h) for one oracle, using default_modulus_step.
class ModulusCache {
public:
  ModulusCache(const FunctionOracle& f, int r, std::uint64_t seed = 1);
  double operator()(double h);
  int order() const { return r_; }

private:
  const FunctionOracle& f_;
  int r_;
  std::uint64_t seed_;
  std::map<double, double> cache_;
};

double rhs_thm1_i(const FunctionOracle& f, const DegreeVector& n, std::span<const double> x, int r,
                  ModulusCache& omega);
double rhs_thm1_i(const FunctionOracle& f, const DegreeVector& n, std::span<const double> x, int r);

double rhs_thm1_ii(const FunctionOracle& f, const DegreeVector& n, std::span<const double> x, int r, double constant,
                   ModulusCache& omega);
double rhs_thm1_ii(const FunctionOracle& f, const DegreeVector& n, std::span<const double> x, int r, double constant);

enum class Builder { bernstein, lorentz };
enum class BoundKind { thm1_i, thm1_ii };

std::string to_string(Builder b);
std::string to_string(BoundKind k);

struct BoundCase {
  DegreeVector n;
  std::vector<double> x;
  double observed = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
};

struct PerDegreeSummary {
  DegreeVector n;
  double fitted_constant = 0.0;  // max observed/rhs at this n
  double sup_error = 0.0;
  double vertex_max_err = 0.0;
};

struct BoundReport {
  std::string func;
  int d = 1;
  int r = 0;
  Builder builder = Builder::bernstein;
  BoundKind kind = BoundKind::thm1_i;
  std::optional<double> declared_constant;
  double slack = 1e-12;
  std::optional<std::uint64_t> seed;

  std::vector<BoundCase> cases;  // rhs > 0 only
  std::vector<PerDegreeSummary> per_degree;
  double max_ratio = 0.0;
  double fitted_constant = 0.0;
  double vertex_max_err = 0.0;
  double zero_rhs_max_err = 0.0;
  std::vector<BoundCase> violations;

  /// max/min of the per-degree fitted constants (1 when fewer than two).
  double constant_spread() const;
};

struct VerifyOptions {
  Builder builder = Builder::bernstein;
  int r = 0;
  BoundKind kind = BoundKind::thm1_i;
  std::vector<DegreeVector> degrees;
  std::vector<std::vector<double>> points;
  /// thm1_i: the (d+1) factor is already inside the rhs, so this is the grid
  /// slack multiplier (1.05).  thm1_ii: optional asserted C.
  std::optional<double> declared_constant;
  double slack = 1e-12;
  std::optional<std::uint64_t> seed;
};

BoundReport verify_bound(const FunctionOracle& f, const VerifyOptions& options);

/// Default verification points: 1001 (+ near-endpoint) for d = 1, 41^2 for d = 2,
/// 10^4 seeded random points plus the vertices for d >= 3.
std::vector<std::vector<double>> default_verification_points(int d, std::uint64_t seed = 1);

struct PositivityStep {
  int n = 0;
  double min_coefficient = 0.0;
  MultiIndex argmin;
  bool nonnegative = false;
};

struct PositivityReport {
  std::string func;
  int r = 0;
  int n_max = 0;
  bool exact = false;
  std::optional<int> threshold;
  std::vector<PositivityStep> trace;
};

/// Scans n = 1..n_max (uniform degree on every axis) and returns the smallest
/// n0 with min_coefficient(Q_{n,r}) >= 0 for every n in [n0, n_max].  Exact
/// rationals when `exact` and the oracle supports it; otherwise doubles with
/// tolerance 1e-12.  Throws std::domain_error when f.lower_bound_m <= 0.
PositivityReport positivity_scan(const FunctionOracle& f, int r, int n_max, bool exact = true);

struct DensityReport {
  TensorBernstein<double> density;
  double normalization = 1.0;      // integral of Q before normalising
  double target_integral = 1.0;    // quadrature of f
  double mass_mismatch = 0.0;      // |normalization / target_integral - 1|
  std::vector<double> vertex_errors;
  double interior_median_error = 0.0;
  double interior_max_error = 0.0;
};

/// Q_{n,r}^f scaled to unit mass.  Pointwise errors are |f - Q| / integral(Q),
/// i.e. both sides divided by the same constant, so vertex errors vanish; the
/// gap between the two masses is reported on its own.
DensityReport density_demo(const FunctionOracle& f, const DegreeVector& n, int r);

/// Tensor Gauss-Legendre quadrature of f over the cube (30 nodes per axis).
double cube_integral(const FunctionOracle& f);

}  // namespace bernpos
