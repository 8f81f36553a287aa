#pragma once

// The multivariate Bernstein operator and Lorentz's corrected operator
//
//   Q_{n,r}^f = B^f - sum_{i=2}^{r} 1/i! sum_{<i>=i} C(<i>; i) prod_j Tbar_{n_j i_j}(x_j) Q_{n,r-i}^{f^(i)},
//   Q_{n,0}^f = Q_{n,1}^f = B^f,
//
// assembled as tensor-product Bernstein polynomials of degree n + (r,...,r).

#include "bernpos/bernstein.hpp"
#include "bernpos/combinatorics.hpp"
#include "bernpos/oracle.hpp"

#include <span>
#include <vector>

namespace bernpos {

/// Coefficients f^(alpha)(i/n) on lattice(n).
template <class T>
TensorBernstein<T> sample_on_lattice(const FunctionOracle& f, const MultiIndex& alpha, const DegreeVector& n);

/// B_n^f: coefficients f(i/n), degree n.
template <class T>
TensorBernstein<T> bernstein_op(const FunctionOracle& f, const DegreeVector& n);

/// Q_{n,r}^f with degree exactly n + r on every axis.  Rational needs
/// f.has_exact().
template <class T>
TensorBernstein<T> lorentz_Q(const FunctionOracle& f, const DegreeVector& n, int r);

/// Pointwise evaluation of the same recursion: direct basis sums for B and
/// direct moment sums for Tbar, no coefficient tensors.
double eval_Q_pointwise(const FunctionOracle& f, const DegreeVector& n, int r, std::span<const double> x);

/// B_n^f(x) by direct summation over the lattice.
double eval_B_direct(const FunctionOracle& f, const MultiIndex& alpha, const DegreeVector& n,
                     std::span<const double> x);

struct ErrorProfile {
  std::vector<std::vector<double>> points;
  std::vector<double> f_values;
  std::vector<double> p_values;
  std::vector<double> abs_errors;
  double sup_error = 0.0;
  std::vector<double> sup_location;
  std::vector<double> vertex_errors;  // 2^d entries, vertex bits in axis order (axis 0 most significant)
};

/// Tensor grid: per_axis equispaced coordinates on [0,1] per axis, optionally
/// with 10^{-k} and 1 - 10^{-k} (k = 1..6) added to every axis.
std::vector<std::vector<double>> tensor_grid(int d, int per_axis, bool near_endpoints = false);

/// Seeded uniform points in the cube (for d >= 3); vertices are not included.
std::vector<std::vector<double>> random_points(int d, std::size_t count, std::uint64_t seed);

ErrorProfile error_profile(const FunctionOracle& f, const TensorBernstein<double>& p,
                           const std::vector<std::vector<double>>& points);
ErrorProfile error_profile(const FunctionOracle& f, const TensorBernstein<double>& p, double grid_step);

/// CSV with header x_1,...,x_d,f,P,abs_err.
std::string profile_csv(const ErrorProfile& profile);

}  // namespace bernpos
