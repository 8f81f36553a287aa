#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

namespace bernpos {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Raised when an argument violates an operation's contract (shape or size
/// mismatches, grids that are too coarse, missing oracles).
class ContractViolation : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// d-tuple of nonnegative integers: derivative orders, lattice points.
class MultiIndex {
public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> entries);
  MultiIndex(std::initializer_list<int> entries);

  static MultiIndex zeros(std::size_t d) { return MultiIndex(std::vector<int>(d, 0)); }

  std::size_t dim() const { return entries_.size(); }
  int order() const;
  int operator[](std::size_t j) const { return entries_[j]; }
  std::span<const int> entries() const { return entries_; }

  MultiIndex operator+(const MultiIndex& other) const;

  auto operator<=>(const MultiIndex&) const = default;

private:
  std::vector<int> entries_;
};

/// Per-axis polynomial degree; every entry is at least 1.
class DegreeVector {
public:
  DegreeVector() = default;
  explicit DegreeVector(std::vector<int> entries);
  DegreeVector(std::initializer_list<int> entries);

  static DegreeVector uniform(std::size_t d, int n) { return DegreeVector(std::vector<int>(d, n)); }

  std::size_t dim() const { return entries_.size(); }
  int operator[](std::size_t j) const { return entries_[j]; }
  std::span<const int> entries() const { return entries_; }

  /// Number of lattice points, prod (n_j + 1).
  std::size_t lattice_size() const;

  DegreeVector plus(int r) const;

  auto operator<=>(const DegreeVector&) const = default;

private:
  std::vector<int> entries_;
};

/// Exact C(n, k). Throws std::domain_error unless 0 <= k <= n.
BigInt binomial(int n, int k);

/// C(n, k) rounded to double; relative error of a few ulps.
double binomial_real(int n, int k);

/// <i>! / (i_1! ... i_d!).
BigInt multinomial(const MultiIndex& i);

/// All 0 <= i <= n, row-major (last axis fastest).
std::vector<MultiIndex> lattice(const DegreeVector& n);

/// Row-major linear offset of i inside lattice(n).
std::size_t lattice_offset(std::span<const int> shape_minus_one, std::span<const int> i);

/// All d-entry multi-indices of order exactly r, lexicographic.
std::vector<MultiIndex> order_slice(int d, int r);

double taxicab(std::span<const double> x);

}  // namespace bernpos
