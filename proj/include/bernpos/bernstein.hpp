#pragma once

// Univariate and tensor-product polynomials in Bernstein form.
//
// Everything is templated on the scalar so the same algebra runs in double
// (production) and in exact rationals (test oracle and positivity
// certification).  Coefficient tensors are stored row-major in lattice order:
// the last axis varies fastest.

#include "bernpos/combinatorics.hpp"

#include <algorithm>
#include <cmath>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bernpos {

namespace detail {

template <class T>
T binomial_as(int n, int k) {
  if constexpr (std::is_same_v<T, double>)
    return binomial_real(n, k);
  else
    return T(binomial(n, k));
}

template <class T>
void check_unit(const T& x, const char* what) {
  if (x < T(0) || x > T(1)) throw std::domain_error(std::string(what) + ": x outside [0,1]");
}

// Single-step degree elevation n -> n+1; convex combination of neighbours.
template <class T>
std::vector<T> elevate_once(const std::vector<T>& c) {
  const int n = static_cast<int>(c.size()) - 1;
  std::vector<T> out(c.size() + 1);
  out.front() = c.front();
  out.back() = c.back();
  for (int k = 1; k <= n; ++k) {
    const T a = T(k) / T(n + 1);
    out[k] = a * c[k - 1] + (T(1) - a) * c[k];
  }
  return out;
}

template <class T>
std::vector<T> elevate_coeffs(std::vector<T> c, int m) {
  const int n = static_cast<int>(c.size()) - 1;
  if (m < n) throw std::domain_error("degree_elevate: target degree below current degree");
  for (int deg = n; deg < m; ++deg) c = elevate_once(c);
  return c;
}

template <class T>
std::vector<T> multiply_coeffs(std::span<const T> p, std::span<const T> q) {
  const int dp = static_cast<int>(p.size()) - 1;
  const int dq = static_cast<int>(q.size()) - 1;
  std::vector<T> bp(p.size()), bq(q.size());
  for (int j = 0; j <= dp; ++j) bp[j] = binomial_as<T>(dp, j) * p[j];
  for (int j = 0; j <= dq; ++j) bq[j] = binomial_as<T>(dq, j) * q[j];
  std::vector<T> out(static_cast<std::size_t>(dp + dq + 1), T(0));
  for (int k = 0; k <= dp + dq; ++k) {
    T acc(0);
    for (int j = std::max(0, k - dq); j <= std::min(dp, k); ++j) acc += bp[j] * bq[k - j];
    out[k] = acc / binomial_as<T>(dp + dq, k);
  }
  return out;
}

template <class T>
T de_casteljau(std::vector<T> c, const T& x) {
  const T y = T(1) - x;
  for (std::size_t len = c.size(); len > 1; --len)
    for (std::size_t k = 0; k + 1 < len; ++k) c[k] = y * c[k] + x * c[k + 1];
  return c.front();
}

}  // namespace detail

/// p_{nk}(x) = C(n,k) x^k (1-x)^(n-k).  Uses log space for n > 50.
double basis_eval(int n, int k, double x);

/// prod_j p_{n_j i_j}(x_j).
double tensor_basis_eval(const DegreeVector& n, const MultiIndex& i, std::span<const double> x);

template <class T>
class BernsteinPoly1D {
public:
  explicit BernsteinPoly1D(std::vector<T> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw ContractViolation("BernsteinPoly1D: need at least one coefficient");
  }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<T>& coeffs() const { return coeffs_; }

  T eval(const T& x) const {
    detail::check_unit(x, "BernsteinPoly1D::eval");
    return detail::de_casteljau(coeffs_, x);
  }

private:
  std::vector<T> coeffs_;
};

template <class T>
BernsteinPoly1D<T> degree_elevate(const BernsteinPoly1D<T>& p, int m) {
  return BernsteinPoly1D<T>(detail::elevate_coeffs(p.coeffs(), m));
}

template <class T>
BernsteinPoly1D<T> multiply(const BernsteinPoly1D<T>& p, const BernsteinPoly1D<T>& q) {
  return BernsteinPoly1D<T>(detail::multiply_coeffs<T>(p.coeffs(), q.coeffs()));
}

/// Monomial coefficients a_0..a_m (a_j multiplies x^j) to Bernstein form of
/// degree max(m, min_degree).
template <class T>
BernsteinPoly1D<T> from_monomial(std::span<const T> mono, int min_degree = 0) {
  const int m = std::max<int>(static_cast<int>(mono.size()) - 1, 0);
  const int n = std::max(m, min_degree);
  std::vector<T> b(static_cast<std::size_t>(n + 1), T(0));
  // x^j = sum_{k>=j} C(k,j)/C(n,j) p_{nk}
  for (int j = 0; j < static_cast<int>(mono.size()); ++j) {
    if (mono[j] == T(0)) continue;
    const T denom = detail::binomial_as<T>(n, j);
    for (int k = j; k <= n; ++k) b[k] += mono[j] * detail::binomial_as<T>(k, j) / denom;
  }
  return BernsteinPoly1D<T>(std::move(b));
}

template <class T>
std::vector<T> to_monomial(const BernsteinPoly1D<T>& p) {
  const int n = p.degree();
  std::vector<T> a(static_cast<std::size_t>(n + 1), T(0));
  // p_{nk}(x) = C(n,k) sum_{i=k}^n C(n-k, i-k) (-1)^(i-k) x^i
  for (int k = 0; k <= n; ++k) {
    const T scaled = detail::binomial_as<T>(n, k) * p.coeffs()[k];
    if (scaled == T(0)) continue;
    for (int i = k; i <= n; ++i) {
      const T term = scaled * detail::binomial_as<T>(n - k, i - k);
      if ((i - k) % 2 == 0)
        a[i] += term;
      else
        a[i] -= term;
    }
  }
  return a;
}

template <class T>
class TensorBernstein {
public:
  TensorBernstein(DegreeVector degree, std::vector<T> coeffs)
      : degree_(std::move(degree)), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != degree_.lattice_size())
      throw ContractViolation("TensorBernstein: coefficient count " + std::to_string(coeffs_.size()) +
                              " does not match lattice size " + std::to_string(degree_.lattice_size()));
  }

  static TensorBernstein constant(const DegreeVector& degree, const T& c) {
    return TensorBernstein(degree, std::vector<T>(degree.lattice_size(), c));
  }

  static TensorBernstein from_1d(const BernsteinPoly1D<T>& p) {
    return TensorBernstein(DegreeVector{std::max(p.degree(), 1)},
                           detail::elevate_coeffs(p.coeffs(), std::max(p.degree(), 1)));
  }

  std::size_t dim() const { return degree_.dim(); }
  const DegreeVector& degree() const { return degree_; }
  const std::vector<T>& coeffs() const { return coeffs_; }

  const T& coeff(const MultiIndex& i) const { return coeffs_[lattice_offset(degree_.entries(), i.entries())]; }

  /// Per-axis de Casteljau, contracting the last axis first.
  T eval(std::span<const T> x) const {
    if (x.size() != dim()) throw ContractViolation("TensorBernstein::eval: point dimension mismatch");
    for (const T& xj : x) detail::check_unit(xj, "TensorBernstein::eval");
    std::vector<T> work = coeffs_;
    std::size_t outer = work.size();
    for (std::size_t axis = dim(); axis-- > 0;) {
      const std::size_t len = static_cast<std::size_t>(degree_[axis] + 1);
      outer /= len;
      std::vector<T> next(outer);
      std::vector<T> fiber(len);
      for (std::size_t o = 0; o < outer; ++o) {
        std::copy_n(work.begin() + static_cast<std::ptrdiff_t>(o * len), len, fiber.begin());
        next[o] = detail::de_casteljau(fiber, x[axis]);
      }
      work = std::move(next);
    }
    return work.front();
  }

  /// Rewrites axis `axis` at degree m >= current.
  TensorBernstein elevate_axis(std::size_t axis, int m) const {
    return map_axis(axis, m, [m](std::vector<T> fiber) { return detail::elevate_coeffs(std::move(fiber), m); });
  }

  TensorBernstein elevate_to(const DegreeVector& target) const {
    if (target.dim() != dim()) throw ContractViolation("elevate_to: dimension mismatch");
    TensorBernstein out = *this;
    for (std::size_t axis = 0; axis < dim(); ++axis)
      if (target[axis] != degree_[axis]) out = out.elevate_axis(axis, target[axis]);
    return out;
  }

  /// Product with a polynomial in x_axis alone.
  TensorBernstein multiply_axis(std::size_t axis, const BernsteinPoly1D<T>& q) const {
    const int m = degree_[axis] + q.degree();
    return map_axis(axis, m, [&q](std::vector<T> fiber) {
      return detail::multiply_coeffs<T>(std::span<const T>(fiber), std::span<const T>(q.coeffs()));
    });
  }

private:
  template <class F>
  TensorBernstein map_axis(std::size_t axis, int new_degree, F&& f) const {
    if (axis >= dim()) throw ContractViolation("axis out of range");
    const std::size_t len = static_cast<std::size_t>(degree_[axis] + 1);
    const std::size_t new_len = static_cast<std::size_t>(new_degree + 1);
    std::size_t inner = 1;
    for (std::size_t j = axis + 1; j < dim(); ++j) inner *= static_cast<std::size_t>(degree_[j] + 1);
    const std::size_t outer = coeffs_.size() / (len * inner);

    std::vector<int> new_deg(degree_.entries().begin(), degree_.entries().end());
    new_deg[axis] = new_degree;
    std::vector<T> out(outer * new_len * inner);
    std::vector<T> fiber(len);
    for (std::size_t o = 0; o < outer; ++o)
      for (std::size_t in = 0; in < inner; ++in) {
        for (std::size_t k = 0; k < len; ++k) fiber[k] = coeffs_[(o * len + k) * inner + in];
        std::vector<T> res = f(fiber);
        for (std::size_t k = 0; k < new_len; ++k) out[(o * new_len + k) * inner + in] = std::move(res[k]);
      }
    return TensorBernstein(DegreeVector(std::move(new_deg)), std::move(out));
  }

  DegreeVector degree_;
  std::vector<T> coeffs_;
};

template <class T>
T eval(const BernsteinPoly1D<T>& p, const T& x) {
  return p.eval(x);
}

template <class T>
T eval(const TensorBernstein<T>& p, std::span<const T> x) {
  return p.eval(x);
}

template <class T>
TensorBernstein<T> add(const TensorBernstein<T>& p, const TensorBernstein<T>& q) {
  if (p.degree() != q.degree()) throw ContractViolation("add: degree vectors differ; elevate first");
  std::vector<T> out(p.coeffs());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] += q.coeffs()[k];
  return TensorBernstein<T>(p.degree(), std::move(out));
}

template <class T>
TensorBernstein<T> scale(const TensorBernstein<T>& p, const T& c) {
  std::vector<T> out(p.coeffs());
  for (T& v : out) v *= c;
  return TensorBernstein<T>(p.degree(), std::move(out));
}

/// Smallest coefficient and its lattice index (first occurrence).
template <class T>
std::pair<T, MultiIndex> min_coefficient(const TensorBernstein<T>& p) {
  const auto& c = p.coeffs();
  const auto it = std::min_element(c.begin(), c.end());
  std::size_t offset = static_cast<std::size_t>(it - c.begin());
  std::vector<int> idx(p.dim());
  for (std::size_t j = p.dim(); j-- > 0;) {
    const auto len = static_cast<std::size_t>(p.degree()[j] + 1);
    idx[j] = static_cast<int>(offset % len);
    offset /= len;
  }
  return {*it, MultiIndex(std::move(idx))};
}

/// Integral over [0,1]^d: every basis function integrates to 1/(n_j+1) per axis.
template <class T>
T integral(const TensorBernstein<T>& p) {
  T sum(0);
  for (const T& v : p.coeffs()) sum += v;
  return sum / T(static_cast<long>(p.degree().lattice_size()));
}

inline TensorBernstein<double> to_double(const TensorBernstein<Rational>& p) {
  std::vector<double> out;
  out.reserve(p.coeffs().size());
  for (const auto& v : p.coeffs()) out.push_back(v.template convert_to<double>());
  return TensorBernstein<double>(p.degree(), std::move(out));
}

// Text serialization:
//   bernstein d n_1 ... n_d
//   <one coefficient per line, lattice order, shortest round-trip decimal>
std::string to_text(const TensorBernstein<double>& p);
TensorBernstein<double> tensor_from_text(std::string_view text);

}  // namespace bernpos
