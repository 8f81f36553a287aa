#pragma once
// Independent reference implementations: exact rationals, no shared code with
// the library beyond the number types.

#include "bernpos/combinatorics.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace oracles {

using bernpos::BigInt;
using bernpos::Rational;

inline BigInt pascal(int n, int k) {
  std::vector<BigInt> row{1};
  for (int m = 1; m <= n; ++m) {
    std::vector<BigInt> next(row.size() + 1, 0);
    for (std::size_t j = 0; j < row.size(); ++j) {
      next[j] += row[j];
      next[j + 1] += row[j];
    }
    row = std::move(next);
  }
  return row[static_cast<std::size_t>(k)];
}

inline Rational ipow(const Rational& x, int e) {
  Rational out = 1;
  for (int j = 0; j < e; ++j) out *= x;
  return out;
}

inline Rational basis(int n, int k, const Rational& x) {
  return Rational(pascal(n, k)) * ipow(x, k) * ipow(1 - x, n - k);
}

/// sum_k c_k p_nk(x)
inline Rational bernstein_sum(const std::vector<Rational>& c, const Rational& x) {
  const int n = static_cast<int>(c.size()) - 1;
  Rational out = 0;
  for (int k = 0; k <= n; ++k) out += c[static_cast<std::size_t>(k)] * basis(n, k, x);
  return out;
}

/// sum_k (k - nx)^s p_nk(x)
inline Rational central_moment(int n, int s, const Rational& x) {
  Rational out = 0;
  for (int k = 0; k <= n; ++k) out += ipow(Rational(k) - n * x, s) * basis(n, k, x);
  return out;
}

/// sum_k |k - nx|^s p_nk(x)
inline Rational abs_moment(int n, int s, const Rational& x) {
  Rational out = 0;
  for (int k = 0; k <= n; ++k) {
    Rational dev = Rational(k) - n * x;
    if (dev < 0) dev = -dev;
    out += ipow(dev, s) * basis(n, k, x);
  }
  return out;
}

/// Dyadic-ish random rational in [0,1] so exact arithmetic stays cheap.
inline Rational random_unit(std::mt19937_64& rng, int denom = 97) {
  std::uniform_int_distribution<int> d(0, denom);
  return Rational(d(rng), denom);
}

}  // namespace oracles
