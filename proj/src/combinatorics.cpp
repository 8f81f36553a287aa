#include "bernpos/combinatorics.hpp"

#include <cmath>
#include <functional>
#include <numeric>
#include <string>

namespace bernpos {

MultiIndex::MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {
  for (int e : entries_)
    if (e < 0) throw std::domain_error("MultiIndex: negative entry " + std::to_string(e));
}

MultiIndex::MultiIndex(std::initializer_list<int> entries) : MultiIndex(std::vector<int>(entries)) {}

int MultiIndex::order() const { return std::accumulate(entries_.begin(), entries_.end(), 0); }

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
  if (other.dim() != dim()) throw ContractViolation("MultiIndex: dimension mismatch in +");
  std::vector<int> out(entries_);
  for (std::size_t j = 0; j < out.size(); ++j) out[j] += other.entries_[j];
  return MultiIndex(std::move(out));
}

DegreeVector::DegreeVector(std::vector<int> entries) : entries_(std::move(entries)) {
  for (int e : entries_)
    if (e < 1) throw std::domain_error("DegreeVector: entries must be >= 1, got " + std::to_string(e));
}

DegreeVector::DegreeVector(std::initializer_list<int> entries) : DegreeVector(std::vector<int>(entries)) {}

std::size_t DegreeVector::lattice_size() const {
  std::size_t size = 1;
  for (int e : entries_) size *= static_cast<std::size_t>(e + 1);
  return size;
}

DegreeVector DegreeVector::plus(int r) const {
  std::vector<int> out(entries_);
  for (int& e : out) e += r;
  return DegreeVector(std::move(out));
}

BigInt binomial(int n, int k) {
  if (k < 0 || k > n) throw std::domain_error("binomial: need 0 <= k <= n");
  k = std::min(k, n - k);
  BigInt result = 1;
  // Each partial product is C(n-k+i, i), hence exact division.
  for (int i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

double binomial_real(int n, int k) {
  if (k < 0 || k > n) throw std::domain_error("binomial_real: need 0 <= k <= n");
  k = std::min(k, n - k);
  double result = 1.0;
  // Exact while the running product stays below 2^53.
  for (int i = 1; i <= k; ++i) result = result * (n - k + i) / i;
  return result;
}

BigInt multinomial(const MultiIndex& i) {
  BigInt result = 1;
  int partial = 0;
  for (int e : i.entries()) {
    partial += e;
    result *= binomial(partial, e);
  }
  return result;
}

std::size_t lattice_offset(std::span<const int> shape_minus_one, std::span<const int> i) {
  std::size_t offset = 0;
  for (std::size_t j = 0; j < shape_minus_one.size(); ++j)
    offset = offset * static_cast<std::size_t>(shape_minus_one[j] + 1) + static_cast<std::size_t>(i[j]);
  return offset;
}

std::vector<MultiIndex> lattice(const DegreeVector& n) {
  const std::size_t d = n.dim();
  std::vector<MultiIndex> out;
  out.reserve(n.lattice_size());
  std::vector<int> cur(d, 0);
  while (true) {
    out.emplace_back(cur);
    std::size_t j = d;
    while (j > 0) {
      --j;
      if (++cur[j] <= n[j]) break;
      cur[j] = 0;
      if (j == 0) return out;
    }
    if (d == 0) return out;
  }
}

std::vector<MultiIndex> order_slice(int d, int r) {
  if (d < 1 || r < 0) throw std::domain_error("order_slice: need d >= 1, r >= 0");
  std::vector<MultiIndex> out;
  std::vector<int> cur(static_cast<std::size_t>(d), 0);
  std::function<void(int, int)> fill = [&](int axis, int remaining) {
    if (axis == d - 1) {
      cur[static_cast<std::size_t>(axis)] = remaining;
      out.emplace_back(cur);
      return;
    }
    for (int e = 0; e <= remaining; ++e) {
      cur[static_cast<std::size_t>(axis)] = e;
      fill(axis + 1, remaining - e);
    }
  };
  fill(0, r);
  return out;
}

double taxicab(std::span<const double> x) {
  double sum = 0.0;
  for (double v : x) sum += std::abs(v);
  return sum;
}

}  // namespace bernpos
