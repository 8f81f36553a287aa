#include "bernpos/bernstein.hpp"

#include <charconv>
#include <sstream>

namespace bernpos {

namespace {

double log_binomial(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace

double basis_eval(int n, int k, double x) {
  if (n < 0 || k < 0 || k > n) throw std::domain_error("basis_eval: need 0 <= k <= n");
  detail::check_unit(x, "basis_eval");
  if (x == 0.0) return k == 0 ? 1.0 : 0.0;
  if (x == 1.0) return k == n ? 1.0 : 0.0;
  if (n > 50) return std::exp(log_binomial(n, k) + k * std::log(x) + (n - k) * std::log1p(-x));
  return binomial_real(n, k) * std::pow(x, k) * std::pow(1.0 - x, n - k);
}

double tensor_basis_eval(const DegreeVector& n, const MultiIndex& i, std::span<const double> x) {
  if (i.dim() != n.dim() || x.size() != n.dim())
    throw ContractViolation("tensor_basis_eval: dimension mismatch");
  double value = 1.0;
  for (std::size_t j = 0; j < n.dim(); ++j) {
    if (i[j] > n[j]) throw std::domain_error("tensor_basis_eval: index exceeds degree");
    value *= basis_eval(n[j], i[j], x[j]);
  }
  return value;
}

std::string to_text(const TensorBernstein<double>& p) {
  std::string out = "bernstein " + std::to_string(p.dim());
  for (int n : p.degree().entries()) out += " " + std::to_string(n);
  out += '\n';
  char buf[64];
  for (double v : p.coeffs()) {
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    out.append(buf, res.ptr);
    out += '\n';
  }
  return out;
}

TensorBernstein<double> tensor_from_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string tag;
  std::size_t d = 0;
  if (!(in >> tag >> d) || tag != "bernstein" || d == 0)
    throw std::invalid_argument("tensor_from_text: bad header, expected 'bernstein d n_1 ... n_d'");
  std::vector<int> degree(d);
  for (auto& n : degree)
    if (!(in >> n)) throw std::invalid_argument("tensor_from_text: truncated degree list");
  DegreeVector dv(std::move(degree));
  std::vector<double> coeffs;
  coeffs.reserve(dv.lattice_size());
  std::string token;
  while (in >> token) {
    double v = 0.0;
    auto res = std::from_chars(token.data(), token.data() + token.size(), v);
    if (res.ec != std::errc{} || res.ptr != token.data() + token.size())
      throw std::invalid_argument("tensor_from_text: bad coefficient '" + token + "'");
    coeffs.push_back(v);
  }
  return TensorBernstein<double>(std::move(dv), std::move(coeffs));
}

}  // namespace bernpos
