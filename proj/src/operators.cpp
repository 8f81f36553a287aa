#include "bernpos/operators.hpp"

#include "bernpos/moments.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

namespace bernpos {

namespace {

template <class T>
T factorial_as(int k) {
  T out(1);
  for (int j = 2; j <= k; ++j) out *= T(j);
  return out;
}

template <class T>
T big_as(const BigInt& v) {
  if constexpr (std::is_same_v<T, double>)
    return v.convert_to<double>();
  else
    return T(v);
}

template <class T>
class QBuilder {
public:
  QBuilder(const FunctionOracle& f, const DegreeVector& n, int r) : f_(f), n_(n) {
    if constexpr (std::is_same_v<T, Rational>)
      if (!f.has_exact()) throw ContractViolation("lorentz_Q: exact backend needs an exact oracle");
    for (std::size_t j = 0; j < n.dim(); ++j) tables_.push_back(central_moments(n[j], std::max(r, 1)));
  }

  const TensorBernstein<T>& build(const MultiIndex& alpha, int k) {
    const auto key = std::make_pair(alpha, k);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    const DegreeVector target = n_.plus(k);
    TensorBernstein<T> result = sample_on_lattice<T>(f_, alpha, n_).elevate_to(target);
    for (int i = 2; i <= k; ++i) {
      const T inv_fact = T(1) / factorial_as<T>(i);
      for (const auto& mi : order_slice(static_cast<int>(n_.dim()), i)) {
        // Tbar_{n,1} vanishes identically.
        bool skip = false;
        for (int e : mi.entries()) skip = skip || e == 1;
        if (skip) continue;

        TensorBernstein<T> term = build(alpha + mi, k - i);
        for (std::size_t j = 0; j < n_.dim(); ++j)
          if (mi[j] >= 2) term = term.multiply_axis(j, moment(j, mi[j]));
        for (std::size_t j = 0; j < n_.dim(); ++j)
          if (term.degree()[j] > target[j]) throw std::logic_error("lorentz_Q: correction term exceeds degree n + r");
        const T weight = -big_as<T>(multinomial(mi)) * inv_fact;
        result = add(result, scale(term.elevate_to(target), weight));
      }
    }
    return memo_.emplace(key, std::move(result)).first->second;
  }

private:
  const BernsteinPoly1D<T>& moment(std::size_t axis, int s) {
    const auto key = std::make_pair(axis, s);
    if (auto it = moments_.find(key); it != moments_.end()) return it->second;
    return moments_.emplace(key, scaled_moment_bernstein<T>(tables_[axis], s)).first->second;
  }

  const FunctionOracle& f_;
  DegreeVector n_;
  std::vector<MomentTable> tables_;
  std::map<std::pair<std::size_t, int>, BernsteinPoly1D<T>> moments_;
  std::map<std::pair<MultiIndex, int>, TensorBernstein<T>> memo_;
};

}  // namespace

template <class T>
TensorBernstein<T> sample_on_lattice(const FunctionOracle& f, const MultiIndex& alpha, const DegreeVector& n) {
  if (n.dim() != static_cast<std::size_t>(f.dim)) throw ContractViolation("degree vector dimension differs from f");
  const auto points = lattice(n);
  std::vector<T> coeffs;
  coeffs.reserve(points.size());
  std::vector<T> x(n.dim());
  for (const auto& i : points) {
    for (std::size_t j = 0; j < n.dim(); ++j) {
      if constexpr (std::is_same_v<T, double>)
        x[j] = static_cast<double>(i[j]) / n[j];
      else
        x[j] = Rational(i[j], n[j]);
    }
    if constexpr (std::is_same_v<T, double>)
      coeffs.push_back(f.derivative(alpha, x));
    else
      coeffs.push_back(f.derivative_exact(alpha, x));
  }
  return TensorBernstein<T>(n, std::move(coeffs));
}

template <class T>
TensorBernstein<T> bernstein_op(const FunctionOracle& f, const DegreeVector& n) {
  return sample_on_lattice<T>(f, MultiIndex::zeros(n.dim()), n);
}

template <class T>
TensorBernstein<T> lorentz_Q(const FunctionOracle& f, const DegreeVector& n, int r) {
  if (r < 0) throw std::domain_error("lorentz_Q: need r >= 0");
  if (r >= 2 && r > f.max_order)
    throw std::domain_error("lorentz_Q: r = " + std::to_string(r) + " exceeds max_order of " + f.name);
  if (n.dim() != static_cast<std::size_t>(f.dim)) throw ContractViolation("degree vector dimension differs from f");
  QBuilder<T> builder(f, n, r);
  return builder.build(MultiIndex::zeros(n.dim()), r);
}

template TensorBernstein<double> sample_on_lattice<double>(const FunctionOracle&, const MultiIndex&,
                                                           const DegreeVector&);
template TensorBernstein<Rational> sample_on_lattice<Rational>(const FunctionOracle&, const MultiIndex&,
                                                               const DegreeVector&);
template TensorBernstein<double> bernstein_op<double>(const FunctionOracle&, const DegreeVector&);
template TensorBernstein<Rational> bernstein_op<Rational>(const FunctionOracle&, const DegreeVector&);
template TensorBernstein<double> lorentz_Q<double>(const FunctionOracle&, const DegreeVector&, int);
template TensorBernstein<Rational> lorentz_Q<Rational>(const FunctionOracle&, const DegreeVector&, int);

double eval_B_direct(const FunctionOracle& f, const MultiIndex& alpha, const DegreeVector& n,
                     std::span<const double> x) {
  if (x.size() != n.dim()) throw ContractViolation("eval_B_direct: dimension mismatch");
  std::vector<std::vector<double>> basis(n.dim());
  for (std::size_t j = 0; j < n.dim(); ++j)
    for (int k = 0; k <= n[j]; ++k) basis[j].push_back(basis_eval(n[j], k, x[j]));
  double sum = 0.0;
  std::vector<double> node(n.dim());
  for (const auto& i : lattice(n)) {
    double w = 1.0;
    for (std::size_t j = 0; j < n.dim() && w != 0.0; ++j) w *= basis[j][static_cast<std::size_t>(i[j])];
    if (w == 0.0) continue;
    for (std::size_t j = 0; j < n.dim(); ++j) node[j] = static_cast<double>(i[j]) / n[j];
    sum += w * f.derivative(alpha, node);
  }
  return sum;
}

double eval_Q_pointwise(const FunctionOracle& f, const DegreeVector& n, int r, std::span<const double> x) {
  if (r < 0) throw std::domain_error("eval_Q_pointwise: need r >= 0");
  if (r >= 2 && r > f.max_order) throw std::domain_error("eval_Q_pointwise: r exceeds max_order");
  if (x.size() != n.dim() || n.dim() != static_cast<std::size_t>(f.dim))
    throw ContractViolation("eval_Q_pointwise: dimension mismatch");
  for (double v : x)
    if (v < 0.0 || v > 1.0) throw std::domain_error("eval_Q_pointwise: x outside the cube");

  std::map<std::pair<std::size_t, int>, double> tbar;
  auto moment = [&](std::size_t j, int s) {
    auto [it, fresh] = tbar.try_emplace({j, s}, 0.0);
    if (fresh) it->second = s == 0 ? 1.0 : central_moment_direct_scaled(n[j], s, x[j]);
    return it->second;
  };
  std::map<std::pair<MultiIndex, int>, double> memo;
  std::function<double(const MultiIndex&, int)> q = [&](const MultiIndex& alpha, int k) -> double {
    if (auto it = memo.find({alpha, k}); it != memo.end()) return it->second;
    double value = eval_B_direct(f, alpha, n, x);
    for (int i = 2; i <= k; ++i) {
      const double inv_fact = 1.0 / factorial_as<double>(i);
      for (const auto& mi : order_slice(static_cast<int>(n.dim()), i)) {
        double prod = multinomial(mi).convert_to<double>() * inv_fact;
        for (std::size_t j = 0; j < n.dim(); ++j) prod *= moment(j, mi[j]);
        if (prod == 0.0) continue;
        value -= prod * q(alpha + mi, k - i);
      }
    }
    memo.emplace(std::make_pair(alpha, k), value);
    return value;
  };
  return q(MultiIndex::zeros(n.dim()), r);
}

std::vector<std::vector<double>> tensor_grid(int d, int per_axis, bool near_endpoints) {
  if (d < 1 || per_axis < 2) throw ContractViolation("tensor_grid: need d >= 1 and at least 2 points per axis");
  std::set<double> axis;
  for (int i = 0; i < per_axis; ++i) axis.insert(static_cast<double>(i) / (per_axis - 1));
  if (near_endpoints)
    for (int k = 1; k <= 6; ++k) {
      axis.insert(std::pow(10.0, -k));
      axis.insert(1.0 - std::pow(10.0, -k));
    }
  const std::vector<double> coords(axis.begin(), axis.end());
  std::vector<std::vector<double>> out;
  std::vector<std::size_t> idx(static_cast<std::size_t>(d), 0);
  while (true) {
    std::vector<double> p(static_cast<std::size_t>(d));
    for (std::size_t j = 0; j < p.size(); ++j) p[j] = coords[idx[j]];
    out.push_back(std::move(p));
    std::size_t j = idx.size();
    while (j > 0) {
      --j;
      if (++idx[j] < coords.size()) break;
      idx[j] = 0;
      if (j == 0) return out;
    }
  }
}

std::vector<std::vector<double>> random_points(int d, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<std::vector<double>> out(count, std::vector<double>(static_cast<std::size_t>(d)));
  for (auto& p : out)
    for (auto& v : p) v = unif(rng);
  return out;
}

ErrorProfile error_profile(const FunctionOracle& f, const TensorBernstein<double>& p,
                           const std::vector<std::vector<double>>& points) {
  if (p.dim() != static_cast<std::size_t>(f.dim)) throw ContractViolation("error_profile: dimension mismatch");
  ErrorProfile out;
  out.points = points;
  for (const auto& x : points) {
    const double fv = f.eval(x);
    const double pv = p.eval(x);
    const double err = std::abs(fv - pv);
    out.f_values.push_back(fv);
    out.p_values.push_back(pv);
    out.abs_errors.push_back(err);
    if (err > out.sup_error || out.sup_location.empty()) {
      out.sup_error = std::max(out.sup_error, err);
      out.sup_location = x;
    }
  }
  const std::size_t d = p.dim();
  std::vector<double> v(d);
  for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
    for (std::size_t j = 0; j < d; ++j) v[j] = (mask >> (d - 1 - j)) & 1U ? 1.0 : 0.0;
    out.vertex_errors.push_back(std::abs(f.eval(v) - p.eval(v)));
  }
  return out;
}

ErrorProfile error_profile(const FunctionOracle& f, const TensorBernstein<double>& p, double grid_step) {
  if (!(grid_step > 0.0) || grid_step > 1.0) throw ContractViolation("error_profile: grid_step must be in (0,1]");
  const int per_axis = static_cast<int>(std::lround(1.0 / grid_step)) + 1;
  return error_profile(f, p, tensor_grid(f.dim, per_axis));
}

std::string profile_csv(const ErrorProfile& profile) {
  std::string out;
  const std::size_t d = profile.points.empty() ? 0 : profile.points.front().size();
  for (std::size_t j = 0; j < d; ++j) out += "x_" + std::to_string(j + 1) + ",";
  out += "f,P,abs_err\n";
  char buf[64];
  auto put = [&](double v, char sep) {
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    out.append(buf, res.ptr);
    out += sep;
  };
  for (std::size_t k = 0; k < profile.points.size(); ++k) {
    for (double v : profile.points[k]) put(v, ',');
    put(profile.f_values[k], ',');
    put(profile.p_values[k], ',');
    put(profile.abs_errors[k], '\n');
  }
  return out;
}

}  // namespace bernpos
