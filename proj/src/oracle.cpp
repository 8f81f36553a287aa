#include "bernpos/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <random>
#include <stdexcept>

namespace bernpos {

double FunctionOracle::eval(std::span<const double> x) const {
  return deriv(MultiIndex::zeros(static_cast<std::size_t>(dim)), x);
}

double FunctionOracle::derivative(const MultiIndex& i, std::span<const double> x) const {
  if (i.order() > max_order)
    throw std::domain_error(name + ": derivative of order " + std::to_string(i.order()) + " exceeds max_order " +
                            std::to_string(max_order));
  return deriv(i, x);
}

Rational FunctionOracle::derivative_exact(const MultiIndex& i, std::span<const Rational> x) const {
  if (!exact_deriv) throw ContractViolation(name + ": no exact evaluator");
  if (i.order() > max_order) throw std::domain_error(name + ": derivative order exceeds max_order");
  return exact_deriv(i, x);
}

ScalarFn FunctionOracle::partial(const MultiIndex& i) const {
  if (i.order() > max_order) throw std::domain_error(name + ": derivative order exceeds max_order");
  return [d = deriv, i](std::span<const double> x) { return d(i, x); };
}

namespace {

template <class T>
T int_pow(const T& base, int e) {
  T out(1);
  for (int k = 0; k < e; ++k) out *= base;
  return out;
}

template <class T>
T from_big(const BigInt& v) {
  if constexpr (std::is_same_v<T, double>)
    return v.convert_to<double>();
  else
    return T(v);
}

template <class T>
T factorial_as(int k) {
  T out(1);
  for (int j = 2; j <= k; ++j) out *= T(j);
  return out;
}

long falling(int e, int k) {
  long out = 1;
  for (int j = 0; j < k; ++j) out *= e - j;
  return out;
}

template <class T>
T polynomial_deriv(const std::vector<MonomialTerm>& terms, const MultiIndex& a, std::span<const T> x) {
  T sum(0);
  for (const auto& term : terms) {
    T value;
    if constexpr (std::is_same_v<T, double>)
      value = term.coeff.convert_to<double>();
    else
      value = term.coeff;
    for (std::size_t j = 0; j < x.size() && value != T(0); ++j) {
      const int e = term.exponent[j];
      if (a[j] > e) {
        value = T(0);
        break;
      }
      value *= T(falling(e, a[j])) * int_pow(x[j], e - a[j]);
    }
    sum += value;
  }
  return sum;
}

// d^a g(u) with g(u) = 1/(1 + 25u), u = sum_j (x_j - 1/2)^2.  Expanding
// g(u(x+t)) in t: per axis u_j(x_j+t) - u_j(x_j) = t (a_j + t), a_j = 2(x_j - 1/2).
template <class T>
T runge_deriv(const MultiIndex& alpha, std::span<const T> x) {
  const std::size_t d = x.size();
  T u(0);
  std::vector<T> slope(d);
  for (std::size_t j = 0; j < d; ++j) {
    const T c = x[j] - T(1) / T(2);
    u += c * c;
    slope[j] = T(2) * c;
  }
  const T denom = T(1) + T(25) * u;

  // Enumerate k_j in [ceil(alpha_j/2), alpha_j].
  std::vector<int> lo(d), k(d);
  for (std::size_t j = 0; j < d; ++j) k[j] = lo[j] = (alpha[j] + 1) / 2;
  T total(0);
  while (true) {
    int K = 0;
    T term(1);
    for (std::size_t j = 0; j < d; ++j) {
      K += k[j];
      // C(k_j, alpha_j - k_j) a_j^{2k_j - alpha_j} / k_j!
      T factor = from_big<T>(binomial(k[j], alpha[j] - k[j]));
      factor *= int_pow(slope[j], 2 * k[j] - alpha[j]);
      factor /= factorial_as<T>(k[j]);
      term *= factor;
    }
    // g^{(K)}(u) = (-25)^K K! / (1+25u)^{K+1}
    T gk = int_pow(T(-25), K) * factorial_as<T>(K) / int_pow(denom, K + 1);
    total += gk * term;

    std::size_t j = 0;
    for (; j < d; ++j) {
      if (++k[j] <= alpha[j]) break;
      k[j] = lo[j];
    }
    if (j == d) break;
  }
  T afact(1);
  for (std::size_t j = 0; j < d; ++j) afact *= factorial_as<T>(alpha[j]);
  return total * afact;
}

}  // namespace

FunctionOracle make_polynomial(std::string name, int d, std::vector<MonomialTerm> terms, double lower_bound_m,
                               int max_order) {
  if (d < 1) throw std::domain_error("make_polynomial: need d >= 1");
  for (const auto& t : terms)
    if (t.exponent.dim() != static_cast<std::size_t>(d))
      throw ContractViolation("make_polynomial: exponent dimension mismatch");
  FunctionOracle f;
  f.name = std::move(name);
  f.dim = d;
  f.max_order = max_order;
  f.lower_bound_m = lower_bound_m;
  f.deriv = [terms](const MultiIndex& a, std::span<const double> x) { return polynomial_deriv<double>(terms, a, x); };
  f.exact_deriv = [terms](const MultiIndex& a, std::span<const Rational> x) {
    return polynomial_deriv<Rational>(terms, a, x);
  };
  // M_i = sum |c| of the differentiated terms (|x| <= 1 on the cube).
  for (int r = 0; r <= max_order; ++r)
    for (const auto& a : order_slice(d, r)) {
      double bound = 0.0;
      for (const auto& t : terms) {
        double v = std::abs(t.coeff.convert_to<double>());
        for (int j = 0; j < d; ++j) {
          if (a[j] > t.exponent[j]) {
            v = 0.0;
            break;
          }
          v *= static_cast<double>(falling(t.exponent[j], a[j]));
        }
        bound += v;
      }
      f.deriv_bounds[a] = bound;
    }
  return f;
}

namespace {

FunctionOracle smooth_bump(int d, double m) {
  // m + prod_j sin^2(pi x_j), sin^2(pi t) = (1 - cos 2 pi t)/2
  FunctionOracle f;
  f.name = "smooth_bump";
  f.dim = d;
  f.max_order = 8;
  f.lower_bound_m = m;
  f.deriv = [m](const MultiIndex& a, std::span<const double> x) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double prod = 1.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      const int k = a[j];
      if (k == 0)
        prod *= 0.5 * (1.0 - std::cos(two_pi * x[j]));
      else
        prod *= -0.5 * std::pow(two_pi, k) * std::cos(two_pi * x[j] + k * std::numbers::pi / 2);
    }
    return a.order() == 0 ? m + prod : prod;
  };
  for (int r = 0; r <= f.max_order; ++r)
    for (const auto& a : order_slice(d, r)) {
      double bound = 1.0;
      for (int j = 0; j < d; ++j)
        if (a[j] > 0) bound *= 0.5 * std::pow(2.0 * std::numbers::pi, a[j]);
      f.deriv_bounds[a] = r == 0 ? m + 1.0 : bound;
    }
  return f;
}

FunctionOracle runge_shifted(int d, double m) {
  // m + 1/(1 + 25 |x - 1/2|_2^2)
  FunctionOracle f;
  f.name = "runge_shifted";
  f.dim = d;
  f.max_order = 8;
  f.lower_bound_m = m + 1.0 / (1.0 + 6.25 * d);
  f.deriv = [m](const MultiIndex& a, std::span<const double> x) {
    const double v = runge_deriv<double>(a, x);
    return a.order() == 0 ? m + v : v;
  };
  const Rational mr(m);
  f.exact_deriv = [mr](const MultiIndex& a, std::span<const Rational> x) {
    const Rational v = runge_deriv<Rational>(a, x);
    return a.order() == 0 ? mr + v : v;
  };
  // Grid scan of |f^(i)|, then a shrinking pattern search from every grid
  // point within 10% of the grid maximum.  Peaks of the high-order partials
  // fall between grid nodes.
  const int pts = d <= 2 ? 101 : 11;
  for (int r = 0; r <= f.max_order; ++r)
    for (const auto& a : order_slice(d, r)) {
      auto value = [&](const std::vector<double>& x) { return std::abs(f.deriv(a, x)); };
      std::vector<std::pair<double, std::vector<double>>> samples;
      std::vector<int> idx(static_cast<std::size_t>(d), 0);
      std::vector<double> x(static_cast<std::size_t>(d));
      double grid_max = 0.0;
      while (true) {
        for (int j = 0; j < d; ++j) x[j] = idx[j] / double(pts - 1);
        samples.emplace_back(value(x), x);
        grid_max = std::max(grid_max, samples.back().first);
        int j = 0;
        for (; j < d; ++j) {
          if (++idx[j] < pts) break;
          idx[j] = 0;
        }
        if (j == d) break;
      }
      double bound = grid_max;
      for (auto& [v0, x0] : samples) {
        if (v0 < 0.9 * grid_max) continue;
        double best = v0;
        for (double step = 1.0 / (pts - 1); step > 1e-10; step *= 0.5) {
          bool moved = true;
          while (moved) {
            moved = false;
            for (int j = 0; j < d; ++j)
              for (double sgn : {-1.0, 1.0}) {
                auto y = x0;
                y[j] = std::clamp(y[j] + sgn * step, 0.0, 1.0);
                const double v = value(y);
                if (v > best) {
                  best = v;
                  x0 = std::move(y);
                  moved = true;
                }
              }
          }
        }
        bound = std::max(bound, best);
      }
      f.deriv_bounds[a] = bound;
    }
  return f;
}

double param(const std::map<std::string, double>& params, const std::string& key, double fallback) {
  const auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

}  // namespace

std::vector<std::string> builtin_names() {
  return {"const_c", "affine", "quadratic_shifted", "smooth_bump", "runge_shifted"};
}

FunctionOracle builtin(const std::string& name, int d, const std::map<std::string, double>& params) {
  if (d < 1) throw std::domain_error("builtin: need d >= 1");
  const auto ud = static_cast<std::size_t>(d);
  auto unit = [ud](std::size_t j, int e) {
    std::vector<int> v(ud, 0);
    v[j] = e;
    return MultiIndex(std::move(v));
  };
  if (name == "const_c") {
    const double c = param(params, "c", 2.0);
    return make_polynomial(name, d, {{MultiIndex::zeros(ud), Rational(c)}}, c);
  }
  if (name == "affine") {
    // 1 + (1/2) sum_j x_j
    std::vector<MonomialTerm> terms{{MultiIndex::zeros(ud), Rational(1)}};
    for (std::size_t j = 0; j < ud; ++j) terms.push_back({unit(j, 1), Rational(1, 2)});
    return make_polynomial(name, d, std::move(terms), 1.0);
  }
  if (name == "quadratic_shifted") {
    // 1 + sum_j x_j (1 - x_j)
    std::vector<MonomialTerm> terms{{MultiIndex::zeros(ud), Rational(1)}};
    for (std::size_t j = 0; j < ud; ++j) {
      terms.push_back({unit(j, 1), Rational(1)});
      terms.push_back({unit(j, 2), Rational(-1)});
    }
    auto f = make_polynomial(name, d, std::move(terms), 1.0);
    f.deriv_bounds[MultiIndex::zeros(ud)] = 1.0 + 0.25 * d;
    return f;
  }
  if (name == "smooth_bump") return smooth_bump(d, param(params, "m", 0.5));
  if (name == "runge_shifted") return runge_shifted(d, param(params, "m", 0.5));
  throw std::out_of_range("builtin: unknown function '" + name + "'");
}

FunctionOracle transform(const FunctionOracle& f, double scale, double shift) {
  if (!(scale > 0.0)) throw std::domain_error("transform: scale must be positive");
  if (scale == 1.0 && shift == 0.0) return f;
  FunctionOracle g = f;
  g.deriv = [base = f.deriv, scale, shift](const MultiIndex& a, std::span<const double> x) {
    const double v = scale * base(a, x);
    return a.order() == 0 ? v + shift : v;
  };
  if (f.exact_deriv) {
    g.exact_deriv = [base = f.exact_deriv, s = Rational(scale), b = Rational(shift)](const MultiIndex& a,
                                                                                    std::span<const Rational> x) {
      const Rational v = s * base(a, x);
      return a.order() == 0 ? Rational(v + b) : v;
    };
  }
  g.lower_bound_m = scale * f.lower_bound_m + shift;
  for (auto& [a, bound] : g.deriv_bounds) bound = a.order() == 0 ? scale * bound + std::abs(shift) : scale * bound;
  return g;
}

double sampled_minimum(const FunctionOracle& f, std::uint64_t seed) {
  double lo = std::numeric_limits<double>::infinity();
  std::vector<double> x(static_cast<std::size_t>(f.dim));
  if (f.dim <= 2) {
    const int pts = 101;
    std::vector<int> idx(static_cast<std::size_t>(f.dim), 0);
    while (true) {
      for (int j = 0; j < f.dim; ++j) x[j] = idx[j] / double(pts - 1);
      lo = std::min(lo, f.eval(x));
      int j = 0;
      for (; j < f.dim; ++j) {
        if (++idx[j] < pts) break;
        idx[j] = 0;
      }
      if (j == f.dim) break;
    }
    return lo;
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int k = 0; k < 10000; ++k) {
    for (auto& v : x) v = unif(rng);
    lo = std::min(lo, f.eval(x));
  }
  return lo;
}

FdReport fd_check(const FunctionOracle& f, int samples, std::uint64_t seed, double step) {
  FdReport report;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.05, 0.95);
  std::vector<double> x(static_cast<std::size_t>(f.dim));
  for (int s = 0; s < samples; ++s) {
    for (auto& v : x) v = unif(rng);
    for (int r = 1; r <= f.max_order; ++r)
      for (const auto& a : order_slice(f.dim, r)) {
        // differentiate along the first axis with a nonzero entry
        std::size_t axis = 0;
        while (a[axis] == 0) ++axis;
        std::vector<int> lower(a.entries().begin(), a.entries().end());
        --lower[axis];
        const MultiIndex b(std::move(lower));
        auto xp = x, xm = x;
        xp[axis] += step;
        xm[axis] -= step;
        const double fd = (f.deriv(b, xp) - f.deriv(b, xm)) / (2.0 * step);
        const double exact = f.deriv(a, x);
        const auto it = f.deriv_bounds.find(a);
        const double scale = std::max(1.0, it == f.deriv_bounds.end() ? std::abs(exact) : it->second);
        const double err = std::abs(fd - exact) / scale;
        ++report.checked;
        if (err > report.max_rel_error || report.worst_point.empty()) {
          report.max_rel_error = std::max(report.max_rel_error, err);
          report.worst_index = a;
          report.worst_point = x;
        }
      }
  }
  return report;
}

double default_modulus_step(int d, double h) {
  if (d == 1) return std::min(1e-3, h / 32.0);
  if (d == 2) return std::min(1e-2, h / 4.0);
  return h / 4.0;
}

namespace {

// Sliding max - min over windows of w+1 consecutive samples.
double window_oscillation(const std::vector<double>& v, std::size_t w) {
  std::deque<std::size_t> hi, lo;
  double best = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    while (!hi.empty() && v[hi.back()] <= v[i]) hi.pop_back();
    while (!lo.empty() && v[lo.back()] >= v[i]) lo.pop_back();
    hi.push_back(i);
    lo.push_back(i);
    if (hi.front() + w < i) hi.pop_front();
    if (lo.front() + w < i) lo.pop_front();
    best = std::max(best, v[hi.front()] - v[lo.front()]);
  }
  return best;
}

}  // namespace

ModulusEstimate modulus(const ScalarFn& f, int d, double h, double grid_step, std::uint64_t seed,
                        std::size_t mc_pairs) {
  if (!(h > 0.0)) throw std::domain_error("modulus: need h > 0");
  if (!(grid_step > 0.0) || grid_step > h / 4.0 * (1.0 + 1e-12))
    throw ContractViolation("modulus: grid_step must be positive and at most h/4");
  ModulusEstimate est{h, 0.0, grid_step};

  if (d == 1 || d == 2) {
    const auto intervals = static_cast<std::size_t>(std::ceil(1.0 / grid_step - 1e-9));
    const auto w = static_cast<std::size_t>(std::floor(h * static_cast<double>(intervals) + 1e-9));
    est.grid_step = 1.0 / static_cast<double>(intervals);
    const std::size_t pts = intervals + 1;
    auto coord = [intervals](std::size_t i) { return static_cast<double>(i) / static_cast<double>(intervals); };
    if (d == 1) {
      std::vector<double> v(pts);
      double x[1];
      for (std::size_t i = 0; i < pts; ++i) {
        x[0] = coord(i);
        v[i] = f(x);
      }
      est.value = window_oscillation(v, w);
      return est;
    }
    std::vector<double> v(pts * pts);
    double x[2];
    for (std::size_t i = 0; i < pts; ++i)
      for (std::size_t j = 0; j < pts; ++j) {
        x[0] = coord(i);
        x[1] = coord(j);
        v[i * pts + j] = f(x);
      }
    const auto sw = static_cast<long>(w);
    const auto sp = static_cast<long>(pts);
    double best = 0.0;
    // offsets (a, b) with |a| + |b| <= w, one of each +- pair
    for (long a = 0; a <= sw; ++a)
      for (long b = -(sw - a); b <= sw - a; ++b) {
        if (a == 0 && b <= 0) continue;
        const long j0 = std::max(0L, -b), j1 = std::min(sp, sp - b);
        for (long i = 0; i + a < sp; ++i)
          for (long j = j0; j < j1; ++j)
            best = std::max(best, std::abs(v[static_cast<std::size_t>((i + a) * sp + j + b)] -
                                           v[static_cast<std::size_t>(i * sp + j)]));
      }
    est.value = best;
    return est;
  }

  // d >= 3: random pairs, t = s + v with |v|_1 <= h, rejected if t leaves the cube.
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::exponential_distribution<double> expo(1.0);
  const auto ud = static_cast<std::size_t>(d);
  std::vector<double> s(ud), t(ud), e(ud);
  double best = 0.0;
  for (std::size_t k = 0; k < mc_pairs; ++k) {
    double total = 0.0;
    for (auto& ej : e) total += (ej = expo(rng));
    const double radius = h * std::pow(unif(rng), 1.0 / d);
    bool inside = true;
    for (std::size_t j = 0; j < ud; ++j) {
      s[j] = unif(rng);
      const double step = radius * e[j] / total * (unif(rng) < 0.5 ? -1.0 : 1.0);
      t[j] = s[j] + step;
      if (t[j] < 0.0 || t[j] > 1.0) inside = false;
    }
    if (inside) best = std::max(best, std::abs(f(t) - f(s)));
  }
  est.value = best;
  return est;
}

double modulus_order_r(const FunctionOracle& f, int r, double h, double grid_step, std::uint64_t seed) {
  if (r > f.max_order) throw std::domain_error("modulus_order_r: r exceeds available derivatives");
  double best = 0.0;
  for (const auto& a : order_slice(f.dim, r)) best = std::max(best, modulus(f.partial(a), f.dim, h, grid_step, seed).value);
  return best;
}

}  // namespace bernpos
