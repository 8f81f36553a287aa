#include "bernpos/report_json.hpp"

#include <charconv>
#include <cmath>

namespace bernpos {

using nlohmann::json;

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

json degree_json(const DegreeVector& n) { return json(std::vector<int>(n.entries().begin(), n.entries().end())); }

json case_json(const BoundCase& c) {
  return {{"n", degree_json(c.n)}, {"x", c.x}, {"observed", c.observed}, {"rhs", c.rhs}, {"ratio", c.ratio}};
}

}  // namespace

json to_json(const BoundReport& r) {
  json degrees = json::array();
  json per_degree = json::array();
  for (const auto& p : r.per_degree) {
    degrees.push_back(degree_json(p.n));
    per_degree.push_back({{"n", degree_json(p.n)},
                          {"fitted_constant", p.fitted_constant},
                          {"sup_error", p.sup_error},
                          {"vertex_max_err", p.vertex_max_err}});
  }
  json violations = json::array();
  for (const auto& v : r.violations) violations.push_back(case_json(v));
  json out = {{"case", {{"func", r.func}, {"d", r.d}, {"n", degrees}, {"r", r.r}}},
              {"builder", to_string(r.builder)},
              {"bound", to_string(r.kind)},
              {"max_ratio", r.max_ratio},
              {"fitted_constant", r.fitted_constant},
              {"constant_spread", r.constant_spread()},
              {"vertex_max_err", r.vertex_max_err},
              {"zero_rhs_max_err", r.zero_rhs_max_err},
              {"slack", r.slack},
              {"points_checked", r.cases.size()},
              {"per_degree", per_degree},
              {"violations", violations}};
  out["declared_constant"] = r.declared_constant ? json(*r.declared_constant) : json(nullptr);
  out["seed"] = r.seed ? json(*r.seed) : json(nullptr);
  return out;
}

json to_json(const Lemma1Report& r) {
  json per_s = json::array();
  for (const auto& s : r.per_s) {
    json violations = json::array();
    for (const auto& v : s.violations)
      violations.push_back({{"n", v.n}, {"s", v.s}, {"x", v.x}, {"observed", v.observed}, {"rhs", v.rhs}});
    json by_n = json::array();
    for (const auto& [n, c] : s.fitted_by_n) by_n.push_back({n, c});
    json entry = {{"s", s.s},
                  {"fitted_constant", s.fitted_constant},
                  {"zero_rhs_max_abs", s.zero_rhs_max_abs},
                  {"fitted_by_n", by_n},
                  {"violations", violations}};
    entry["declared_constant"] = s.declared_constant ? json(*s.declared_constant) : json(nullptr);
    if (s.equality_max_dev) entry["equality_max_dev"] = *s.equality_max_dev;
    per_s.push_back(std::move(entry));
  }
  return {{"case", {{"kind", "lemma1"}, {"n_min", r.n_min}, {"n_max", r.n_max}, {"s_min", r.s_min}, {"s_max", r.s_max},
                    {"grid", r.grid_size}}},
          {"slack", r.slack},
          {"has_violations", r.has_violations()},
          {"per_s", per_s}};
}

json to_json(const PositivityReport& r) {
  json trace = json::array();
  for (const auto& s : r.trace)
    trace.push_back({{"n", s.n},
                     {"min_coefficient", s.min_coefficient},
                     {"argmin", std::vector<int>(s.argmin.entries().begin(), s.argmin.entries().end())},
                     {"nonnegative", s.nonnegative}});
  json out = {{"case", {{"func", r.func}, {"r", r.r}, {"n_max", r.n_max}}}, {"exact", r.exact}, {"trace", trace}};
  out["threshold"] = r.threshold ? json(*r.threshold) : json(nullptr);
  return out;
}

json to_json(const DensityReport& r) {
  return {{"degree", degree_json(r.density.degree())},
          {"normalization", r.normalization},
          {"target_integral", r.target_integral},
          {"mass_mismatch", r.mass_mismatch},
          {"density_integral", integral(r.density)},
          {"vertex_errors", r.vertex_errors},
          {"interior_median_error", r.interior_median_error},
          {"interior_max_error", r.interior_max_error}};
}

std::string moments_csv(int n, int s_max, int grid_size) {
  if (grid_size < 2) throw ContractViolation("moments_csv: need at least 2 grid points");
  std::string out = "n,s,x,Tbar_star,rhs,ratio\n";
  for (int s = 0; s <= s_max; ++s) {
    const double A = s <= 4 ? lemma1_constant(s) : 1.0;
    for (int i = 0; i < grid_size; ++i) {
      const double x = static_cast<double>(i) / (grid_size - 1);
      const double t = abs_moment_scaled(n, s, x);
      const double rhs = lemma1_rhs(n, s, x, A);
      const double ratio = rhs > 0.0 ? t / rhs : std::nan("");
      out += std::to_string(n) + "," + std::to_string(s) + "," + format_double(x) + "," + format_double(t) + "," +
             format_double(rhs) + "," + format_double(ratio) + "\n";
    }
  }
  return out;
}

std::string bound_cases_csv(const BoundReport& r) {
  std::string out;
  for (int j = 1; j <= r.d; ++j) out += "n_" + std::to_string(j) + ",";
  for (int j = 1; j <= r.d; ++j) out += "x_" + std::to_string(j) + ",";
  out += "observed,rhs,ratio\n";
  for (const auto& c : r.cases) {
    for (int v : c.n.entries()) out += std::to_string(v) + ",";
    for (double v : c.x) out += format_double(v) + ",";
    out += format_double(c.observed) + "," + format_double(c.rhs) + "," + format_double(c.ratio) + "\n";
  }
  return out;
}

}  // namespace bernpos
