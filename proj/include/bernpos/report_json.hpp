#pragma once

#include "bernpos/analysis.hpp"
#include "bernpos/moments.hpp"

#include <json.hpp>

#include <string>

namespace bernpos {

/// {case: {func, d, n, r}, max_ratio, fitted_constant, vertex_max_err, violations: [...], ...}
nlohmann::json to_json(const BoundReport& report);
nlohmann::json to_json(const Lemma1Report& report);
nlohmann::json to_json(const PositivityReport& report);
nlohmann::json to_json(const DensityReport& report);

/// n,s,x,Tbar_star,rhs,ratio rows for s = 0..s_max on grid_size equispaced points.
/// rhs uses A_s for s <= 4 and A_s = 1 beyond; ratio is nan where rhs = 0.
std::string moments_csv(int n, int s_max, int grid_size);

/// n_1..n_d,x_1..x_d,observed,rhs,ratio for every case with rhs > 0.
std::string bound_cases_csv(const BoundReport& report);

std::string format_double(double v);

}  // namespace bernpos
