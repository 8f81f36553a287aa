#include "bernpos/cli.hpp"

#include "bernpos/analysis.hpp"
#include "bernpos/moments.hpp"
#include "bernpos/operators.hpp"
#include "bernpos/report_json.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace bernpos::cli {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

template <class T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  auto res = std::from_chars(value.data(), value.data() + value.size(), out);
  if (res.ec != std::errc{} || res.ptr != value.data() + value.size())
    throw UsageError("config: bad value for '" + key + "': '" + value + "'");
  return out;
}

bool exact_backend(const RunConfig& cfg, const FunctionOracle& f) {
  if (cfg.backend == "float") return false;
  if (cfg.backend == "exact") {
    if (!f.has_exact()) throw UsageError("backend exact: function '" + f.name + "' has no exact evaluator");
    return true;
  }
  return f.has_exact();
}

void check_backend(const RunConfig& cfg) {
  if (cfg.backend != "float" && cfg.backend != "exact" && cfg.backend != "auto")
    throw UsageError("backend must be float, exact or auto");
}

void emit(const RunConfig& cfg, const std::string& content, std::ostream& out) {
  if (cfg.out.empty())
    out << content;
  else
    write_atomic(cfg.out, content);
}

}  // namespace

std::string RunConfig::to_text() const {
  std::ostringstream s;
  s << "command=" << command << '\n';
  s << "func=" << func << '\n';
  s << "scale=" << format_double(scale) << '\n';
  s << "shift=" << format_double(shift) << '\n';
  if (c) s << "c=" << format_double(*c) << '\n';
  if (m) s << "m=" << format_double(*m) << '\n';
  s << "d=" << d << '\n';
  s << "n=" << n << '\n';
  s << "r=" << r << '\n';
  s << "s_max=" << s_max << '\n';
  s << "n_max=" << n_max << '\n';
  s << "grid=" << grid << '\n';
  s << "bound=" << bound << '\n';
  if (constant) s << "constant=" << format_double(*constant) << '\n';
  s << "out=" << out << '\n';
  s << "profile=" << profile << '\n';
  s << "backend=" << backend << '\n';
  if (seed) s << "seed=" << *seed << '\n';
  return s.str();
}

RunConfig RunConfig::parse(std::string_view text) {
  RunConfig cfg;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError("config line " + std::to_string(lineno) + ": expected key=value");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key == "command") cfg.command = value;
    else if (key == "func") cfg.func = value;
    else if (key == "scale") cfg.scale = parse_number<double>(key, value);
    else if (key == "shift") cfg.shift = parse_number<double>(key, value);
    else if (key == "c") cfg.c = parse_number<double>(key, value);
    else if (key == "m") cfg.m = parse_number<double>(key, value);
    else if (key == "d") cfg.d = parse_number<int>(key, value);
    else if (key == "n") cfg.n = value;
    else if (key == "r") cfg.r = parse_number<int>(key, value);
    else if (key == "s_max") cfg.s_max = parse_number<int>(key, value);
    else if (key == "n_max") cfg.n_max = parse_number<int>(key, value);
    else if (key == "grid") cfg.grid = parse_number<int>(key, value);
    else if (key == "bound") cfg.bound = value;
    else if (key == "constant") cfg.constant = parse_number<double>(key, value);
    else if (key == "out") cfg.out = value;
    else if (key == "profile") cfg.profile = value;
    else if (key == "backend") cfg.backend = value;
    else if (key == "seed") cfg.seed = parse_number<std::uint64_t>(key, value);
    else throw UsageError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
  }
  return cfg;
}

std::vector<DegreeVector> parse_degrees(const std::string& spec, int d) {
  if (spec.empty()) throw UsageError("missing degree (--n)");
  std::vector<DegreeVector> out;
  std::stringstream list(spec);
  std::string item;
  while (std::getline(list, item, ',')) {
    item = trim(item);
    std::vector<int> entries;
    std::stringstream axes(item);
    std::string part;
    while (std::getline(axes, part, ':')) entries.push_back(parse_number<int>("n", trim(part)));
    if (entries.size() == 1) entries.assign(static_cast<std::size_t>(d), entries.front());
    if (entries.size() != static_cast<std::size_t>(d))
      throw UsageError("degree '" + item + "' does not have " + std::to_string(d) + " axes");
    try {
      out.emplace_back(std::move(entries));
    } catch (const std::domain_error& e) {
      throw UsageError(e.what());
    }
  }
  return out;
}

FunctionOracle make_oracle(const RunConfig& cfg) {
  if (cfg.func.empty()) throw UsageError("missing --func");
  if (cfg.d < 1) throw UsageError("--d must be >= 1");
  std::map<std::string, double> params;
  if (cfg.c) params["c"] = *cfg.c;
  if (cfg.m) params["m"] = *cfg.m;
  try {
    return transform(builtin(cfg.func, cfg.d, params), cfg.scale, cfg.shift);
  } catch (const std::out_of_range& e) {
    throw UsageError(e.what());
  } catch (const std::domain_error& e) {
    throw UsageError(e.what());
  }
}

void write_atomic(const std::string& path, std::string_view content) {
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f) throw std::runtime_error("write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw std::runtime_error("cannot rename into '" + path + "'");
  }
}

int cmd_moments(const RunConfig& cfg, std::ostream& out) {
  const auto degrees = parse_degrees(cfg.n, 1);
  if (degrees.size() != 1) throw UsageError("moments takes a single --n");
  if (cfg.s_max < 0) throw UsageError("--s-max must be >= 0");
  const int grid = cfg.grid == 0 ? 101 : cfg.grid;
  if (grid < 2) throw UsageError("--grid must be >= 2");
  emit(cfg, moments_csv(degrees.front()[0], cfg.s_max, grid), out);
  return ok;
}

int cmd_lemma_check(const RunConfig& cfg, const std::vector<std::pair<int, double>>& overrides, std::ostream& out) {
  if (cfg.n_max < 1 || cfg.s_max < 0) throw UsageError("--n-max must be >= 1 and --s-max >= 0");
  Lemma1Options opt;
  opt.n_max = cfg.n_max;
  opt.s_max = cfg.s_max;
  opt.grid_size = cfg.grid == 0 ? 201 : cfg.grid;
  opt.constant_overrides = overrides;
  const auto report = lemma1_check(opt);
  emit(cfg, to_json(report).dump(2) + "\n", out);
  return report.has_violations() ? verification_failed : ok;
}

int cmd_approx(const RunConfig& cfg, std::ostream& out) {
  check_backend(cfg);
  const auto f = make_oracle(cfg);
  const auto degrees = parse_degrees(cfg.n, cfg.d);
  if (degrees.size() != 1) throw UsageError("approx takes a single degree");
  if (cfg.r < 0) throw UsageError("--r must be >= 0");
  if (cfg.r >= 2 && cfg.r > f.max_order) throw UsageError("--r exceeds the derivatives available for " + f.name);
  const bool exact = exact_backend(cfg, f);
  const auto P = exact ? to_double(lorentz_Q<Rational>(f, degrees.front(), cfg.r))
                       : lorentz_Q<double>(f, degrees.front(), cfg.r);
  const int per_axis = cfg.grid != 0 ? cfg.grid : (cfg.d == 1 ? 201 : cfg.d == 2 ? 41 : 9);
  const auto profile = error_profile(f, P, tensor_grid(cfg.d, per_axis));
  const auto [min_c, argmin] = min_coefficient(P);
  double vertex_max = 0.0;
  for (double e : profile.vertex_errors) vertex_max = std::max(vertex_max, e);

  nlohmann::json summary = {{"func", f.name},
                            {"d", cfg.d},
                            {"n", std::vector<int>(degrees.front().entries().begin(), degrees.front().entries().end())},
                            {"r", cfg.r},
                            {"backend", exact ? "exact" : "float"},
                            {"degree", std::vector<int>(P.degree().entries().begin(), P.degree().entries().end())},
                            {"coefficients", P.coeffs().size()},
                            {"sup_error", profile.sup_error},
                            {"sup_location", profile.sup_location},
                            {"vertex_max_err", vertex_max},
                            {"min_coefficient", min_c}};
  if (!cfg.out.empty()) {
    write_atomic(cfg.out, to_text(P));
    const std::string profile_path = cfg.profile.empty() ? cfg.out + ".csv" : cfg.profile;
    write_atomic(profile_path, profile_csv(profile));
    summary["bernstein_file"] = cfg.out;
    summary["profile_file"] = profile_path;
  } else if (!cfg.profile.empty()) {
    write_atomic(cfg.profile, profile_csv(profile));
    summary["profile_file"] = cfg.profile;
  }
  out << summary.dump(2) << "\n";
  return ok;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const auto f = make_oracle(cfg);
  VerifyOptions opt;
  opt.r = cfg.r;
  opt.degrees = parse_degrees(cfg.n.empty() ? "8,16,32,64" : cfg.n, cfg.d);
  const std::string bound = cfg.bound.empty() ? (cfg.r <= 1 ? "thm1_i" : "thm1_ii") : cfg.bound;
  if (bound == "thm1_i") {
    if (cfg.r > 1) throw UsageError("thm1_i needs --r 0 or 1");
    opt.kind = BoundKind::thm1_i;
    opt.builder = Builder::bernstein;
    opt.declared_constant = cfg.constant.value_or(1.05);
  } else if (bound == "thm1_ii") {
    if (cfg.r < 2) throw UsageError("thm1_ii needs --r >= 2");
    if (cfg.r > f.max_order) throw UsageError("--r exceeds the derivatives available for " + f.name);
    opt.kind = BoundKind::thm1_ii;
    opt.builder = Builder::lorentz;
    opt.declared_constant = cfg.constant;
  } else {
    throw UsageError("--bound must be thm1_i or thm1_ii");
  }
  if (cfg.d >= 3 && !cfg.seed) throw UsageError("--seed is required for d >= 3 (Monte Carlo points)");
  opt.seed = cfg.seed;
  if (cfg.grid != 0) {
    if (cfg.d >= 3) throw UsageError("--grid is not used for d >= 3");
    opt.points = tensor_grid(cfg.d, cfg.grid, cfg.d == 1);
  } else {
    opt.points = default_verification_points(cfg.d, cfg.seed.value_or(1));
  }
  const auto report = verify_bound(f, opt);
  emit(cfg, to_json(report).dump(2) + "\n", out);
  if (!cfg.profile.empty()) write_atomic(cfg.profile, bound_cases_csv(report));
  return report.violations.empty() ? ok : verification_failed;
}

int cmd_positivity(const RunConfig& cfg, std::ostream& out) {
  check_backend(cfg);
  const auto f = make_oracle(cfg);
  if (!(f.lower_bound_m > 0.0)) throw UsageError("positivity needs a function with lower bound m > 0");
  if (cfg.r >= 2 && cfg.r > f.max_order) throw UsageError("--r exceeds the derivatives available for " + f.name);
  if (cfg.n_max < 1) throw UsageError("--n-max must be >= 1");
  const auto report = positivity_scan(f, cfg.r, cfg.n_max, exact_backend(cfg, f));
  emit(cfg, to_json(report).dump(2) + "\n", out);
  return report.threshold ? ok : verification_failed;
}

int cmd_density_demo(const RunConfig& cfg, std::ostream& out) {
  const auto f = make_oracle(cfg);
  if (!(f.lower_bound_m > 0.0)) throw UsageError("density-demo needs a function with lower bound m > 0");
  const auto degrees = parse_degrees(cfg.n, cfg.d);
  if (degrees.size() != 1) throw UsageError("density-demo takes a single degree");
  if (cfg.r >= 2 && cfg.r > f.max_order) throw UsageError("--r exceeds the derivatives available for " + f.name);
  const auto report = density_demo(f, degrees.front(), cfg.r);
  auto j = to_json(report);
  j["func"] = f.name;
  j["r"] = cfg.r;
  if (!cfg.out.empty()) {
    write_atomic(cfg.out, to_text(report.density));
    j["bernstein_file"] = cfg.out;
  }
  out << j.dump(2) << "\n";
  return ok;
}

namespace {

std::optional<std::string> find_config(int argc, const char* const* argv) {
  for (int i = 1; i < argc; ++i) {
    const std::string_view a = argv[i];
    if (a == "--config" && i + 1 < argc) return std::string(argv[i + 1]);
    if (a.starts_with("--config=")) return std::string(a.substr(9));
  }
  return std::nullopt;
}

void add_function_flags(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--func", cfg.func, "registry function")->check(CLI::IsMember(builtin_names()));
  sub->add_option("--d", cfg.d, "dimension");
  sub->add_option("--c", cfg.c, "const_c value");
  sub->add_option("--m", cfg.m, "lower offset for smooth_bump / runge_shifted");
  sub->add_option("--scale", cfg.scale, "multiply f by this positive factor");
  sub->add_option("--shift", cfg.shift, "add this constant to f");
}

void add_common_flags(CLI::App* sub, RunConfig& cfg, std::string& config_path) {
  sub->add_option("--out", cfg.out, "output path (stdout when omitted)");
  sub->add_option("--backend", cfg.backend, "float, exact or auto")->check(CLI::IsMember({"float", "exact", "auto"}));
  sub->add_option("--seed", cfg.seed, "seed for randomized steps");
  sub->add_option("--config", config_path, "key=value config file");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  std::vector<std::string> overrides_raw;
  std::string config_path;
  try {
    if (auto path = find_config(argc, argv)) {
      std::ifstream f(*path);
      if (!f) {
        err << "error: cannot read config '" << *path << "'\n";
        return io_error;
      }
      std::stringstream buf;
      buf << f.rdbuf();
      cfg = RunConfig::parse(buf.str());
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return usage_error;
  }

  CLI::App app{"Bernstein approximation and Lorentz positive-coefficient polynomials"};
  app.require_subcommand(1);

  auto* moments = app.add_subcommand("moments", "scaled absolute moment table as CSV");
  moments->add_option("--n", cfg.n, "binomial degree");
  moments->add_option("--s-max", cfg.s_max, "largest moment order");
  moments->add_option("--grid", cfg.grid, "equispaced points on [0,1]");
  add_common_flags(moments, cfg, config_path);

  auto* lemma = app.add_subcommand("lemma-check", "check the sharpened moment bounds; JSON report");
  lemma->add_option("--n-max", cfg.n_max, "largest n");
  lemma->add_option("--s-max", cfg.s_max, "largest s");
  lemma->add_option("--grid", cfg.grid, "equispaced points on [0,1]");
  lemma->add_option("--override-a", overrides_raw, "s=value replaces A_s")->group("");
  add_common_flags(lemma, cfg, config_path);

  auto* approx = app.add_subcommand("approx", "build B (r<=1) or Q_{n,r}; write Bernstein file and error CSV");
  add_function_flags(approx, cfg);
  approx->add_option("--n", cfg.n, "degree: 10 or per-axis 10:12");
  approx->add_option("--r", cfg.r, "correction order");
  approx->add_option("--grid", cfg.grid, "profile points per axis");
  approx->add_option("--profile", cfg.profile, "error profile CSV path (default <out>.csv)");
  add_common_flags(approx, cfg, config_path);

  auto* verify = app.add_subcommand("verify", "check the degree-of-approximation bound over a degree sweep");
  add_function_flags(verify, cfg);
  verify->add_option("--n", cfg.n, "comma list of degrees");
  verify->add_option("--r", cfg.r, "order");
  verify->add_option("--bound", cfg.bound, "thm1_i or thm1_ii");
  verify->add_option("--constant", cfg.constant, "asserted constant");
  verify->add_option("--grid", cfg.grid, "points per axis");
  verify->add_option("--profile", cfg.profile, "per-point CSV path");
  add_common_flags(verify, cfg, config_path);

  auto* positivity = app.add_subcommand("positivity", "scan n for nonnegative Bernstein coefficients of Q_{n,r}");
  add_function_flags(positivity, cfg);
  positivity->add_option("--r", cfg.r, "order");
  positivity->add_option("--n-max", cfg.n_max, "largest n");
  add_common_flags(positivity, cfg, config_path);

  auto* density = app.add_subcommand("density-demo", "normalise Q_{n,r} to a density");
  add_function_flags(density, cfg);
  density->add_option("--n", cfg.n, "degree");
  density->add_option("--r", cfg.r, "order");
  add_common_flags(density, cfg, config_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return usage_error;
  }

  const auto* chosen = app.get_subcommands().front();
  const std::string name = chosen->get_name();
  if (!cfg.command.empty() && cfg.command != name) {
    err << "error: config is for '" << cfg.command << "', not '" << name << "'\n";
    return usage_error;
  }
  cfg.command = name;

  try {
    std::vector<std::pair<int, double>> overrides;
    for (const auto& o : overrides_raw) {
      const auto eq = o.find('=');
      if (eq == std::string::npos) throw UsageError("--override-a expects s=value");
      overrides.emplace_back(std::stoi(o.substr(0, eq)), std::stod(o.substr(eq + 1)));
    }
    if (name == "moments") return cmd_moments(cfg, out);
    if (name == "lemma-check") return cmd_lemma_check(cfg, overrides, out);
    if (name == "approx") return cmd_approx(cfg, out);
    if (name == "verify") return cmd_verify(cfg, out);
    if (name == "positivity") return cmd_positivity(cfg, out);
    if (name == "density-demo") return cmd_density_demo(cfg, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return usage_error;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return usage_error;
  } catch (const ContractViolation& e) {
    err << "error: " << e.what() << "\n";
    return usage_error;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return usage_error;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return usage_error;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return io_error;
  }
  return usage_error;
}

}  // namespace bernpos::cli
