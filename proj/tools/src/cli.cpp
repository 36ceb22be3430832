#include "sigmak_cli/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "sigmak/errors.hpp"
#include "sigmak/expand.hpp"
#include "sigmak/geomodel.hpp"
#include "sigmak/radial.hpp"
#include "sigmak/symkit.hpp"
#include "sigmak/verify.hpp"

namespace sigmak::cli {

namespace {

struct HelpRequested {
  std::string text;
};

const std::vector<std::string> kCommands = {"coeffs", "ball-verify", "shoot", "barrier", "fit", "cone"};

double parse_double(const std::string& text, const std::string& what) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  while (first < last && *first == ' ') ++first;
  while (last > first && last[-1] == ' ') --last;
  if (first < last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last) {
    throw UsageError(what + ": '" + text + "' is not a number");
  }
  return value;
}

int parse_int(const std::string& text, const std::string& what) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw UsageError(what + ": '" + text + "' is not an integer");
  }
  return value;
}

std::vector<double> parse_csv_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(parse_double(cell, what));
  if (out.empty()) throw UsageError(what + ": empty list");
  return out;
}

class Log {
 public:
  Log(std::ostream& os, LogLevel level) : os_(os), level_(level) {}
  void info(const std::string& msg) const {
    if (level_ != LogLevel::quiet) os_ << "sigmak: " << msg << "\n";
  }
  void debug(const std::string& msg) const {
    if (level_ == LogLevel::debug) os_ << "sigmak [debug]: " << msg << "\n";
  }

 private:
  std::ostream& os_;
  LogLevel level_;
};

// Typed reads from the config file.
template <typename T>
T file_value(const nlohmann::json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw UsageError(std::string("config file: bad value for '") + key + "'");
  }
}

int file_int(const nlohmann::json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_number_integer()) throw UsageError(std::string("config file: '") + key + "' must be an integer");
  return v.get<int>();
}

double file_double(const nlohmann::json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_number()) throw UsageError(std::string("config file: '") + key + "' must be a number");
  return v.get<double>();
}

std::vector<double> file_list(const nlohmann::json& j, const char* key) {
  const auto& v = j.at(key);
  if (v.is_string()) return parse_csv_list(v.get<std::string>(), key);
  if (!v.is_array()) throw UsageError(std::string("config file: '") + key + "' must be a list");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) throw UsageError(std::string("config file: '") + key + "' must hold numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw UsageError(msg);
}

template <typename T>
const T& need(const std::optional<T>& v, const std::string& cmd, const char* flag) {
  if (!v) throw UsageError(cmd + ": missing " + flag);
  return *v;
}

BoundaryGeometry geometry_of(const RunConfig& cfg) {
  if (cfg.kappas) return BoundaryGeometry(*cfg.n, *cfg.kappas);
  return ball_geometry(*cfg.n, *cfg.R);
}

Json kappa_list(const BoundaryGeometry& g) {
  Json arr = Json::array();
  for (double x : g.kappas()) arr.push_back(x);
  return arr;
}

std::string finish(const Json& j, const CsvTable& csv, const RunConfig& cfg) {
  return cfg.format == "csv" ? csv.str() : to_json_text(j);
}

// Top-level scalar fields of a JSON result, for the table printed to stdout.
Json summary_of(const Json& j) {
  Json s;
  for (const auto& [key, value] : j.items()) {
    if (value.is_primitive()) s[key] = value;
  }
  return s;
}

RunResult run_coeffs(const RunConfig& cfg, const Log& log) {
  const BoundaryGeometry g = geometry_of(cfg);
  const int n = g.dimension();
  const int k = *cfg.k;
  Json j;
  j["command"] = "coeffs";
  j["n"] = n;
  j["k"] = k;
  j["kappas"] = kappa_list(g);
  j["umbilic"] = g.is_umbilic();
  const double cf1 = c1_closed_form(g);
  const double cf2 = c2_closed_form(g, k);
  Json closed;
  closed["c1"] = cf1;
  closed["c2"] = cf2;

  if (!g.is_umbilic()) {
    log.info("non-umbilic boundary: only the closed-form c1, c2 are available");
    j["method"] = "closed_form";
    j["c1"] = cf1;
    j["c2"] = cf2;
    j["c_log"] = nullptr;
    j["closed_form"] = closed;
    CsvTable csv({"j", "c_j"});
    csv.add_row({"1", format_double(cf1)});
    csv.add_row({"2", format_double(cf2)});
    return {finish(j, csv, cfg), summary_of(j), true};
  }

  const CoefficientSolution sol = solve_coefficients_detailed(g, k, cfg.order.value_or(0));
  const auto& diag = sol.diagnostics;
  for (std::size_t i = 0; i < diag.slopes.size(); ++i) {
    log.debug("order " + std::to_string(i + 1) + " slope " + format_double(diag.slopes[i]));
  }
  if (!diag.log_slot_vanishes) {
    log.info("warning: d^n log d slot of Ftilde is nonzero before c_log is inserted: " +
             format_double(diag.log_slot_before));
  }
  j["method"] = "recursion";
  j["truncation"] = diag.truncation;
  for (int i = 1; i < n; ++i) j["c" + std::to_string(i)] = sol.coeffs.coefficient(i);
  j["c_log"] = sol.coeffs.c_log;
  j["closed_form"] = closed;
  j["log_slot_before"] = diag.log_slot_before;
  j["log_slot_vanishes"] = diag.log_slot_vanishes;
  j["ftilde_residual"] = series_to_json(diag.residual);
  return {finish(j, coeffs_to_csv(sol.coeffs), cfg), summary_of(j), true};
}

RunResult run_ball_verify(const RunConfig& cfg, const Log& log) {
  const int n = *cfg.n;
  const double R = *cfg.R;
  const int grid = cfg.grid.value_or(100);
  const RadialProfile profile = exact_profile(R, grid);
  std::vector<int> ks;
  if (cfg.k) {
    ks.push_back(*cfg.k);
  } else {
    for (int k = 1; k <= n; ++k) ks.push_back(k);
  }

  constexpr double kResidualTol = 1e-9;
  constexpr double kCoeffTol = 1e-8;
  Json results = Json::array();
  CsvTable csv({"k", "r", "u", "du", "ddu", "residual"});
  bool all_passed = true;
  const BoundaryGeometry g = ball_geometry(n, R);
  for (int k : ks) {
    const ResidualReport res = pde_residual(profile, n, k);
    const ExpansionCoeffs coeffs = solve_coefficients(g, k);
    double coeff_err = std::abs(coeffs.c_log);
    for (int i = 1; i < n; ++i) {
      const double exact = 1.0 / (i * std::pow(2.0 * R, i));
      coeff_err = std::max(coeff_err, std::abs(coeffs.coefficient(i) - exact));
    }
    const DecayReport decay = gradient_decay_check(R, n, k);
    const HessianReport hess = hessian_bound_check(R, n, k);
    const bool passed =
        res.max_scaled < kResidualTol && res.all_in_cone && coeff_err <= kCoeffTol && decay.passed && hess.finite;
    all_passed = all_passed && passed;
    log.info("ball-verify k=" + std::to_string(k) + (passed ? " passed" : " FAILED"));

    Json r;
    r["k"] = k;
    r["max_residual"] = res.max_abs;
    r["max_scaled_residual"] = res.max_scaled;
    r["all_in_cone"] = res.all_in_cone;
    r["coefficient_error"] = coeff_err;
    r["gradient_alpha"] = decay.alpha;
    r["gradient_slope"] = decay.slope;
    r["gradient_passed"] = decay.passed;
    r["hessian_sup"] = hess.sup_second_derivative;
    r["laplacian_inf"] = hess.inf_laplacian;
    r["passed"] = passed;
    results.push_back(r);
    for (std::size_t i = 0; i < profile.r.size(); ++i) {
      csv.add_row({std::to_string(k), format_double(profile.r[i]), format_double(profile.u[i]),
                   format_double(profile.du[i]), format_double(profile.ddu[i]), format_double(res.residual[i])});
    }
  }
  Json j;
  j["command"] = "ball-verify";
  j["n"] = n;
  j["R"] = R;
  j["grid"] = grid;
  j["residual_tolerance"] = kResidualTol;
  j["coefficient_tolerance"] = kCoeffTol;
  j["passed"] = all_passed;
  j["results"] = results;
  return {finish(j, csv, cfg), summary_of(j), all_passed};
}

RunResult run_shoot(const RunConfig& cfg, const Log& log) {
  const int n = *cfg.n;
  const int k = *cfg.k;
  const double R = *cfg.R;
  const int grid = cfg.grid.value_or(1000);
  const ShootResult sr = shoot_finite_bvp(n, k, R, *cfg.J, grid);
  const ResidualReport res = pde_residual(sr.profile, n, k);
  double deviation = 0.0;
  for (std::size_t i = 0; i < sr.profile.r.size(); ++i) {
    deviation = std::max(deviation, std::abs(sr.profile.u[i] - exact_hyperbolic(R, sr.profile.r[i]).u));
  }
  log.info("shoot converged in " + std::to_string(sr.iterations) + " iterations");

  Json j;
  j["command"] = "shoot";
  j["n"] = n;
  j["k"] = k;
  j["R"] = R;
  j["J"] = *cfg.J;
  j["grid"] = grid;
  j["boundary_radius"] = sr.profile.r.back();
  j["center_value"] = sr.center_value;
  j["boundary_value"] = sr.boundary_value;
  j["iterations"] = sr.iterations;
  j["max_residual"] = res.max_abs;
  j["max_scaled_residual"] = res.max_scaled;
  j["all_in_cone"] = res.all_in_cone;
  j["max_deviation_from_exact"] = deviation;

  CsvTable csv({"r", "u", "du", "ddu", "residual"});
  for (std::size_t i = 0; i < sr.profile.r.size(); ++i) {
    csv.add_row({format_double(sr.profile.r[i]), format_double(sr.profile.u[i]), format_double(sr.profile.du[i]),
                 format_double(sr.profile.ddu[i]), format_double(res.residual[i])});
  }
  return {finish(j, csv, cfg), summary_of(j), true};
}

RunResult run_barrier(const RunConfig& cfg, const Log& log) {
  const BoundaryGeometry g = geometry_of(cfg);
  const int k = *cfg.k;
  const double C = cfg.C.value_or(50.0);
  const double delta = cfg.delta.value_or(1e-2);
  constexpr int kSamples = 2000;
  const BarrierReport rep = barrier_sign(C, delta, g, k, kSamples);
  log.info(std::string("barrier ") + (rep.negative_everywhere && rep.in_cone_everywhere ? "holds" : "does not hold") +
           " on the band");

  Json j;
  j["command"] = "barrier";
  j["n"] = g.dimension();
  j["k"] = k;
  j["kappa"] = g.umbilic_curvature();
  j["C"] = C;
  j["delta"] = delta;
  j["samples"] = kSamples;
  j["negative_everywhere"] = rep.negative_everywhere;
  j["in_cone_everywhere"] = rep.in_cone_everywhere;
  j["max_ftilde"] = rep.max_ftilde;
  j["min_ftilde"] = rep.min_ftilde;

  CsvTable csv({"d", "ftilde", "in_cone"});
  for (std::size_t i = 0; i < rep.d.size(); ++i) {
    csv.add_row({format_double(rep.d[i]), format_double(rep.ftilde[i]), rep.in_cone[i] ? "1" : "0"});
  }
  return {finish(j, csv, cfg), summary_of(j), true};
}

std::vector<Sample> read_samples(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::vector<Sample> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
      throw UsageError(path + ":" + std::to_string(line_no) + ": expected two columns d,value");
    }
    const std::string a = line.substr(0, comma);
    const std::string b = line.substr(comma + 1);
    if (line_no == 1 && a == "d") continue;  // header
    const std::string where = path + ":" + std::to_string(line_no);
    out.push_back({parse_double(a, where), parse_double(b, where)});
  }
  if (in.bad()) throw IoError("error reading " + path);
  return out;
}

RunResult run_fit(const RunConfig& cfg, const Log& log) {
  const int n = *cfg.n;
  const std::vector<Sample> samples = read_samples(*cfg.input);
  FitOptions options;
  if (cfg.order) options.remainder_orders = *cfg.order;
  const FitReport rep = fit_expansion(samples, n, options);
  log.info("fit: " + std::to_string(samples.size()) + " samples in " + std::to_string(rep.bands.size()) + " bands");
  if (!rep.slope_determined) log.info("fit: residual slope undetermined (fewer than 3 resolved bands)");

  Json j;
  j["command"] = "fit";
  j["n"] = n;
  j["samples"] = samples.size();
  j["remainder_orders"] = options.remainder_orders;
  j["remainder_orders_used"] = rep.remainder_orders_used;
  for (int i = 1; i < n; ++i) j["c" + std::to_string(i)] = rep.fitted.coefficient(i);
  j["c_log"] = rep.fitted.c_log;
  // Remainder of order d^n: checked only when enough bands are resolved.
  constexpr double kSlopeMargin = 0.2;
  const bool consistent = !rep.slope_determined || rep.slope >= n - kSlopeMargin;
  j["slope_determined"] = rep.slope_determined;
  if (rep.slope_determined) {
    j["slope"] = rep.slope;
  } else {
    j["slope"] = nullptr;
  }
  j["slope_threshold"] = n - kSlopeMargin;
  j["remainder_order_consistent"] = consistent;
  Json rem = Json::array();
  for (double x : rep.remainder) rem.push_back(x);
  j["remainder"] = rem;
  Json bands = Json::array();
  for (const auto& b : rep.bands) {
    Json e;
    e["m"] = b.m;
    e["band_center"] = b.center;
    e["count"] = b.count;
    e["residual_sup"] = b.sup;
    bands.push_back(e);
  }
  j["bands"] = bands;
  if (!consistent) log.info("fit: residual slope " + format_double(rep.slope) + " is below n - 0.2");
  return {finish(j, bands_to_csv(rep.bands), cfg), summary_of(j), consistent};
}

RunResult run_cone(const RunConfig& cfg, const Log& log) {
  const Spectrum spec(*cfg.lambda);
  const int k = *cfg.k;
  const bool in_cone = gamma_cone_contains(spec, k);
  log.debug("cone: dimension " + std::to_string(spec.dimension()));

  Json j;
  j["command"] = "cone";
  j["k"] = k;
  Json lam = Json::array();
  for (double x : *cfg.lambda) lam.push_back(x);
  j["lambda"] = lam;
  Json sig = Json::array();
  CsvTable csv({"quantity", "value"});
  for (int q = 1; q <= k; ++q) {
    const double s = elementary_symmetric(spec, q);
    sig.push_back(s);
    csv.add_row({"sigma_" + std::to_string(q), format_double(s)});
  }
  j["sigma"] = sig;
  j["in_cone"] = in_cone;
  csv.add_row({"in_cone", in_cone ? "1" : "0"});
  if (in_cone) {
    j["maclaurin"] = maclaurin_holds(spec, k);
  } else {
    j["maclaurin"] = nullptr;
  }
  return {finish(j, csv, cfg), summary_of(j), true};
}

void print_table(std::ostream& out, const Json& summary) {
  std::size_t width = 0;
  for (const auto& [key, value] : summary.items()) width = std::max(width, key.size());
  for (const auto& [key, value] : summary.items()) {
    out << std::left << std::setw(static_cast<int>(width) + 2) << key;
    if (value.is_number_float()) {
      out << format_double(value.get<double>());
    } else if (value.is_string()) {
      out << value.get<std::string>();
    } else {
      out << value.dump();
    }
    out << "\n";
  }
}

}  // namespace

LogLevel log_level_from_env() {
  const char* v = std::getenv("SIGMAK_LOG");
  if (!v) return LogLevel::info;
  const std::string s(v);
  if (s == "quiet") return LogLevel::quiet;
  if (s == "debug") return LogLevel::debug;
  return LogLevel::info;
}

void apply_config_file(RunConfig& cfg, const nlohmann::json& file) {
  if (!file.is_object()) throw UsageError("config file: top level must be an object");
  static const std::vector<std::string> known = {"command", "n",     "k",    "R",     "J",      "delta",
                                                 "C",       "grid",  "order", "kappas", "lambda", "input",
                                                 "out",     "format", "ball", "geometry"};
  for (const auto& [key, value] : file.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw UsageError("config file: unknown key '" + key + "'");
    }
  }
  if (cfg.command.empty() && file.contains("command")) cfg.command = file_value<std::string>(file, "command");
  if (!cfg.k && file.contains("k")) cfg.k = file_int(file, "k");
  if (!cfg.J && file.contains("J")) cfg.J = file_double(file, "J");
  if (!cfg.delta && file.contains("delta")) cfg.delta = file_double(file, "delta");
  if (!cfg.C && file.contains("C")) cfg.C = file_double(file, "C");
  if (!cfg.grid && file.contains("grid")) cfg.grid = file_int(file, "grid");
  if (!cfg.order && file.contains("order")) cfg.order = file_int(file, "order");
  if (!cfg.lambda && file.contains("lambda")) cfg.lambda = file_list(file, "lambda");
  if (!cfg.input && file.contains("input")) cfg.input = file_value<std::string>(file, "input");
  if (!cfg.out && file.contains("out")) cfg.out = file_value<std::string>(file, "out");

  // Geometry given on the command line replaces the file's geometry entirely.
  if (cfg.n || cfg.R || cfg.kappas) return;
  nlohmann::json geo = nlohmann::json::object();
  if (file.contains("geometry")) {
    geo = file.at("geometry");
    if (!geo.is_object()) throw UsageError("config file: 'geometry' must be an object");
  }
  if (file.contains("ball")) {
    const auto& b = file.at("ball");
    if (!b.is_array() || b.size() != 2) throw UsageError("config file: 'ball' must be [n, R]");
    geo["n"] = b[0];
    geo["R"] = b[1];
  }
  for (const char* key : {"n", "R", "kappas"}) {
    if (file.contains(key)) geo[key] = file.at(key);
  }
  if (geo.contains("n")) cfg.n = file_int(geo, "n");
  if (geo.contains("R")) cfg.R = file_double(geo, "R");
  if (geo.contains("kappas")) cfg.kappas = file_list(geo, "kappas");
}

RunConfig parse_arguments(const std::vector<std::string>& args) {
  CLI::App app{"sigmak: boundary expansions and radial solutions of the sigma_k Yamabe problem", "sigmak"};
  app.fallthrough();
  app.require_subcommand(0, 1);

  int n = 0, k = 0, grid = 0, order = 0;
  double J = 0, delta = 0, C = 0;
  std::vector<std::string> ball;
  std::string kappas, lambda, out, format, config, input;
  auto* o_n = app.add_option("--n", n, "dimension n >= 3");
  auto* o_k = app.add_option("--k", k, "sigma_k index, 1 <= k <= n");
  auto* o_ball = app.add_option("--ball", ball, "ball shorthand: dimension and radius")->expected(2);
  auto* o_kappas = app.add_option("--kappas", kappas, "principal curvatures, comma separated");
  auto* o_lambda = app.add_option("--lambda", lambda, "eigenvalues for cone, comma separated");
  auto* o_J = app.add_option("--J", J, "boundary value for shoot");
  auto* o_delta = app.add_option("--delta", delta, "barrier band width");
  auto* o_C = app.add_option("--C", C, "barrier slope");
  auto* o_grid = app.add_option("--grid", grid, "radial grid size");
  auto* o_order = app.add_option("--order", order, "truncation order (coeffs) or remainder orders (fit)");
  auto* o_out = app.add_option("--out", out, "write the artifact here instead of stdout");
  auto* o_format = app.add_option("--format", format, "json or csv");
  auto* o_config = app.add_option("--config", config, "JSON config file; flags override it");

  std::vector<CLI::App*> subs;
  const std::vector<std::string> about = {
      "expansion coefficients c_1..c_{n-1}, c_log", "check the exact ball solution",
      "radial solution with boundary value J",       "sign of F on -log d + C d near the boundary",
      "fit the expansion to d,value samples",         "sigma_j of eigenvalues and cone membership"};
  for (std::size_t i = 0; i < kCommands.size(); ++i) {
    subs.push_back(app.add_subcommand(kCommands[i], about[i])->fallthrough());
  }
  CLI::App* fit = subs[4];
  auto* o_input = fit->add_option("input", input, "CSV of samples with columns d,value");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested{app.help()};
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  RunConfig cfg;
  for (auto* s : subs) {
    if (s->parsed()) cfg.command = s->get_name();
  }
  if (o_n->count()) cfg.n = n;
  if (o_k->count()) cfg.k = k;
  if (o_ball->count()) {
    const int bn = parse_int(ball[0], "--ball");
    if (cfg.n && *cfg.n != bn) throw UsageError("--n and --ball disagree on the dimension");
    cfg.n = bn;
    cfg.R = parse_double(ball[1], "--ball");
  }
  if (o_kappas->count()) cfg.kappas = parse_csv_list(kappas, "--kappas");
  if (o_lambda->count()) cfg.lambda = parse_csv_list(lambda, "--lambda");
  if (o_J->count()) cfg.J = J;
  if (o_delta->count()) cfg.delta = delta;
  if (o_C->count()) cfg.C = C;
  if (o_grid->count()) cfg.grid = grid;
  if (o_order->count()) cfg.order = order;
  if (o_out->count()) cfg.out = out;
  if (o_input->count()) cfg.input = input;

  if (o_config->count()) {
    std::ifstream in(config);
    if (!in) throw UsageError("cannot open config file " + config);
    nlohmann::json file;
    try {
      file = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw UsageError("config file " + config + ": " + e.what());
    }
    const bool format_on_cli = o_format->count() > 0;
    apply_config_file(cfg, file);
    if (!format_on_cli && file.contains("format")) cfg.format = file_value<std::string>(file, "format");
  }
  if (o_format->count()) cfg.format = format;
  return cfg;
}

void validate(RunConfig& cfg) {
  const std::string& cmd = cfg.command;
  require(!cmd.empty(), "no command given (one of coeffs, ball-verify, shoot, barrier, fit, cone)");
  require(std::find(kCommands.begin(), kCommands.end(), cmd) != kCommands.end(), "unknown command '" + cmd + "'");
  require(cfg.format == "json" || cfg.format == "csv", "--format must be json or csv");
  require(!cfg.R || (std::isfinite(*cfg.R) && *cfg.R > 0.0), "ball radius must be positive and finite");
  require(!(cfg.R && cfg.kappas), "give either a ball or principal curvatures, not both");
  if (cfg.kappas) {
    for (double x : *cfg.kappas) require(std::isfinite(x), "--kappas must be finite");
    const int from_list = static_cast<int>(cfg.kappas->size()) + 1;
    require(!cfg.n || *cfg.n == from_list, "--kappas needs exactly n-1 entries");
    cfg.n = from_list;
  }
  if (cfg.n) require(*cfg.n >= 3 && *cfg.n <= 64, "--n must lie in [3, 64]");
  if (cmd != "cone" && cfg.k && cfg.n) require(*cfg.k >= 1 && *cfg.k <= *cfg.n, "--k must lie in [1, n]");

  if (cmd == "coeffs" || cmd == "barrier") {
    require(cfg.n && (cfg.R || cfg.kappas), cmd + ": needs --ball or --kappas");
    need(cfg.k, cmd, "--k");
  }
  if (cmd == "coeffs" && cfg.order) require(*cfg.order >= *cfg.n, "--order must be >= n");
  if (cmd == "ball-verify" || cmd == "shoot") {
    require(cfg.n && cfg.R, cmd + ": needs --ball <n> <R>");
    if (cfg.grid) require(*cfg.grid >= (cmd == "shoot" ? 100 : 2), "--grid too small for " + cmd);
  }
  if (cmd == "shoot") {
    need(cfg.k, cmd, "--k");
    require(std::isfinite(need(cfg.J, cmd, "--J")), "--J must be finite");
  }
  if (cmd == "barrier") {
    const double kappa = cfg.R ? 1.0 / *cfg.R : 0.0;
    if (cfg.kappas) {
      const BoundaryGeometry g(*cfg.n, *cfg.kappas);
      require(g.is_umbilic(), "barrier: needs an umbilic boundary");
    }
    if (cfg.delta) {
      require(std::isfinite(*cfg.delta) && *cfg.delta > 0.0, "--delta must be positive");
      require(!cfg.R || kappa * *cfg.delta < 1.0, "--delta must be smaller than the radius");
    }
    if (cfg.C) require(std::isfinite(*cfg.C), "--C must be finite");
  }
  if (cmd == "fit") {
    need(cfg.input, cmd, "input CSV");
    need(cfg.n, cmd, "--n");
    if (cfg.order) require(*cfg.order >= 0 && *cfg.order <= 8, "--order must lie in [0, 8] for fit");
  }
  if (cmd == "cone") {
    const auto& lam = need(cfg.lambda, cmd, "--lambda");
    for (double x : lam) require(std::isfinite(x), "--lambda must be finite");
    const int k = need(cfg.k, cmd, "--k");
    require(k >= 1 && k <= static_cast<int>(lam.size()), "--k must lie in [1, number of eigenvalues]");
  }
}

RunResult execute(const RunConfig& cfg, std::ostream& log_stream, LogLevel level) {
  const Log log(log_stream, level);
  const std::string& cmd = cfg.command;
  if (cmd == "coeffs") return run_coeffs(cfg, log);
  if (cmd == "ball-verify") return run_ball_verify(cfg, log);
  if (cmd == "shoot") return run_shoot(cfg, log);
  if (cmd == "barrier") return run_barrier(cfg, log);
  if (cmd == "fit") return run_fit(cfg, log);
  return run_cone(cfg, log);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, LogLevel level) {
  try {
    RunConfig cfg = parse_arguments(args);
    validate(cfg);
    const RunResult result = execute(cfg, err, level);
    if (cfg.out) {
      std::ofstream file(*cfg.out, std::ios::binary | std::ios::trunc);
      if (!file) throw IoError("cannot write " + *cfg.out);
      file << result.artifact;
      file.close();
      if (!file) throw IoError("error writing " + *cfg.out);
      print_table(out, result.summary);
    } else {
      out << result.artifact;
    }
    if (!result.verified) {
      err << "sigmak: verification failed\n";
      return kVerification;
    }
    return kOk;
  } catch (const HelpRequested& h) {
    out << h.text;
    return kOk;
  } catch (const UsageError& e) {
    err << "sigmak: " << e.what() << "\n";
    return kValidation;
  } catch (const DomainError& e) {
    err << "sigmak: invalid input: " << e.what() << "\n";
    return kValidation;
  } catch (const NumericError& e) {
    err << "sigmak: numeric failure: " << e.what() << "\n";
    return kNumeric;
  } catch (const IoError& e) {
    err << "sigmak: " << e.what() << "\n";
    return kNumeric;
  }
}

}  // namespace sigmak::cli
