#include "hgcompton/run_config.hpp"

#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <sstream>

#include "hgcompton/constants.hpp"
#include "hgcompton/errors.hpp"
#include "hgcompton/hermite.hpp"

namespace hgcompton {

const char* to_string(RunMode m) {
  switch (m) {
    case RunMode::angular: return "angular";
    case RunMode::spectrum: return "spectrum";
    case RunMode::validate: return "validate";
    default: return "kn-reference";
  }
}
const char* to_string(OutputFormat f) {
  return f == OutputFormat::csv ? "csv" : "json";
}
const char* to_string(OutputUnits u) {
  return u == OutputUnits::natural ? "natural" : "barn";
}

namespace {

constexpr const char* kAllowedModes = "angular|spectrum|validate|kn-reference";

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

double parse_double(const std::string& key, const std::string& v) {
  const char* s = v.c_str();
  char* end = nullptr;
  errno = 0;
  const double x = std::strtod(s, &end);
  if (end == s || *end != '\0' || !std::isfinite(x))
    throw ValidationError(key, "not a finite number: '" + v + "'");
  return x;
}

long long parse_int(const std::string& key, const std::string& v) {
  const char* s = v.c_str();
  char* end = nullptr;
  errno = 0;
  const long long x = std::strtoll(s, &end, 10);
  if (end == s || *end != '\0' || errno == ERANGE)
    throw ValidationError(key, "not an integer: '" + v + "'");
  return x;
}

unsigned long long parse_uint(const std::string& key, const std::string& v) {
  const char* s = v.c_str();
  char* end = nullptr;
  errno = 0;
  const unsigned long long x = std::strtoull(s, &end, 10);
  if (end == s || *end != '\0' || errno == ERANGE || v.find('-') != std::string::npos)
    throw ValidationError(key, "not a nonnegative integer: '" + v + "'");
  return x;
}

std::vector<double> parse_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double(key, trim(item)));
  if (out.empty()) throw ValidationError(key, "empty list");
  return out;
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fmt(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ",";
    out += fmt(xs[i]);
  }
  return out;
}

// Raw key/value lines in file order, with duplicate detection.
std::map<std::string, std::string> tokenize(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::stringstream ss(text);
  std::string line;
  int line_no = 0;
  while (std::getline(ss, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const std::size_t eq = t.find('=');
    if (eq == std::string::npos) throw ParseError(line_no, "expected 'key = value'");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key.empty()) throw ParseError(line_no, "empty key");
    if (kv.count(key)) throw ParseError(line_no, "duplicate key '" + key + "'");
    kv.emplace(key, value);
  }
  return kv;
}

}  // namespace

bool RunConfig::operator==(const RunConfig& o) const {
  return k_keV == o.k_keV && w0_pm == o.w0_pm && nx == o.nx && ny == o.ny &&
         mode == o.mode && theta_min_pi == o.theta_min_pi &&
         theta_max_pi == o.theta_max_pi && theta_count == o.theta_count &&
         phi_min_pi == o.phi_min_pi && phi_max_pi == o.phi_max_pi &&
         phi_count == o.phi_count && deltaE_keV == o.deltaE_keV &&
         theta_pi == o.theta_pi && phi_list_pi == o.phi_list_pi &&
         e_min_keV == o.e_min_keV && e_max_keV == o.e_max_keV &&
         e_step_keV == o.e_step_keV && eta_E_keV == o.eta_E_keV &&
         eta_Q_keV == o.eta_Q_keV && oracle_rel_tol == o.oracle_rel_tol &&
         oracle_scan_cells == o.oracle_scan_cells && instances == o.instances &&
         seed == o.seed && out_path == o.out_path && format == o.format &&
         units == o.units && quad_tol == o.quad_tol &&
         quad_max_subdivisions == o.quad_max_subdivisions &&
         quad_min_panel_width == o.quad_min_panel_width &&
         quad_eps_jac == o.quad_eps_jac;
}

RunConfig parse_config(const std::string& text) {
  auto kv = tokenize(text);
  RunConfig cfg;

  const auto take = [&](const char* key) -> std::optional<std::string> {
    auto it = kv.find(key);
    if (it == kv.end()) {
      cfg.defaulted_keys.insert(key);
      return std::nullopt;
    }
    std::string v = it->second;
    kv.erase(it);
    return v;
  };
  const auto require = [&](const char* key) -> std::string {
    auto it = kv.find(key);
    if (it == kv.end()) throw ValidationError(key, "required key is missing");
    std::string v = it->second;
    kv.erase(it);
    return v;
  };

  cfg.k_keV = parse_double("beam.k_keV", require("beam.k_keV"));
  if (!(cfg.k_keV > 0.0)) throw ValidationError("beam.k_keV", "must be > 0");
  cfg.w0_pm = parse_double("beam.w0_pm", require("beam.w0_pm"));
  if (!(cfg.w0_pm > 0.0)) throw ValidationError("beam.w0_pm", "must be > 0");
  const long long nx = parse_int("beam.nx", require("beam.nx"));
  if (nx < 0 || nx > kMaxHermiteOrder)
    throw ValidationError("beam.nx", "must lie in [0, " +
                                         std::to_string(kMaxHermiteOrder) + "]");
  cfg.nx = static_cast<int>(nx);
  const long long ny = parse_int("beam.ny", require("beam.ny"));
  if (ny < 0 || ny > kMaxHermiteOrder)
    throw ValidationError("beam.ny", "must lie in [0, " +
                                         std::to_string(kMaxHermiteOrder) + "]");
  cfg.ny = static_cast<int>(ny);

  {
    const std::string m = require("scan.mode");
    if (m == "angular") cfg.mode = RunMode::angular;
    else if (m == "spectrum") cfg.mode = RunMode::spectrum;
    else if (m == "validate") cfg.mode = RunMode::validate;
    else if (m == "kn-reference") cfg.mode = RunMode::kn_reference;
    else throw ValidationError("scan.mode", "allowed: " + std::string(kAllowedModes));
  }

  if (auto v = take("scan.theta_min_pi")) cfg.theta_min_pi = parse_double("scan.theta_min_pi", *v);
  if (auto v = take("scan.theta_max_pi")) cfg.theta_max_pi = parse_double("scan.theta_max_pi", *v);
  if (auto v = take("scan.theta_count")) cfg.theta_count = static_cast<int>(parse_int("scan.theta_count", *v));
  if (auto v = take("scan.phi_min_pi")) cfg.phi_min_pi = parse_double("scan.phi_min_pi", *v);
  if (auto v = take("scan.phi_max_pi")) cfg.phi_max_pi = parse_double("scan.phi_max_pi", *v);
  if (auto v = take("scan.phi_count")) cfg.phi_count = static_cast<int>(parse_int("scan.phi_count", *v));
  if (auto v = take("scan.deltaE_keV")) cfg.deltaE_keV = parse_list("scan.deltaE_keV", *v);
  if (auto v = take("scan.theta_pi")) cfg.theta_pi = parse_double("scan.theta_pi", *v);
  if (auto v = take("scan.phi_list_pi")) cfg.phi_list_pi = parse_list("scan.phi_list_pi", *v);
  if (auto v = take("scan.e_min_keV")) cfg.e_min_keV = parse_double("scan.e_min_keV", *v);
  if (auto v = take("scan.e_max_keV")) cfg.e_max_keV = parse_double("scan.e_max_keV", *v);
  if (auto v = take("scan.e_step_keV")) cfg.e_step_keV = parse_double("scan.e_step_keV", *v);

  if (auto v = take("oracle.eta_E_keV")) cfg.eta_E_keV = parse_double("oracle.eta_E_keV", *v);
  if (auto v = take("oracle.eta_Q_keV")) cfg.eta_Q_keV = parse_double("oracle.eta_Q_keV", *v);
  if (auto v = take("oracle.rel_tol")) cfg.oracle_rel_tol = parse_double("oracle.rel_tol", *v);
  if (auto v = take("oracle.scan_cells")) cfg.oracle_scan_cells = static_cast<int>(parse_int("oracle.scan_cells", *v));
  if (auto v = take("oracle.instances")) cfg.instances = static_cast<int>(parse_int("oracle.instances", *v));
  if (auto v = take("oracle.seed")) cfg.seed = parse_uint("oracle.seed", *v);

  if (auto v = take("output.path")) cfg.out_path = *v;
  if (auto v = take("output.format")) {
    if (*v == "csv") cfg.format = OutputFormat::csv;
    else if (*v == "json") cfg.format = OutputFormat::json;
    else throw ValidationError("output.format", "allowed: csv|json");
  }
  if (auto v = take("output.units")) {
    if (*v == "natural") cfg.units = OutputUnits::natural;
    else if (*v == "barn") cfg.units = OutputUnits::barn;
    else throw ValidationError("output.units", "allowed: natural|barn");
  }

  if (auto v = take("quad.tol")) cfg.quad_tol = parse_double("quad.tol", *v);
  if (auto v = take("quad.max_subdivisions")) cfg.quad_max_subdivisions = static_cast<int>(parse_int("quad.max_subdivisions", *v));
  if (auto v = take("quad.min_panel_width")) cfg.quad_min_panel_width = parse_double("quad.min_panel_width", *v);
  if (auto v = take("quad.eps_jac")) cfg.quad_eps_jac = parse_double("quad.eps_jac", *v);

  if (!kv.empty())
    throw ValidationError(kv.begin()->first, "unknown key");

  // Cross-field bounds.
  if (!(cfg.theta_min_pi >= 0.0 && cfg.theta_max_pi <= 1.0 &&
        cfg.theta_min_pi <= cfg.theta_max_pi))
    throw ValidationError("scan.theta_min_pi", "need 0 <= min <= max <= 1");
  if (cfg.mode == RunMode::angular &&
      !(cfg.theta_min_pi > 0.0 && cfg.theta_max_pi < 1.0))
    throw ValidationError("scan.theta_min_pi", "angular grid must lie inside (0, 1)");
  if (cfg.theta_count < 1) throw ValidationError("scan.theta_count", "must be >= 1");
  if (!(cfg.phi_min_pi >= 0.0 && cfg.phi_max_pi <= 2.0 &&
        cfg.phi_min_pi <= cfg.phi_max_pi))
    throw ValidationError("scan.phi_min_pi", "need 0 <= min <= max <= 2");
  if (cfg.phi_count < 1) throw ValidationError("scan.phi_count", "must be >= 1");
  if (!(cfg.theta_pi > 0.0 && cfg.theta_pi < 1.0))
    throw ValidationError("scan.theta_pi", "must lie in (0, 1)");
  for (double p : cfg.phi_list_pi)
    if (!(p >= 0.0 && p < 2.0))
      throw ValidationError("scan.phi_list_pi", "entries must lie in [0, 2)");
  if (cfg.e_min_keV && !(*cfg.e_min_keV > 0.0))
    throw ValidationError("scan.e_min_keV", "must be > 0");
  if (cfg.e_max_keV && !(*cfg.e_max_keV < cfg.k_keV))
    throw ValidationError("scan.e_max_keV", "must be < beam.k_keV");
  if (cfg.e_min_keV && cfg.e_max_keV && !(*cfg.e_min_keV < *cfg.e_max_keV))
    throw ValidationError("scan.e_min_keV", "must be < scan.e_max_keV");
  if (!(cfg.e_step_keV > 0.0)) throw ValidationError("scan.e_step_keV", "must be > 0");
  if (!(cfg.eta_E_keV > 0.0)) throw ValidationError("oracle.eta_E_keV", "must be > 0");
  if (!(cfg.eta_Q_keV > 0.0)) throw ValidationError("oracle.eta_Q_keV", "must be > 0");
  if (!(cfg.oracle_rel_tol > 0.0 && cfg.oracle_rel_tol <= 0.1))
    throw ValidationError("oracle.rel_tol", "must lie in (0, 0.1]");
  if (cfg.oracle_scan_cells < 16)
    throw ValidationError("oracle.scan_cells", "must be >= 16");
  if (cfg.instances < 1) throw ValidationError("oracle.instances", "must be >= 1");
  if (!(cfg.quad_tol > 0.0 && cfg.quad_tol <= 0.1))
    throw ValidationError("quad.tol", "must lie in (0, 0.1]");
  if (cfg.quad_max_subdivisions < 16)
    throw ValidationError("quad.max_subdivisions", "must be >= 16");
  if (!(cfg.quad_min_panel_width > 0.0 && cfg.quad_min_panel_width <= 1.0))
    throw ValidationError("quad.min_panel_width", "must lie in (0, 1]");
  if (!(cfg.quad_eps_jac > 0.0 && cfg.quad_eps_jac <= 1e-3))
    throw ValidationError("quad.eps_jac", "must lie in (0, 1e-3]");

  return cfg;
}

std::string serialize_config(const RunConfig& cfg) {
  std::string s;
  const auto put = [&](const char* key, const std::string& v) {
    s += key;
    s += " = ";
    s += v;
    s += "\n";
  };
  put("beam.k_keV", fmt(cfg.k_keV));
  put("beam.w0_pm", fmt(cfg.w0_pm));
  put("beam.nx", std::to_string(cfg.nx));
  put("beam.ny", std::to_string(cfg.ny));
  put("scan.mode", to_string(cfg.mode));
  put("scan.theta_min_pi", fmt(cfg.theta_min_pi));
  put("scan.theta_max_pi", fmt(cfg.theta_max_pi));
  put("scan.theta_count", std::to_string(cfg.theta_count));
  put("scan.phi_min_pi", fmt(cfg.phi_min_pi));
  put("scan.phi_max_pi", fmt(cfg.phi_max_pi));
  put("scan.phi_count", std::to_string(cfg.phi_count));
  put("scan.deltaE_keV", fmt(cfg.deltaE_keV));
  put("scan.theta_pi", fmt(cfg.theta_pi));
  put("scan.phi_list_pi", fmt(cfg.phi_list_pi));
  if (cfg.e_min_keV) put("scan.e_min_keV", fmt(*cfg.e_min_keV));
  if (cfg.e_max_keV) put("scan.e_max_keV", fmt(*cfg.e_max_keV));
  put("scan.e_step_keV", fmt(cfg.e_step_keV));
  put("oracle.eta_E_keV", fmt(cfg.eta_E_keV));
  put("oracle.eta_Q_keV", fmt(cfg.eta_Q_keV));
  put("oracle.rel_tol", fmt(cfg.oracle_rel_tol));
  put("oracle.scan_cells", std::to_string(cfg.oracle_scan_cells));
  put("oracle.instances", std::to_string(cfg.instances));
  put("oracle.seed", std::to_string(cfg.seed));
  if (cfg.out_path) put("output.path", *cfg.out_path);
  put("output.format", to_string(cfg.format));
  put("output.units", to_string(cfg.units));
  put("quad.tol", fmt(cfg.quad_tol));
  put("quad.max_subdivisions", std::to_string(cfg.quad_max_subdivisions));
  put("quad.min_panel_width", fmt(cfg.quad_min_panel_width));
  put("quad.eps_jac", fmt(cfg.quad_eps_jac));
  return s;
}

bool config_paraxial_ok(const RunConfig& cfg) {
  const PhysicalConstants c;
  return cfg.k_keV * (cfg.w0_pm / c.hbar_c) > 5.0;
}

}  // namespace hgcompton
