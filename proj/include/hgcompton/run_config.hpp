#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace hgcompton {

enum class RunMode { angular, spectrum, validate, kn_reference };
enum class OutputFormat { csv, json };
enum class OutputUnits { natural, barn };

const char* to_string(RunMode m);
const char* to_string(OutputFormat f);
const char* to_string(OutputUnits u);

// Everything a run needs, parsed from a line-oriented `key = value` document
// with dotted section prefixes. Angles appear in units of pi throughout.
struct RunConfig {
  // beam.*  (required: k_keV, w0_pm, nx, ny)
  double k_keV = 500.0;
  double w0_pm = 75.0;
  int nx = 0;
  int ny = 0;

  // scan.mode (required)
  RunMode mode = RunMode::angular;

  // scan.* for angular and kn-reference grids: inclusive linspace endpoints
  double theta_min_pi = 0.05;
  double theta_max_pi = 0.95;
  int theta_count = 19;
  double phi_min_pi = 0.0;
  double phi_max_pi = 1.96875;
  int phi_count = 64;
  std::vector<double> deltaE_keV = {0.0};

  // scan.* for spectra; unset energy bounds resolve to E_0 +- 5 keV at run time
  double theta_pi = 0.1;
  std::vector<double> phi_list_pi = {0.0};
  std::optional<double> e_min_keV;
  std::optional<double> e_max_keV;
  double e_step_keV = 0.02;

  // oracle.* (validate mode)
  double eta_E_keV = 0.05;
  double eta_Q_keV = 0.05;
  double oracle_rel_tol = 1e-5;
  int oracle_scan_cells = 128;
  int instances = 20;
  unsigned long long seed = 20260818ULL;

  // output.*
  std::optional<std::string> out_path;  // default: "<mode>.csv" / ".json"
  OutputFormat format = OutputFormat::csv;
  OutputUnits units = OutputUnits::natural;

  // quad.*
  double quad_tol = 1e-6;
  int quad_max_subdivisions = 4000;
  double quad_min_panel_width = 1e-6;
  double quad_eps_jac = 1e-8;

  // Keys that were not present in the parsed text and took their defaults;
  // echoed in output headers. Not part of the config's identity.
  std::set<std::string> defaulted_keys;

  bool operator==(const RunConfig& o) const;
};

// Parses and validates; throws ParseError (malformed line, duplicate key) or
// ValidationError (unknown key, value out of bounds, missing required key).
RunConfig parse_config(const std::string& text);

// Canonical `key = value` document; parse_config(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& cfg);

// True when the beam satisfies the paraxial sanity bound k*(w0/hbar_c) > 5;
// callers warn (never reject) on failure.
bool config_paraxial_ok(const RunConfig& cfg);

}  // namespace hgcompton
