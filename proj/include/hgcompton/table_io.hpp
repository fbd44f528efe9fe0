#pragma once

#include <string>
#include <vector>

#include "hgcompton/cross_section.hpp"
#include "hgcompton/run_config.hpp"

namespace hgcompton {

// One emitted row. Angles are reported in units of pi; value/error are in the
// units requested by the config (natural keV^-3 sr^-1 or barn keV^-1 sr^-1).
struct OutputRecord {
  double theta_over_pi = 0.0;
  double phi_over_pi = 0.0;
  double E_q = 0.0;
  double dE = 0.0;
  double value = 0.0;
  double error_estimate = 0.0;
  CellStatus status = CellStatus::ok;
};

// Rows sorted by (theta, phi, E_q); numbers carry 17 significant digits.
std::vector<OutputRecord> records_from(const AngularTable& t, OutputUnits units);
std::vector<OutputRecord> records_from(const SpectrumTable& t, OutputUnits units);

// Header block: version, constants, the full effective config (line per key)
// and the list of keys that took defaults. Each line starts with '#'.
std::vector<std::string> header_lines(const RunConfig& cfg);

// Re-extracts the config echoed by header_lines, so any output file can be
// re-run as its own config.
std::string config_from_header(const std::string& file_text);

std::string render_csv(const RunConfig& cfg, const std::vector<OutputRecord>& rows);
std::string render_json(const RunConfig& cfg, const std::vector<OutputRecord>& rows);

// Klein-Nishina reference table (theta, E_0, dsigma/dOmega).
struct KnRecord {
  double theta_over_pi = 0.0;
  double E0_keV = 0.0;
  double value = 0.0;
};
std::string render_kn_csv(const RunConfig& cfg, const std::vector<KnRecord>& rows);
std::string render_kn_json(const RunConfig& cfg, const std::vector<KnRecord>& rows);

// Oracle-vs-reduction report rows for validate mode.
struct ValidateRecord {
  int index = 0;
  double w0_pm = 0.0;
  int nx = 0, ny = 0;
  double theta_over_pi = 0.0;
  double phi_over_pi = 0.0;
  double E_q = 0.0;
  double dE = 0.0;
  double eta_E = 0.0, eta_Q = 0.0;
  double dcs_value = 0.0, dcs_err = 0.0;
  double oracle_value = 0.0, oracle_err = 0.0;
  double rel_dev = 0.0;
  std::string status = "ok";
};
std::string render_validate_csv(const RunConfig& cfg, const std::vector<ValidateRecord>& rows);
std::string render_validate_json(const RunConfig& cfg, const std::vector<ValidateRecord>& rows);

// %.17g, C locale, for every number the writers emit.
std::string format_g17(double x);

}  // namespace hgcompton
