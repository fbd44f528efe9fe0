#include "hgcompton/table_io.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "hgcompton/version.hpp"

namespace hgcompton {

namespace {

using nlohmann::json;

double convert(double natural, OutputUnits units) {
  return units == OutputUnits::barn ? natural_area_to_barn(natural) : natural;
}

const char* value_unit_name(OutputUnits units) {
  return units == OutputUnits::natural ? "keV^-3 sr^-1" : "barn keV^-1 sr^-1";
}

void sort_records(std::vector<OutputRecord>& rows) {
  std::sort(rows.begin(), rows.end(), [](const OutputRecord& a, const OutputRecord& b) {
    if (a.theta_over_pi != b.theta_over_pi) return a.theta_over_pi < b.theta_over_pi;
    if (a.phi_over_pi != b.phi_over_pi) return a.phi_over_pi < b.phi_over_pi;
    return a.E_q < b.E_q;
  });
}

json config_json(const RunConfig& cfg) {
  json j;
  j["version"] = kVersion;
  const PhysicalConstants c;
  j["constants"] = {{"m_e_keV", c.m_e}, {"alpha", c.alpha}, {"hbar_c_keV_pm", c.hbar_c}};
  j["config"] = serialize_config(cfg);
  j["defaulted_keys"] = std::vector<std::string>(cfg.defaulted_keys.begin(),
                                                 cfg.defaulted_keys.end());
  return j;
}

}  // namespace

std::string format_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<OutputRecord> records_from(const AngularTable& t, OutputUnits units) {
  std::vector<OutputRecord> rows;
  rows.reserve(t.grid.size());
  for (const AngularCell& cell : t.grid) {
    OutputRecord r;
    r.theta_over_pi = cell.theta_q / M_PI;
    r.phi_over_pi = cell.phi_q / M_PI;
    r.E_q = cell.E_q;
    r.dE = cell.dE;
    r.value = convert(cell.val.value, units);
    r.error_estimate = convert(cell.val.quadrature_error_estimate, units);
    r.status = cell.status;
    rows.push_back(r);
  }
  sort_records(rows);
  return rows;
}

std::vector<OutputRecord> records_from(const SpectrumTable& t, OutputUnits units) {
  std::vector<OutputRecord> rows;
  rows.reserve(t.grid.size());
  for (const SpectrumCell& cell : t.grid) {
    OutputRecord r;
    r.theta_over_pi = t.theta_q / M_PI;
    r.phi_over_pi = t.phi_q / M_PI;
    r.E_q = cell.E_q;
    r.dE = cell.dE;
    r.value = convert(cell.val.value, units);
    r.error_estimate = convert(cell.val.quadrature_error_estimate, units);
    r.status = cell.status;
    rows.push_back(r);
  }
  sort_records(rows);
  return rows;
}

std::vector<std::string> header_lines(const RunConfig& cfg) {
  std::vector<std::string> lines;
  lines.push_back(std::string("# hg-compton ") + kVersion);
  const PhysicalConstants c;
  lines.push_back("# constant m_e_keV = " + format_g17(c.m_e));
  lines.push_back("# constant alpha = " + format_g17(c.alpha));
  lines.push_back("# constant hbar_c_keV_pm = " + format_g17(c.hbar_c));
  std::stringstream ss(serialize_config(cfg));
  std::string line;
  while (std::getline(ss, line)) lines.push_back("# config " + line);
  std::string defaulted;
  for (const std::string& k : cfg.defaulted_keys) {
    if (!defaulted.empty()) defaulted += ",";
    defaulted += k;
  }
  lines.push_back("# defaulted " + defaulted);
  return lines;
}

std::string config_from_header(const std::string& file_text) {
  std::stringstream ss(file_text);
  std::string line, out;
  const std::string tag = "# config ";
  while (std::getline(ss, line))
    if (line.rfind(tag, 0) == 0) out += line.substr(tag.size()) + "\n";
  return out;
}

std::string render_csv(const RunConfig& cfg, const std::vector<OutputRecord>& rows) {
  std::string s;
  for (const std::string& h : header_lines(cfg)) s += h + "\n";
  s += std::string("# value unit: ") + value_unit_name(cfg.units) + "\n";
  s += "theta_over_pi,phi_over_pi,E_q_keV,dE_keV,value,value_err,status\n";
  for (const OutputRecord& r : rows) {
    s += format_g17(r.theta_over_pi) + "," + format_g17(r.phi_over_pi) + "," +
         format_g17(r.E_q) + "," + format_g17(r.dE) + "," + format_g17(r.value) +
         "," + format_g17(r.error_estimate) + "," + to_string(r.status) + "\n";
  }
  return s;
}

std::string render_json(const RunConfig& cfg, const std::vector<OutputRecord>& rows) {
  json j = config_json(cfg);
  j["value_unit"] = value_unit_name(cfg.units);
  j["columns"] = {"theta_over_pi", "phi_over_pi", "E_q_keV",
                  "dE_keV",        "value",       "value_err", "status"};
  json jr = json::array();
  for (const OutputRecord& r : rows)
    jr.push_back({r.theta_over_pi, r.phi_over_pi, r.E_q, r.dE, r.value,
                  r.error_estimate, to_string(r.status)});
  j["rows"] = jr;
  return j.dump(2) + "\n";
}

std::string render_kn_csv(const RunConfig& cfg, const std::vector<KnRecord>& rows) {
  std::string s;
  for (const std::string& h : header_lines(cfg)) s += h + "\n";
  s += std::string("# value unit: ") +
       (cfg.units == OutputUnits::natural ? "keV^-2 sr^-1" : "barn sr^-1") + "\n";
  s += "theta_over_pi,E0_keV,value\n";
  for (const KnRecord& r : rows)
    s += format_g17(r.theta_over_pi) + "," + format_g17(r.E0_keV) + "," +
         format_g17(r.value) + "\n";
  return s;
}

std::string render_kn_json(const RunConfig& cfg, const std::vector<KnRecord>& rows) {
  json j = config_json(cfg);
  j["value_unit"] = cfg.units == OutputUnits::natural ? "keV^-2 sr^-1" : "barn sr^-1";
  j["columns"] = {"theta_over_pi", "E0_keV", "value"};
  json jr = json::array();
  for (const KnRecord& r : rows) jr.push_back({r.theta_over_pi, r.E0_keV, r.value});
  j["rows"] = jr;
  return j.dump(2) + "\n";
}

std::string render_validate_csv(const RunConfig& cfg,
                                const std::vector<ValidateRecord>& rows) {
  std::string s;
  for (const std::string& h : header_lines(cfg)) s += h + "\n";
  s += "index,w0_pm,nx,ny,theta_over_pi,phi_over_pi,E_q_keV,dE_keV,eta_E_keV,"
       "eta_Q_keV,dcs,dcs_err,oracle,oracle_err,rel_dev,status\n";
  for (const ValidateRecord& r : rows) {
    s += std::to_string(r.index) + "," + format_g17(r.w0_pm) + "," +
         std::to_string(r.nx) + "," + std::to_string(r.ny) + "," +
         format_g17(r.theta_over_pi) + "," + format_g17(r.phi_over_pi) + "," +
         format_g17(r.E_q) + "," + format_g17(r.dE) + "," + format_g17(r.eta_E) +
         "," + format_g17(r.eta_Q) + "," + format_g17(r.dcs_value) + "," +
         format_g17(r.dcs_err) + "," + format_g17(r.oracle_value) + "," +
         format_g17(r.oracle_err) + "," + format_g17(r.rel_dev) + "," + r.status +
         "\n";
  }
  return s;
}

std::string render_validate_json(const RunConfig& cfg,
                                 const std::vector<ValidateRecord>& rows) {
  json j = config_json(cfg);
  j["columns"] = {"index",     "w0_pm",   "nx",       "ny",
                  "theta_over_pi", "phi_over_pi", "E_q_keV", "dE_keV",
                  "eta_E_keV", "eta_Q_keV", "dcs",     "dcs_err",
                  "oracle",    "oracle_err", "rel_dev", "status"};
  json jr = json::array();
  for (const ValidateRecord& r : rows)
    jr.push_back({r.index, r.w0_pm, r.nx, r.ny, r.theta_over_pi, r.phi_over_pi,
                  r.E_q, r.dE, r.eta_E, r.eta_Q, r.dcs_value, r.dcs_err,
                  r.oracle_value, r.oracle_err, r.rel_dev, r.status});
  j["rows"] = jr;
  return j.dump(2) + "\n";
}

}  // namespace hgcompton
