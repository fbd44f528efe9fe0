#include "hgcompton/runner.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "hgcompton/errors.hpp"
#include "hgcompton/oracle.hpp"
#include "hgcompton/parallel.hpp"
#include "hgcompton/table_io.hpp"

namespace hgcompton {

namespace {

std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> v;
  v.reserve(count);
  if (count == 1) {
    v.push_back(lo);
    return v;
  }
  const double step = (hi - lo) / (count - 1);
  for (int i = 0; i < count; ++i) v.push_back(lo + step * i);
  return v;
}

BeamParams beam_from(const RunConfig& cfg) {
  return {cfg.k_keV, cfg.w0_pm, HermiteOrder(cfg.nx), HermiteOrder(cfg.ny)};
}

QuadratureConfig quad_from(const RunConfig& cfg) {
  QuadratureConfig q;
  q.tol = cfg.quad_tol;
  q.max_subdivisions = cfg.quad_max_subdivisions;
  q.min_panel_width = cfg.quad_min_panel_width;
  q.eps_jac = cfg.quad_eps_jac;
  return q;
}

std::string resolve_path(const RunConfig& cfg, const RunOptions& opt) {
  if (opt.out) return *opt.out;
  if (cfg.out_path) return *cfg.out_path;
  return std::string(to_string(cfg.mode)) +
         (cfg.format == OutputFormat::csv ? ".csv" : ".json");
}

// spectra over several azimuths go to "<stem>.phi<i><ext>"
std::string indexed_path(const std::string& path, int i) {
  const std::size_t dot = path.rfind('.');
  const std::string stem = dot == std::string::npos ? path : path.substr(0, dot);
  const std::string ext = dot == std::string::npos ? "" : path.substr(dot);
  return stem + ".phi" + std::to_string(i) + ext;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file: " + path);
  f << text;
  if (!f) throw std::runtime_error("failed writing output file: " + path);
}

std::vector<double> spectrum_grid(const RunConfig& cfg, double theta,
                                  const PhysicalConstants& c) {
  if (!cfg.e_min_keV && !cfg.e_max_keV && cfg.e_step_keV == 0.02)
    return default_energy_grid(cfg.k_keV, theta, c);
  const double E0 = compton_line_energy(cfg.k_keV, theta, c);
  double lo = cfg.e_min_keV ? *cfg.e_min_keV : E0 - 5.0;
  double hi = cfg.e_max_keV ? *cfg.e_max_keV : E0 + 5.0;
  std::vector<double> grid;
  for (double E = lo; E <= hi + 1e-12; E += cfg.e_step_keV)
    if (E > 0.0 && E < cfg.k_keV) grid.push_back(E);
  if (grid.empty())
    throw ValidationError("scan.e_min_keV", "energy grid is empty inside (0, k)");
  return grid;
}

int run_angular(const RunConfig& cfg, const RunOptions& opt) {
  const PhysicalConstants c;
  const auto theta = linspace(cfg.theta_min_pi * M_PI, cfg.theta_max_pi * M_PI,
                              cfg.theta_count);
  const auto phi = linspace(cfg.phi_min_pi * M_PI, cfg.phi_max_pi * M_PI,
                            cfg.phi_count);
  const AngularTable table =
      angular_scan(beam_from(cfg), theta, phi, cfg.deltaE_keV, quad_from(cfg), c,
                   opt.threads);
  const auto rows = records_from(table, cfg.units);
  const std::string path = resolve_path(cfg, opt);
  write_file(path, cfg.format == OutputFormat::csv ? render_csv(cfg, rows)
                                                   : render_json(cfg, rows));
  std::printf("wrote %s (%zu rows)\n", path.c_str(), rows.size());
  return 0;
}

int run_spectrum(const RunConfig& cfg, const RunOptions& opt) {
  const PhysicalConstants c;
  const std::string base = resolve_path(cfg, opt);
  const bool multi = cfg.phi_list_pi.size() > 1;
  for (std::size_t i = 0; i < cfg.phi_list_pi.size(); ++i) {
    const SpectrumTable table = energy_spectrum(
        beam_from(cfg), cfg.theta_pi * M_PI, cfg.phi_list_pi[i] * M_PI,
        spectrum_grid(cfg, cfg.theta_pi * M_PI, c), quad_from(cfg), c, opt.threads);
    const auto rows = records_from(table, cfg.units);
    const std::string path = multi ? indexed_path(base, static_cast<int>(i)) : base;
    write_file(path, cfg.format == OutputFormat::csv ? render_csv(cfg, rows)
                                                     : render_json(cfg, rows));
    std::printf("wrote %s (%zu rows)\n", path.c_str(), rows.size());
  }
  return 0;
}

int run_kn(const RunConfig& cfg, const RunOptions& opt) {
  const PhysicalConstants c;
  const auto theta = linspace(cfg.theta_min_pi * M_PI, cfg.theta_max_pi * M_PI,
                              cfg.theta_count);
  std::vector<KnRecord> rows;
  rows.reserve(theta.size());
  for (double th : theta) {
    KnRecord r;
    r.theta_over_pi = th / M_PI;
    r.E0_keV = compton_line_energy(cfg.k_keV, th, c);
    const double v = klein_nishina_reference(cfg.k_keV, th, c);
    r.value = cfg.units == OutputUnits::barn ? natural_area_to_barn(v) : v;
    rows.push_back(r);
  }
  const std::string path = resolve_path(cfg, opt);
  write_file(path, cfg.format == OutputFormat::csv ? render_kn_csv(cfg, rows)
                                                   : render_kn_json(cfg, rows));
  std::printf("wrote %s (%zu rows)\n", path.c_str(), rows.size());
  return 0;
}

int run_validate(const RunConfig& cfg, const RunOptions& opt) {
  const PhysicalConstants c;
  RegularizationParams base;
  base.eta_E = cfg.eta_E_keV;
  base.eta_Q = cfg.eta_Q_keV;
  base.rel_tol = cfg.oracle_rel_tol;
  base.scan_cells = cfg.oracle_scan_cells;
  const auto instances =
      validation_instances(cfg.instances, cfg.seed, cfg.k_keV, base, c);
  const QuadratureConfig quad = quad_from(cfg);

  std::vector<ValidateRecord> rows(instances.size());
  parallel_for(instances.size(), opt.threads, [&](std::size_t i) {
    const ValidationInstance& inst = instances[i];
    ValidateRecord& r = rows[i];
    r.index = static_cast<int>(i);
    r.w0_pm = inst.beam.w0;
    r.nx = inst.beam.n_x.n;
    r.ny = inst.beam.n_y.n;
    r.theta_over_pi = inst.pt.theta_q / M_PI;
    r.phi_over_pi = inst.pt.phi_q / M_PI;
    r.E_q = inst.pt.E_q;
    r.dE = inst.pt.E_q - compton_line_energy(inst.beam.k, inst.pt.theta_q, c);
    r.eta_E = inst.reg.eta_E;
    r.eta_Q = inst.reg.eta_Q;
    try {
      const CrossSectionValue d = dcs(inst.beam, inst.pt, quad, c);
      const CrossSectionValue o = dcs_regularized(inst.beam, inst.pt, inst.reg, c);
      r.dcs_value = d.value;
      r.dcs_err = d.quadrature_error_estimate;
      r.oracle_value = o.value;
      r.oracle_err = o.quadrature_error_estimate;
      r.rel_dev = std::abs(d.value - o.value) /
                  std::max({std::abs(o.value), std::abs(d.value), 1e-300});
    } catch (const std::exception& e) {
      r.status = std::string("error: ") + e.what();
    }
  });

  double max_dev = 0.0;
  int failures = 0;
  for (const ValidateRecord& r : rows) {
    if (r.status != "ok") ++failures;
    max_dev = std::max(max_dev, r.rel_dev);
  }
  const std::string path = resolve_path(cfg, opt);
  write_file(path, cfg.format == OutputFormat::csv
                       ? render_validate_csv(cfg, rows)
                       : render_validate_json(cfg, rows));
  std::printf("wrote %s (%zu instances)\n", path.c_str(), rows.size());
  std::printf("max relative deviation = %s\n", format_g17(max_dev).c_str());
  if (failures > 0) {
    std::fprintf(stderr, "{\"error\":\"%d of %zu validation instances failed\"}\n",
                 failures, rows.size());
    return 3;
  }
  return 0;
}

}  // namespace

RunConfig load_config(const std::string& path, const RunOptions& opt) {
  std::ifstream f(path);
  if (!f) throw ValidationError("config", "cannot open file: " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  RunConfig cfg = parse_config(ss.str());
  if (opt.mode) cfg.mode = *opt.mode;
  if (opt.units) cfg.units = *opt.units;
  if (!config_paraxial_ok(cfg))
    std::fprintf(stderr,
                 "warning: k * w0/hbar_c = %.3g <= 5; paraxial description "
                 "is questionable for this beam\n",
                 cfg.k_keV * cfg.w0_pm / PhysicalConstants{}.hbar_c);
  return cfg;
}

int run(const RunConfig& cfg, const RunOptions& opt) {
  try {
    switch (cfg.mode) {
      case RunMode::angular: return run_angular(cfg, opt);
      case RunMode::spectrum: return run_spectrum(cfg, opt);
      case RunMode::kn_reference: return run_kn(cfg, opt);
      default: return run_validate(cfg, opt);
    }
  } catch (const QuadratureFailure& e) {
    std::fprintf(stderr, "{\"error\":\"quadrature failure\",\"what\":\"%s\"}\n", e.what());
    return 3;
  } catch (const OracleUnconverged& e) {
    std::fprintf(stderr, "{\"error\":\"oracle unconverged\",\"what\":\"%s\"}\n", e.what());
    return 3;
  } catch (const KinematicallyForbidden& e) {
    std::fprintf(stderr, "{\"error\":\"kinematically forbidden\",\"what\":\"%s\"}\n", e.what());
    return 3;
  } catch (const std::runtime_error& e) {
    std::fprintf(stderr, "{\"error\":\"runtime\",\"what\":\"%s\"}\n", e.what());
    return 3;
  }
}

}  // namespace hgcompton
