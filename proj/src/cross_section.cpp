#include "hgcompton/cross_section.hpp"

#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hgcompton/amplitude.hpp"
#include "hgcompton/errors.hpp"
#include "hgcompton/parallel.hpp"

namespace hgcompton {

namespace {

// Fixes the wide-waist n_x = n_y = 0 limit to the Klein-Nishina cross
// section; certified by the plane-wave consistency check in the test suite.
constexpr double kPlaneWaveLimitNorm = 0.125;

void wrap_push(std::vector<Breakpoint>& out, double phi, bool singular) {
  double x = std::fmod(phi, 2.0 * M_PI);
  if (x < 0.0) x += 2.0 * M_PI;
  out.push_back({x, singular});
}

}  // namespace

double dcs_prefactor(const BeamParams& beam, double E_q, const PhysicalConstants& c) {
  const double w0t = length_to_inverse_energy(beam.w0, c);
  return kPlaneWaveLimitNorm * c.alpha * c.alpha * w0t * w0t * E_q /
         (2.0 * c.m_e * beam.k);
}

std::vector<Breakpoint> integrand_breakpoints(const ElectronState& es,
                                              const ScatterPoint& pt, double k) {
  std::vector<Breakpoint> out;
  const double A = std::cos(pt.theta_q);
  const double st = std::sin(pt.theta_q);
  const double P = es.P, Eq = pt.E_q;
  if (P <= 0.0) return out;
  const double C = (k * k - P * P - Eq * Eq) / (2.0 * P * Eq);

  // Tangencies A^2 + B^2 = C^2, B = st cos(beta): the root pair appears or
  // vanishes here and the Jacobian weight blows up like 1/sqrt(distance).
  const double b2 = C * C - A * A;
  if (b2 >= 0.0) {
    const double x = std::sqrt(b2) / st;
    if (x <= 1.0) {
      const double beta = std::acos(x);
      for (double s : {beta, 2.0 * M_PI - beta, M_PI - beta, M_PI + beta})
        wrap_push(out, pt.phi_q + s, true);
    }
  }
  // B = 0: the quadratic degenerates to a linear equation; root count changes.
  wrap_push(out, pt.phi_q + 0.5 * M_PI, false);
  wrap_push(out, pt.phi_q + 1.5 * M_PI, false);
  // A root crossing Q_z = 0 switches the acceptance filter (weight reaches 0).
  const double u0 = -Eq * A / P;
  if (std::abs(u0) < 1.0) {
    const double cb = (C - A * u0) / (st * std::sqrt(1.0 - u0 * u0));
    if (std::abs(cb) <= 1.0) {
      const double beta = std::acos(cb);
      wrap_push(out, pt.phi_q + beta, false);
      wrap_push(out, pt.phi_q + 2.0 * M_PI - beta, false);
    }
  }
  // Extremes of Q_T over the root circle; the profile peaks near beta = pi.
  wrap_push(out, pt.phi_q, false);
  wrap_push(out, pt.phi_q + M_PI, false);

  std::sort(out.begin(), out.end(),
            [](const Breakpoint& a, const Breakpoint& b) { return a.x < b.x; });
  std::vector<Breakpoint> merged;
  for (const Breakpoint& bp : out) {
    if (!merged.empty() && bp.x - merged.back().x < 1e-12)
      merged.back().singular = merged.back().singular || bp.singular;
    else
      merged.push_back(bp);
  }
  return merged;
}

CrossSectionValue dcs(const BeamParams& beam, const ScatterPoint& pt,
                      const QuadratureConfig& cfg, const PhysicalConstants& c) {
  if (!(pt.theta_q > 0.0 && pt.theta_q < M_PI))
    throw std::domain_error("theta_q must lie in (0, pi)");
  if (!(pt.E_q > 0.0)) throw std::domain_error("E_q must be positive");
  if (!(pt.E_q < beam.k))
    throw KinematicallyForbidden("dcs requires E_q < k strictly");

  const ElectronState es = electron_momentum(beam.k, pt.E_q, c);
  const Vec3 q = scattered_momentum(pt);
  const double k = beam.k;
  std::vector<Breakpoint> breaks = integrand_breakpoints(es, pt, k);
  // Uniform pre-splits so a support bump narrower than a structural panel
  // cannot fall between the quadrature nodes of its first evaluation. Points
  // landing on top of a structural breakpoint would make sliver panels whose
  // nodes probe arbitrarily close to a tangency; skip those.
  for (int i = 1; i < 16; ++i) {
    const double x = 2.0 * M_PI * i / 16.0;
    bool close = false;
    for (const Breakpoint& b : breaks)
      if (std::abs(b.x - x) < 1e-9) { close = true; break; }
    if (!close) breaks.push_back({x, false});
  }

  const auto integrand = [&](double phi_p) -> FlaggedValue {
    const RootSet rs = delta_roots(es, pt, phi_p, k, cfg.eps_jac);
    double acc = 0.0;
    for (int i = 0; i < rs.count; ++i) {
      const KinematicRoot& r = rs.roots[i];
      const Vec3 p_f = r.Q - q;
      const double w = w_if(p_f, q, k);
      assert(w >= 0.0);  // guaranteed on the constraint surface
      const double F = transverse_profile(beam, r.Q.x, r.Q.y, c);
      acc += w * F * F * r.jacobian_weight;
    }
    return {acc, rs.degenerate};
  };

  const IntegralResult I = integrate_adaptive(integrand, 0.0, 2.0 * M_PI, breaks, cfg);
  const double pref = dcs_prefactor(beam, pt.E_q, c) * es.P;
  return {pref * I.value, pref * I.error_estimate};
}

AngularTable angular_scan(const BeamParams& beam, const std::vector<double>& theta_grid,
                          const std::vector<double>& phi_list,
                          const std::vector<double>& deltaE_list,
                          const QuadratureConfig& cfg, const PhysicalConstants& c,
                          int threads) {
  if (theta_grid.empty() || phi_list.empty() || deltaE_list.empty())
    throw std::domain_error("angular_scan: empty grid");
  for (double th : theta_grid)
    if (!(th > 0.0 && th < M_PI))
      throw std::domain_error("angular_scan: theta grid must lie inside (0, pi)");

  AngularTable table{beam, deltaE_list, {}, c, cfg};
  table.grid.resize(theta_grid.size() * phi_list.size() * deltaE_list.size());

  std::vector<double> line(theta_grid.size());
  for (std::size_t i = 0; i < theta_grid.size(); ++i)
    line[i] = compton_line_energy(beam.k, theta_grid[i], c);

  const std::size_t nphi = phi_list.size(), nde = deltaE_list.size();
  parallel_for(table.grid.size(), threads, [&](std::size_t idx) {
    const std::size_t it = idx / (nphi * nde);
    const std::size_t ip = (idx / nde) % nphi;
    const std::size_t ie = idx % nde;
    AngularCell& cell = table.grid[idx];
    cell.theta_q = theta_grid[it];
    cell.phi_q = phi_list[ip];
    cell.dE = deltaE_list[ie];
    cell.E_q = line[it] + cell.dE;
    if (!(cell.E_q > 0.0 && cell.E_q < beam.k)) {
      cell.status = CellStatus::forbidden;
      return;
    }
    try {
      cell.val = dcs(beam, {cell.theta_q, cell.phi_q, cell.E_q}, cfg, c);
    } catch (const KinematicallyForbidden&) {
      cell.status = CellStatus::forbidden;
    } catch (const QuadratureFailure&) {
      cell.status = CellStatus::quadrature_failure;
    }
  });
  return table;
}

SpectrumTable energy_spectrum(const BeamParams& beam, double theta_q, double phi_q,
                              const std::vector<double>& E_grid,
                              const QuadratureConfig& cfg, const PhysicalConstants& c,
                              int threads) {
  if (E_grid.empty()) throw std::domain_error("energy_spectrum: empty grid");
  for (std::size_t i = 0; i < E_grid.size(); ++i) {
    if (!(E_grid[i] > 0.0 && E_grid[i] < beam.k))
      throw std::domain_error("energy_spectrum: grid must lie inside (0, k)");
    if (i > 0 && !(E_grid[i] > E_grid[i - 1]))
      throw std::domain_error("energy_spectrum: grid must be strictly increasing");
  }

  SpectrumTable table{beam, theta_q, phi_q, compton_line_energy(beam.k, theta_q, c),
                      {}, c, cfg};
  table.grid.resize(E_grid.size());

  parallel_for(E_grid.size(), threads, [&](std::size_t i) {
    SpectrumCell& cell = table.grid[i];
    cell.E_q = E_grid[i];
    cell.dE = E_grid[i] - table.E_0;
    try {
      cell.val = dcs(beam, {theta_q, phi_q, cell.E_q}, cfg, c);
    } catch (const KinematicallyForbidden&) {
      cell.status = CellStatus::forbidden;
    } catch (const QuadratureFailure&) {
      cell.status = CellStatus::quadrature_failure;
    }
  });
  return table;
}

std::vector<double> default_energy_grid(double k, double theta_q,
                                        const PhysicalConstants& c) {
  const double E0 = compton_line_energy(k, theta_q, c);
  std::vector<double> grid;
  grid.reserve(501);
  for (int i = 0; i <= 500; ++i) {
    const double E = E0 + 0.02 * (i - 250);
    if (E > 0.0 && E < k) grid.push_back(E);
  }
  return grid;
}

int count_nodes(const SpectrumTable& spec, double rel_floor) {
  if (spec.grid.empty()) throw std::domain_error("count_nodes: empty spectrum");
  if (!(rel_floor > 0.0 && rel_floor < 0.5))
    throw std::domain_error("count_nodes: rel_floor must lie in (0, 0.5)");

  std::vector<double> E, v;
  for (const SpectrumCell& cell : spec.grid) {
    if (cell.status != CellStatus::ok) continue;
    E.push_back(cell.E_q);
    v.push_back(cell.val.value);
  }
  if (E.size() < 3) return 0;

  double peak = 0.0;
  for (double x : v) peak = std::max(peak, x);
  if (peak <= 0.0) return 0;
  const double floor = rel_floor * peak;

  // Maximal below-floor runs; only runs not touching the grid ends count as
  // interior minima.
  std::vector<double> centers;
  std::size_t i = 0;
  const std::size_t n = v.size();
  while (i < n) {
    if (v[i] >= floor) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < n && v[j + 1] < floor) ++j;
    if (i > 0 && j < n - 1) centers.push_back(0.5 * (E[i] + E[j]));
    i = j + 1;
  }

  if (centers.size() >= 2) {
    double step = 0.0;
    for (std::size_t m = 1; m < n; ++m) step = std::max(step, E[m] - E[m - 1]);
    double min_gap = std::numeric_limits<double>::infinity();
    for (std::size_t m = 1; m < centers.size(); ++m)
      min_gap = std::min(min_gap, centers[m] - centers[m - 1]);
    if (step > 0.1 * min_gap)
      throw InsufficientResolution("grid step " + std::to_string(step) +
                                   " keV too coarse for minima spaced " +
                                   std::to_string(min_gap) + " keV apart");
  }
  return static_cast<int>(centers.size());
}

double klein_nishina_reference(double k, double theta_q, const PhysicalConstants& c) {
  const double E0 = compton_line_energy(k, theta_q, c);
  const double r = E0 / k;
  const double s = std::sin(theta_q);
  return (c.alpha * c.alpha / (2.0 * c.m_e * c.m_e)) * r * r * (r + 1.0 / r - s * s);
}

double support_halfwidth_estimate(const BeamParams& beam, double theta_q,
                                  const PhysicalConstants& c) {
  const double E0 = compton_line_energy(beam.k, theta_q, c);
  const double w0t = length_to_inverse_energy(beam.w0, c);
  const double x_cut = 2.2 + 0.45 * std::max(beam.n_x.n, beam.n_y.n);
  return x_cut * (std::sqrt(2.0) / w0t) * E0 * E0 * std::sin(theta_q) /
         (c.m_e * beam.k);
}

}  // namespace hgcompton
