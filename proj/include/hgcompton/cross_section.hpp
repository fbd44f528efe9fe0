#pragma once

#include <vector>

#include "hgcompton/constants.hpp"
#include "hgcompton/kinematics.hpp"
#include "hgcompton/quadrature.hpp"

namespace hgcompton {

// Triple-differential cross section at one point, natural units
// [keV^-2 keV^-1 sr^-1]; convert with natural_area_to_barn for barn/keV/sr.
struct CrossSectionValue {
  double value = 0.0;
  double quadrature_error_estimate = 0.0;
};

enum class CellStatus { ok, forbidden, quadrature_failure };

inline const char* to_string(CellStatus s) {
  switch (s) {
    case CellStatus::ok: return "ok";
    case CellStatus::forbidden: return "forbidden";
    default: return "quadrature_failure";
  }
}

struct SpectrumCell {
  double E_q = 0.0;   // [keV]
  double dE = 0.0;    // E_q - E_0(k, theta_q) [keV]
  CrossSectionValue val;
  CellStatus status = CellStatus::ok;
};

struct SpectrumTable {
  BeamParams beam;
  double theta_q = 0.0;
  double phi_q = 0.0;
  double E_0 = 0.0;  // plane-wave line the dE column is measured from
  std::vector<SpectrumCell> grid;  // strictly increasing in E_q
  PhysicalConstants constants;
  QuadratureConfig quad;
};

struct AngularCell {
  double theta_q = 0.0;
  double phi_q = 0.0;
  double dE = 0.0;
  double E_q = 0.0;
  CrossSectionValue val;
  CellStatus status = CellStatus::ok;
};

struct AngularTable {
  BeamParams beam;
  std::vector<double> deltaE;  // [keV] lines evaluated at E_0(theta) + dE
  std::vector<AngularCell> grid;
  PhysicalConstants constants;
  QuadratureConfig quad;
};

// Prefactor common to the reduced and the regularized evaluation routes,
// alpha^2 w0~^2 E_q / (2 m k) times the plane-wave-limit normalization. The
// delta handling downstream of it is what the two routes compute
// independently.
double dcs_prefactor(const BeamParams& beam, double E_q, const PhysicalConstants& c);

// d^3(sigma)/(dOmega dE_q) by the analytic two-delta reduction: the energy
// delta fixes P, the constraint delta fixes u = cos(theta_p) per phi_p, and
// the remaining phi_p integral runs adaptively with the domain pre-split at
// every azimuth where the root structure changes (tangencies, B = 0,
// Q_z = 0 turn-offs).
CrossSectionValue dcs(const BeamParams& beam, const ScatterPoint& pt,
                      const QuadratureConfig& cfg = {},
                      const PhysicalConstants& c = {});

// Azimuths in [0, 2pi) where the phi_p integrand of `dcs` loses smoothness.
// Exposed for the integration tests; dcs computes these internally.
std::vector<Breakpoint> integrand_breakpoints(const ElectronState& es,
                                              const ScatterPoint& pt, double k);

// Grid scan at E_q = E_0(k, theta) + dE per (theta, phi, dE) cell. Cells whose
// E_q leaves (0, k) are recorded with status `forbidden`, value 0; quadrature
// failures are recorded per cell without aborting the scan.
AngularTable angular_scan(const BeamParams& beam, const std::vector<double>& theta_grid,
                          const std::vector<double>& phi_list,
                          const std::vector<double>& deltaE_list,
                          const QuadratureConfig& cfg = {}, const PhysicalConstants& c = {},
                          int threads = 1);

// Spectrum over a strictly increasing E_q grid inside (0, k).
SpectrumTable energy_spectrum(const BeamParams& beam, double theta_q, double phi_q,
                              const std::vector<double>& E_grid,
                              const QuadratureConfig& cfg = {},
                              const PhysicalConstants& c = {}, int threads = 1);

// E_0 +- 5 keV at 0.02 keV steps, clipped to (0, k) open.
std::vector<double> default_energy_grid(double k, double theta_q,
                                        const PhysicalConstants& c = {});

// Number of interior near-zero local minima: maximal runs of samples below
// rel_floor * max(spectrum), not touching either grid end. Throws
// InsufficientResolution when the grid step exceeds a tenth of the smallest
// gap between detected minima.
int count_nodes(const SpectrumTable& spec, double rel_floor = 0.02);

// Unpolarized plane-wave reference (alpha^2/2m^2)(E_0/k)^2 (E_0/k + k/E_0 - sin^2 theta).
double klein_nishina_reference(double k, double theta_q, const PhysicalConstants& c = {});

// Rough 1%-of-peak spectral half-width: the profile edge x ~ 2.2 + 0.45 n in
// the Hermite argument mapped through d(min Q_T)/dE_q = m k/(E_0^2 sin theta).
// Sizes scan windows and regularization widths; never asserted against.
double support_halfwidth_estimate(const BeamParams& beam, double theta_q,
                                  const PhysicalConstants& c = {});

}  // namespace hgcompton
