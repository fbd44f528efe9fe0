#pragma once

#include "hgcompton/constants.hpp"
#include "hgcompton/cross_section.hpp"
#include "hgcompton/kinematics.hpp"

namespace hgcompton {

// Widths of the Gaussians standing in for the two delta functions, plus the
// internal cubature controls. The cubature error is eta-independent; the
// leading bias is O(eta^2) and is removed by one Richardson halving.
struct RegularizationParams {
  double eta_E = 0.05;    // energy-delta width [keV]
  double eta_Q = 0.05;    // constraint-delta width [keV]
  double rel_tol = 1e-5;  // per-axis quadrature tolerance
  int scan_cells = 128;   // coarse cells of the u-band search
};

// Brute-force evaluation of the same cross section as `dcs`, with both deltas
// regularized and the full 3D electron-momentum integral done numerically.
// Shares no kinematic reduction with `dcs`: no root formula, no Jacobian.
// Returns the Richardson-extrapolated value over eta -> eta/2; the error
// estimate is the extrapolation residual. Throws OracleUnconverged when the
// two resolutions disagree beyond 5e-3 relative after extrapolation.
CrossSectionValue dcs_regularized(const BeamParams& beam, const ScatterPoint& pt,
                                  const RegularizationParams& reg = {},
                                  const PhysicalConstants& c = {});

// Single-width evaluation, exposed for the convergence-order test.
double dcs_regularized_single(const BeamParams& beam, const ScatterPoint& pt,
                              double eta_E, double eta_Q,
                              const RegularizationParams& reg = {},
                              const PhysicalConstants& c = {});

// One randomized certification point for the reduction-vs-oracle comparison.
struct ValidationInstance {
  BeamParams beam;
  ScatterPoint pt;
  RegularizationParams reg;
};

// Deterministic instance list: theta and waist cycle through the three study
// values {0.1, 0.5, 0.9} pi and {25, 75, 250} pm; node numbers, azimuth and
// spectral offset come from the seeded generator, with offsets kept inside
// half the estimated support so both routes see a meaningful value. The
// regularization widths are capped at an eighth of that support estimate so
// the smearing bias stays quadratically small even on the narrowest spectra.
std::vector<ValidationInstance> validation_instances(int count,
                                                     unsigned long long seed,
                                                     double k,
                                                     const RegularizationParams& base,
                                                     const PhysicalConstants& c = {});

}  // namespace hgcompton
