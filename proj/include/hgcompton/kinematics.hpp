#pragma once

#include <array>

#include "hgcompton/constants.hpp"
#include "hgcompton/hermite.hpp"
#include "hgcompton/vec3.hpp"

namespace hgcompton {

// Incident photon: energy, waist, transverse node numbers.
struct BeamParams {
  double k;      // [keV]
  double w0;     // waist [pm]
  HermiteOrder n_x;
  HermiteOrder n_y;
};

// k * w0/hbar_c > 5; below this the paraxial description is suspect (warn, not reject).
bool paraxial_ok(const BeamParams& beam, const PhysicalConstants& c);

// Observation point: scattered-photon direction and energy.
struct ScatterPoint {
  double theta_q;  // polar [rad], (0, pi)
  double phi_q;    // azimuth from the zx-plane [rad]
  double E_q;      // [keV], (0, k]
};

// Final electron fixed by the energy delta: E_f = m + k - E_q.
struct ElectronState {
  double P;    // momentum magnitude [keV]
  double E_f;  // energy [keV]
};

// One solution u = cos(theta_p) of the constraint |Q| = k at fixed phi_p,
// with Q = p_f + q and Q_z >= 0.
struct KinematicRoot {
  double u;
  double phi_p;
  double jacobian_weight;  // 1/|g'(u)|, g(u) = Q_z - sqrt(k^2 - Q_T^2)
  Vec3 Q;                  // [keV], |Q| = k within 1e-9 k
};

// Degenerate-Jacobian threshold on the normalized derivative A - B u/sqrt(1-u^2);
// below it the 1/|g'| weight is untrustworthy and the caller must subdivide.
inline constexpr double kEpsJac = 1e-8;

// Root set for one phi_p: 0, 1, or 2 accepted roots. `degenerate` marks a
// tangency (|g'| under kEpsJac) at or near this azimuth; weights there are
// not to be trusted without local refinement.
struct RootSet {
  std::array<KinematicRoot, 2> roots;
  int count = 0;
  bool degenerate = false;
};

// Plane-wave Compton line E_0 = k / (1 + (k/m)(1 - cos theta_q)).
double compton_line_energy(double k, double theta_q, const PhysicalConstants& c);

// Electron state fixed by the energy delta. Throws KinematicallyForbidden for E_q > k.
ElectronState electron_momentum(double k, double E_q, const PhysicalConstants& c);

// Analytic reduction of delta(Q_z - sqrt(k^2 - Q_T^2)) at fixed phi_p.
// Solves A u + B sqrt(1-u^2) = C, A = cos theta_q, B = sin theta_q cos(phi_p - phi_q),
// C = (k^2 - P^2 - E_q^2)/(2 P E_q), as a quadratic in u; ghost roots from the
// squaring are rejected by the residual of the unsquared equation.
RootSet delta_roots(const ElectronState& es, const ScatterPoint& pt, double phi_p,
                    double k, double eps_jac = kEpsJac);

// Direction of the scattered photon q, unit vector times E_q.
Vec3 scattered_momentum(const ScatterPoint& pt);

// Electron momentum vector for given (u, phi_p).
Vec3 electron_momentum_vector(double P, double u, double phi_p);

}  // namespace hgcompton
