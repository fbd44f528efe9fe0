#pragma once

#include "hgcompton/constants.hpp"
#include "hgcompton/kinematics.hpp"
#include "hgcompton/vec3.hpp"

namespace hgcompton {

// Recoil momentum Q = p_f + q with its transverse magnitude cached.
struct MomentumTransfer {
  Vec3 Q;      // [keV]
  double Q_T;  // sqrt(Q_x^2 + Q_y^2)
};

MomentumTransfer momentum_transfer(Vec3 Q);

// Squared amplitude, summed over final polarizations and electron spins:
// 4|q|/k + 4k/|q| - (4/k^2) (|p_f|^2 - (p_f.q)^2/|q|^2).
// Depends only on |p_f|, |q| and the angle between them.
double w_if(Vec3 p_f, Vec3 q, double k);

// Transverse momentum profile F = f_nx(w0 Q_x/sqrt(2)) f_ny(w0 Q_y/sqrt(2)),
// waist in natural units (w0/hbar_c). Bare product, no mode-normalization
// prefactors; those are carried by the cross-section prefactor.
double transverse_profile(const BeamParams& beam, double Q_x, double Q_y,
                          const PhysicalConstants& c);

}  // namespace hgcompton
