#include "hgcompton/amplitude.hpp"

#include <cmath>
#include <stdexcept>

namespace hgcompton {

MomentumTransfer momentum_transfer(Vec3 Q) {
  return {Q, std::hypot(Q.x, Q.y)};
}

double w_if(Vec3 p_f, Vec3 q, double k) {
  const double q_mag = norm(q);
  if (!(q_mag > 0.0)) throw std::domain_error("w_if: |q| must be positive");
  if (!(k > 0.0)) throw std::domain_error("w_if: k must be positive");
  const double pq = dot(p_f, q);
  // |p_f|^2 - (p_f.q_hat)^2 = |p_f x q_hat|^2 >= 0, so the subtraction is safe.
  const double transverse = norm2(p_f) - (pq * pq) / (q_mag * q_mag);
  return 4.0 * q_mag / k + 4.0 * k / q_mag - (4.0 / (k * k)) * transverse;
}

double transverse_profile(const BeamParams& beam, double Q_x, double Q_y,
                          const PhysicalConstants& c) {
  const double w0 = length_to_inverse_energy(beam.w0, c);  // [1/keV]
  const double inv_sqrt2 = 0.7071067811865476;
  return hermite_function(beam.n_x, w0 * Q_x * inv_sqrt2) *
         hermite_function(beam.n_y, w0 * Q_y * inv_sqrt2);
}

}  // namespace hgcompton
