#include "hgcompton/kinematics.hpp"

#include <algorithm>
#include <cmath>

#include "hgcompton/errors.hpp"

namespace hgcompton {

bool paraxial_ok(const BeamParams& beam, const PhysicalConstants& c) {
  return beam.k * (beam.w0 / c.hbar_c) > 5.0;
}

double compton_line_energy(double k, double theta_q, const PhysicalConstants& c) {
  if (!(k > 0.0)) throw std::domain_error("k must be positive");
  if (!(theta_q >= 0.0 && theta_q <= M_PI)) throw std::domain_error("theta_q outside [0, pi]");
  return k / (1.0 + (k / c.m_e) * (1.0 - std::cos(theta_q)));
}

ElectronState electron_momentum(double k, double E_q, const PhysicalConstants& c) {
  if (!(E_q > 0.0)) throw std::domain_error("E_q must be positive");
  if (E_q > k) throw KinematicallyForbidden("E_q > k leaves E_f below the electron mass");
  const double E_f = c.m_e + k - E_q;
  // P^2 = E_f^2 - m^2 = (k - E_q)(E_f + m); the factored form keeps precision near E_q = k.
  const double P = std::sqrt((k - E_q) * (E_f + c.m_e));
  return {P, E_f};
}

Vec3 scattered_momentum(const ScatterPoint& pt) {
  const double st = std::sin(pt.theta_q);
  return {pt.E_q * st * std::cos(pt.phi_q), pt.E_q * st * std::sin(pt.phi_q),
          pt.E_q * std::cos(pt.theta_q)};
}

Vec3 electron_momentum_vector(double P, double u, double phi_p) {
  const double s = std::sqrt(std::max(0.0, 1.0 - u * u));
  return {P * s * std::cos(phi_p), P * s * std::sin(phi_p), P * u};
}

RootSet delta_roots(const ElectronState& es, const ScatterPoint& pt, double phi_p,
                    double k, double eps_jac) {
  RootSet out;
  const double P = es.P;
  if (P <= 0.0) return out;  // E_q = k endpoint; grids exclude it

  const double A = std::cos(pt.theta_q);
  const double B = std::sin(pt.theta_q) * std::cos(phi_p - pt.phi_q);
  const double C = (k * k - P * P - pt.E_q * pt.E_q) / (2.0 * P * pt.E_q);
  const double AB2 = A * A + B * B;

  // A = B = 0 only at theta_q = pi/2 with phi_p - phi_q = +-pi/2; the constraint
  // then reads 0 = C, solvable for no isolated u. C ~ 0 there is a tangency line.
  if (AB2 < 1e-28) {
    out.degenerate = std::abs(C) < 1e-12;
    return out;
  }
  const double disc = AB2 - C * C;  // discriminant/B^2 of the squared equation
  if (disc < 0.0) return out;       // |C| > sqrt(A^2+B^2): out of reach

  const double root_term = std::abs(B) * std::sqrt(disc);
  double candidates[2] = {(A * C + root_term) / AB2, (A * C - root_term) / AB2};
  const int n_cand = (root_term == 0.0) ? 1 : 2;  // tangency collapses to a double root

  for (int i = 0; i < n_cand; ++i) {
    double u = candidates[i];
    if (std::abs(u) > 1.0 + 1e-12) continue;
    u = std::clamp(u, -1.0, 1.0);
    const double s = std::sqrt(std::max(0.0, 1.0 - u * u));
    // Squaring admits ghosts with B s = -(C - A u); keep only true solutions.
    if (std::abs(B * s - (C - A * u)) > 1e-9 * (1.0 + std::abs(C))) continue;

    const Vec3 q = scattered_momentum(pt);
    const Vec3 p_f = electron_momentum_vector(P, u, phi_p);
    const Vec3 Q = p_f + q;
    if (Q.z < 0.0) continue;
    if (std::abs(norm(Q) - k) > 1e-9 * k) continue;

    // g'(u) = P E_q (A - B u/s)/Q_z; near u = +-1 the B-term is a removable
    // 0 * inf and is dropped (B s = C - A u forces B -> 0 there).
    double ghat;
    if (s < 1e-10) {
      ghat = A;
    } else {
      ghat = A - B * u / s;
    }
    if (std::abs(ghat) < eps_jac) {
      out.degenerate = true;
      continue;
    }
    KinematicRoot r;
    r.u = u;
    r.phi_p = phi_p;
    r.jacobian_weight = Q.z / (P * pt.E_q * std::abs(ghat));
    r.Q = Q;
    out.roots[out.count++] = r;
  }
  return out;
}

}  // namespace hgcompton
