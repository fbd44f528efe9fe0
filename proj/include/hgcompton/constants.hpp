#pragma once

#include <stdexcept>

namespace hgcompton {

// Natural units, hbar = c = 1, energies in keV. Lengths enter in pm and are
// converted on ingestion via hbar_c.
struct PhysicalConstants {
  double m_e = 510.99895;          // electron mass [keV]
  double alpha = 1.0 / 137.035999; // fine-structure constant
  double hbar_c = 197.3269804;     // [keV pm]
};

// w [pm] -> w/hbar_c [1/keV].
inline double length_to_inverse_energy(double w_pm, const PhysicalConstants& c) {
  if (!(w_pm > 0.0)) throw std::domain_error("length must be positive");
  return w_pm / c.hbar_c;
}

// x [1/keV^2] -> barn. (hbar_c)^2 in keV^2 pm^2, 1 pm^2 = 1e-20 cm^2, 1 barn = 1e-24 cm^2.
inline double natural_area_to_barn(double x) {
  if (!(x >= 0.0)) throw std::domain_error("area must be nonnegative");
  constexpr double hbar_c = 197.3269804;
  return x * hbar_c * hbar_c * 1.0e4;
}

}  // namespace hgcompton
