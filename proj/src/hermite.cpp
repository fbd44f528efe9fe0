#include "hgcompton/hermite.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hgcompton {

HermiteOrder::HermiteOrder(int n_) : n(n_) {
  if (n_ < 0 || n_ > kMaxHermiteOrder)
    throw std::domain_error("Hermite order out of range [0, " +
                            std::to_string(kMaxHermiteOrder) + "]: " + std::to_string(n_));
}

double hermite_function(HermiteOrder n, double x) {
  if (!std::isfinite(x)) throw std::domain_error("hermite_function: x not finite");
  // f_0 = pi^{-1/4} exp(-x^2/2); f_{k+1} = x sqrt(2/(k+1)) f_k - sqrt(k/(k+1)) f_{k-1}.
  const double f0 = 0.7511255444649425 * std::exp(-0.5 * x * x);
  if (n.n == 0) return f0;
  double fkm1 = f0;
  double fk = std::sqrt(2.0) * x * f0;
  for (int k = 1; k < n.n; ++k) {
    const double fkp1 =
        x * std::sqrt(2.0 / (k + 1)) * fk - std::sqrt(double(k) / (k + 1)) * fkm1;
    fkm1 = fk;
    fk = fkp1;
  }
  return fk;
}

}  // namespace hgcompton
