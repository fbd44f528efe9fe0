#pragma once

namespace hgcompton {

// Order cap for the normalized recurrence; accuracy degrades far above this,
// and nothing here needs more.
inline constexpr int kMaxHermiteOrder = 60;

struct HermiteOrder {
  int n;
  explicit HermiteOrder(int n_);
};

// Orthonormal Hermite function f_n(x) = (2^n sqrt(pi) n!)^{-1/2} H_n(x) exp(-x^2/2),
// evaluated by the normalized three-term recurrence with the Gaussian folded
// into f_0. Never forms H_n or n! separately.
double hermite_function(HermiteOrder n, double x);

}  // namespace hgcompton
