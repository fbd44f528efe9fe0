#include "hgcompton/quadrature.hpp"

#include <cmath>

namespace hgcompton {

namespace {

struct GaussLegendre32 {
  std::array<double, 32> nodes{};
  std::array<double, 32> weights{};
  GaussLegendre32() {
    constexpr int n = 32;
    for (int i = 0; i < n / 2; ++i) {
      // i-th root of P_32 counted from +1, Newton from the Chebyshev estimate.
      double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int iter = 0; iter < 60; ++iter) {
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
          const double pk = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = pk;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double step = p1 / dp;
        x -= step;
        if (std::abs(step) < 1e-16) break;
      }
      const double w = 2.0 / ((1.0 - x * x) * dp * dp);
      nodes[n - 1 - i] = x;
      nodes[i] = -x;
      weights[n - 1 - i] = w;
      weights[i] = w;
    }
  }
};

const GaussLegendre32& rule() {
  static const GaussLegendre32 r;
  return r;
}

}  // namespace

const std::array<double, 32>& gl32_nodes() { return rule().nodes; }
const std::array<double, 32>& gl32_weights() { return rule().weights; }

}  // namespace hgcompton
