#include "hgcompton/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "hgcompton/amplitude.hpp"
#include "hgcompton/errors.hpp"
#include "hgcompton/quadrature.hpp"

namespace hgcompton {

namespace {

// Placeholder for the constraint function where Q_T > k (no real constraint
// surface); large enough that no band search ever keeps such a cell.
constexpr double kOutside = 1.0e9;

struct UBand {
  double a, b;
};

// Recursive band search for |g| <~ 10 eta on [a, b], using only endpoint
// samples of g. A cell is dropped once its endpoint values sit further from
// zero than the cell's own variation can bridge, kept once g is resolved at
// the eta scale.
template <typename G>
void refine_band(G&& g_of, double a, double b, double ga, double gb, double eta,
                 int depth, std::vector<UBand>& out) {
  const double variation = std::abs(gb - ga);
  const double closest = std::min(std::abs(ga), std::abs(gb));
  if (closest > 10.0 * eta + 1.5 * variation) return;
  if (variation <= eta) {
    if (closest <= 10.0 * eta) out.push_back({a, b});
    return;
  }
  if (depth == 0) {
    out.push_back({a, b});
    return;
  }
  const double m = 0.5 * (a + b);
  const double gm = g_of(m);
  refine_band(g_of, a, m, ga, gm, eta, depth - 1, out);
  refine_band(g_of, m, b, gm, gb, eta, depth - 1, out);
}

}  // namespace

double dcs_regularized_single(const BeamParams& beam, const ScatterPoint& pt,
                              double eta_E, double eta_Q,
                              const RegularizationParams& reg,
                              const PhysicalConstants& c) {
  if (!(pt.theta_q > 0.0 && pt.theta_q < M_PI))
    throw std::domain_error("theta_q must lie in (0, pi)");
  if (!(pt.E_q > 0.0 && pt.E_q < beam.k))
    throw KinematicallyForbidden("dcs_regularized requires 0 < E_q < k");
  if (!(eta_E > 0.0 && eta_Q > 0.0))
    throw std::domain_error("regularization widths must be positive");

  const double k = beam.k;
  const double m = c.m_e;
  const Vec3 q = scattered_momentum(pt);

  // Support window of the energy Gaussian, intersected with the |p_f| <= 2k box.
  const double E_star = m + k - pt.E_q;
  const double E_lo = std::max(m, E_star - 8.0 * eta_E);
  const double E_hi = E_star + 8.0 * eta_E;
  const double P_lo = std::sqrt(std::max(0.0, E_lo * E_lo - m * m));
  const double P_hi = std::min(2.0 * k, std::sqrt(E_hi * E_hi - m * m));

  const double gE_norm = 1.0 / (eta_E * std::sqrt(2.0 * M_PI));
  const double gQ_norm = 1.0 / (eta_Q * std::sqrt(2.0 * M_PI));

  const auto outer = [&](double P) -> double {
    const double E_f = std::sqrt(P * P + m * m);
    const double dE = E_f + pt.E_q - m - k;
    const double wE = gE_norm * std::exp(-0.5 * (dE / eta_E) * (dE / eta_E));
    if (wE < 1e-300) return 0.0;

    const auto middle = [&](double phi_p) -> double {
      const double cphi = std::cos(phi_p), sphi = std::sin(phi_p);

      const auto g_of = [&](double u) -> double {
        const double s = std::sqrt(std::max(0.0, 1.0 - u * u));
        const double Qx = P * s * cphi + q.x;
        const double Qy = P * s * sphi + q.y;
        const double QT2 = Qx * Qx + Qy * Qy;
        if (QT2 > k * k) return kOutside;
        return P * u + q.z - std::sqrt(k * k - QT2);
      };

      // Coarse scan over u, then recursive refinement of candidate cells.
      std::vector<UBand> cells;
      const int N = reg.scan_cells;
      double g_prev = g_of(-1.0);
      for (int i = 0; i < N; ++i) {
        const double a = -1.0 + 2.0 * i / N;
        const double b = -1.0 + 2.0 * (i + 1) / N;
        const double g_next = g_of(b);
        refine_band(g_of, a, b, g_prev, g_next, eta_Q, 48, cells);
        g_prev = g_next;
      }
      if (cells.empty()) return 0.0;
      std::vector<UBand> bands;
      for (const UBand& cell : cells) {
        if (!bands.empty() && cell.a <= bands.back().b)
          bands.back().b = std::max(bands.back().b, cell.b);
        else
          bands.push_back(cell);
      }

      const auto f_u = [&](double u) -> double {
        const double s = std::sqrt(std::max(0.0, 1.0 - u * u));
        const double Qx = P * s * cphi + q.x;
        const double Qy = P * s * sphi + q.y;
        const double QT2 = Qx * Qx + Qy * Qy;
        if (QT2 > k * k) return 0.0;
        const double g = P * u + q.z - std::sqrt(k * k - QT2);
        const double arg = 0.5 * (g / eta_Q) * (g / eta_Q);
        if (arg > 400.0) return 0.0;
        const Vec3 p_f{P * s * cphi, P * s * sphi, P * u};
        const double W = w_if(p_f, q, k);
        const double F = transverse_profile(beam, Qx, Qy, c);
        return gQ_norm * std::exp(-arg) * W * F * F;
      };

      double acc = 0.0;
      for (const UBand& band : bands)
        acc += integrate_smooth(f_u, band.a, band.b, reg.rel_tol, 400).value;
      return acc;
    };

    // Uniform initial panels so no support bump can slip between the nodes
    // of one wide panel; adaptive refinement takes over from there.
    std::vector<Breakpoint> phi_breaks;
    for (int i = 1; i < 32; ++i) phi_breaks.push_back({2.0 * M_PI * i / 32, false});
    QuadratureConfig phi_cfg;
    phi_cfg.tol = reg.rel_tol;
    phi_cfg.max_subdivisions = 800;
    phi_cfg.min_panel_width = 1e-9;
    const double I_phi =
        integrate_adaptive([&](double x) { return FlaggedValue{middle(x), false}; },
                           0.0, 2.0 * M_PI, phi_breaks, phi_cfg)
            .value;
    return (P * P / E_f) * wE * I_phi;
  };

  const double I_P = integrate_smooth(outer, P_lo, P_hi, reg.rel_tol, 200).value;
  return dcs_prefactor(beam, pt.E_q, c) * I_P;
}

CrossSectionValue dcs_regularized(const BeamParams& beam, const ScatterPoint& pt,
                                  const RegularizationParams& reg,
                                  const PhysicalConstants& c) {
  const double R1 = dcs_regularized_single(beam, pt, reg.eta_E, reg.eta_Q, reg, c);
  const double R2 =
      dcs_regularized_single(beam, pt, 0.5 * reg.eta_E, 0.5 * reg.eta_Q, reg, c);
  // Leading bias is O(eta^2); one halving step cancels it.
  const double R_ext = (4.0 * R2 - R1) / 3.0;
  // Off-support points return Gaussian-tail dust many hundred orders below
  // any physical value; the relative criterion is meaningless there.
  const double dead = 1e-30 * dcs_prefactor(beam, pt.E_q, c);
  if (std::max(std::abs(R1), std::abs(R2)) > dead &&
      std::abs(R1 - R2) > 5e-3 * std::abs(R_ext))
    throw OracleUnconverged("eta and eta/2 results differ beyond 5e-3 relative");
  return {R_ext, std::abs(R2 - R_ext)};
}

std::vector<ValidationInstance> validation_instances(int count,
                                                     unsigned long long seed,
                                                     double k,
                                                     const RegularizationParams& base,
                                                     const PhysicalConstants& c) {
  constexpr double kTheta[3] = {0.1 * M_PI, 0.5 * M_PI, 0.9 * M_PI};
  constexpr double kWaist[3] = {25.0, 75.0, 250.0};

  std::mt19937_64 rng(seed);
  // Bit-stable uniform in [0, 1); independent of library distribution details.
  const auto u01 = [&rng] { return (rng() >> 11) * 0x1.0p-53; };

  std::vector<ValidationInstance> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    const double theta = kTheta[i % 3];
    const double w0 = kWaist[(i / 3) % 3];
    const int nx = static_cast<int>(rng() % 4);
    const int ny = static_cast<int>(rng() % 4);
    const BeamParams beam{k, w0, HermiteOrder(nx), HermiteOrder(ny)};

    const double hw = support_halfwidth_estimate(beam, theta, c);
    const double E_0 = compton_line_energy(k, theta, c);
    const double phi_q = 2.0 * M_PI * u01();

    // The smearing must resolve the finest spectral feature, the node
    // spacing of the highest transverse order, or the quadratic error
    // regime the two-step extrapolation relies on never sets in. x_cut
    // converts the support half-width back to one unit of Hermite argument.
    const int n_max = std::max(nx, ny);
    const double x_cut = 2.2 + 0.45 * n_max;
    const double node_gap = (hw / x_cut) * M_PI / std::sqrt(2.0 * n_max + 1.0);
    const double eta_cap = std::min(hw / 8.0, node_gap / 45.0);

    // A relative comparison right at a profile node is ill conditioned; the
    // sharp value there sits orders of magnitude below its neighborhood.
    // Resample the offset until the point carries a few percent of the peak.
    double peak = 0.0;
    for (int s = -4; s <= 4; ++s) {
      const ScatterPoint probe{theta, phi_q, E_0 + 0.45 * hw * (s / 4.0)};
      peak = std::max(peak, dcs(beam, probe, {}, c).value);
    }
    double dE = (2.0 * u01() - 1.0) * 0.5 * hw;
    for (int tries = 0; tries < 16; ++tries) {
      if (dcs(beam, {theta, phi_q, E_0 + dE}, {}, c).value >= 0.05 * peak)
        break;
      dE = (2.0 * u01() - 1.0) * 0.5 * hw;
    }

    RegularizationParams reg = base;
    reg.eta_E = std::min(base.eta_E, eta_cap);
    reg.eta_Q = std::min(base.eta_Q, eta_cap);
    out.push_back({beam, {theta, phi_q, E_0 + dE}, reg});
  }
  return out;
}

}  // namespace hgcompton
