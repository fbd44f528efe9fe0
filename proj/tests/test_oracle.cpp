#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hgcompton/cross_section.hpp"
#include "hgcompton/errors.hpp"
#include "hgcompton/oracle.hpp"

using namespace hgcompton;

namespace {

const PhysicalConstants kC;

BeamParams beam(double w0, int nx, int ny) {
  return {500.0, w0, HermiteOrder(nx), HermiteOrder(ny)};
}

}  // namespace

TEST_CASE("brute force agrees with the analytic reduction") {
  // The regularized route smears both deltas and integrates the full
  // electron momentum space; it shares no root algebra with dcs.
  const BeamParams b = beam(75.0, 1, 0);
  const double theta = 0.1 * M_PI;
  const double E0 = compton_line_energy(b.k, theta, kC);
  const ScatterPoint pt{theta, 0.25 * M_PI, E0 + 1.0};

  const CrossSectionValue fast = dcs(b, pt, {}, kC);
  const CrossSectionValue slow = dcs_regularized(b, pt, {}, kC);
  CHECK(slow.value == doctest::Approx(fast.value).epsilon(1e-3));
}

TEST_CASE("smearing bias is quadratic in the width") {
  // Halving eta must cut the deviation from the sharp limit by about four;
  // the Richardson step relies on exactly this order.
  const BeamParams b = beam(75.0, 0, 1);
  const double theta = 0.5 * M_PI;
  const double E0 = compton_line_energy(b.k, theta, kC);
  const ScatterPoint pt{theta, 0.6, E0 - 0.8};

  const double sharp = dcs(b, pt, {}, kC).value;
  const double r1 = dcs_regularized_single(b, pt, 0.4, 0.4, {}, kC);
  const double r2 = dcs_regularized_single(b, pt, 0.2, 0.2, {}, kC);
  const double r4 = dcs_regularized_single(b, pt, 0.1, 0.1, {}, kC);

  const double d1 = std::abs(r1 - sharp), d2 = std::abs(r2 - sharp),
               d4 = std::abs(r4 - sharp);
  CHECK(d2 < 0.4 * d1);
  CHECK(d4 < 0.4 * d2);
  // And the ratio is consistent with order two, not something faster that
  // would make the extrapolation weights wrong.
  CHECK(d1 / d2 == doctest::Approx(4.0).epsilon(0.8));
}

TEST_CASE("empty support evaluates to numerical zero") {
  const BeamParams b = beam(75.0, 0, 0);
  const double theta = 0.1 * M_PI;
  const double E0 = compton_line_energy(b.k, theta, kC);
  const double peak = dcs(b, {theta, 0.0, E0}, {}, kC).value;
  const CrossSectionValue v = dcs_regularized(b, {theta, 0.0, E0 - 30.0}, {}, kC);
  CHECK(std::abs(v.value) < 1e-12 * peak);
}

TEST_CASE("mirror symmetry holds without the reduction") {
  // phi -> -phi flips Q_y only; the smeared integrand is even in it.
  const BeamParams b = beam(250.0, 1, 1);
  const double theta = 0.5 * M_PI;
  const double E0 = compton_line_energy(b.k, theta, kC);
  RegularizationParams reg;
  const double a = dcs_regularized_single(b, {theta, 0.8, E0 + 0.2}, 0.05, 0.05,
                                          reg, kC);
  const double m = dcs_regularized_single(b, {theta, 2.0 * M_PI - 0.8, E0 + 0.2},
                                          0.05, 0.05, reg, kC);
  CHECK(m == doctest::Approx(a).epsilon(1e-4));
}

TEST_CASE("instance generator is deterministic and stays inside the study ranges") {
  const auto a = validation_instances(20, 20260818ULL, 500.0, {}, kC);
  const auto b = validation_instances(20, 20260818ULL, 500.0, {}, kC);
  REQUIRE(a.size() == 20);
  for (int i = 0; i < 20; ++i) {
    CHECK(a[i].pt.E_q == b[i].pt.E_q);
    CHECK(a[i].pt.phi_q == b[i].pt.phi_q);
    CHECK(a[i].beam.n_x.n == b[i].beam.n_x.n);

    // Study values only, offsets inside the support, widths capped so the
    // smearing stays well inside it.
    const double th = a[i].pt.theta_q / M_PI;
    CHECK((std::abs(th - 0.1) < 1e-12 || std::abs(th - 0.5) < 1e-12 ||
           std::abs(th - 0.9) < 1e-12));
    CHECK((a[i].beam.w0 == 25.0 || a[i].beam.w0 == 75.0 || a[i].beam.w0 == 250.0));
    CHECK(a[i].beam.n_x.n <= 3);
    CHECK(a[i].beam.n_y.n <= 3);
    const double hw = support_halfwidth_estimate(a[i].beam, a[i].pt.theta_q, kC);
    const double E0 = compton_line_energy(500.0, a[i].pt.theta_q, kC);
    CHECK(std::abs(a[i].pt.E_q - E0) <= 0.5 * hw + 1e-12);
    const int n_max = std::max(a[i].beam.n_x.n, a[i].beam.n_y.n);
    const double x_cut = 2.2 + 0.45 * n_max;
    const double gap = (hw / x_cut) * M_PI / std::sqrt(2.0 * n_max + 1.0);
    CHECK(a[i].reg.eta_E <= std::min(hw / 8.0, gap / 45.0) + 1e-12);
    CHECK(a[i].reg.eta_Q == a[i].reg.eta_E);
  }

  // A different seed must actually move the points.
  const auto c2 = validation_instances(20, 1ULL, 500.0, {}, kC);
  int moved = 0;
  for (int i = 0; i < 20; ++i)
    if (c2[i].pt.phi_q != a[i].pt.phi_q) ++moved;
  CHECK(moved > 10);
}
