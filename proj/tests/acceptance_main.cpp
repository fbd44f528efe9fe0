// Acceptance gate for the Hermite-Gaussian Compton engine: eight
// certification criteria, one verdict line each, exit code = number of
// failures. Each criterion pins a property the physics fixes outright
// (orthonormality, cross-route agreement, mirror symmetry, node counts,
// plane-wave limit, width trends and bracket, determinism) at the tolerance
// printed on its line.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <exception>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hgcompton/cross_section.hpp"
#include "hgcompton/hermite.hpp"
#include "hgcompton/oracle.hpp"
#include "hgcompton/run_config.hpp"
#include "hgcompton/table_io.hpp"

using namespace hgcompton;

namespace {

const PhysicalConstants kC{};

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> xs(n);
  for (int i = 0; i < n; ++i) xs[i] = a + (b - a) * i / (n - 1);
  return xs;
}

// Spectrum on a window of +-span estimated half-widths around the line.
SpectrumTable spectrum_window(const BeamParams& beam, double theta, double phi,
                              double span, int n) {
  const double E0 = compton_line_energy(beam.k, theta, kC);
  const double hw = support_halfwidth_estimate(beam, theta, kC);
  return energy_spectrum(beam, theta, phi, linspace(E0 - span * hw, E0 + span * hw, n),
                         {}, kC);
}

double peak_of(const SpectrumTable& s) {
  double p = 0.0;
  for (const auto& c : s.grid) p = std::max(p, c.val.value);
  return p;
}

// Full width of the region carrying at least `floor` of the spectral peak.
double support_width(const SpectrumTable& s, double floor) {
  const double cut = floor * peak_of(s);
  int lo = -1, hi = -1;
  for (int i = 0; i < static_cast<int>(s.grid.size()); ++i)
    if (s.grid[i].val.value >= cut) {
      if (lo < 0) lo = i;
      hi = i;
    }
  return s.grid[hi].E_q - s.grid[lo].E_q;
}

// Shared width scans for the trend and bracket criteria; beam mode (1,0)
// throughout, phi = 0. Keyed by (w0, theta/pi).
struct WidthScan {
  double E0 = 0.0;
  double width = 0.0;  // full width above 1% of peak [keV]
};

const WidthScan& width_scan(double w0, double theta_pi) {
  static std::map<std::pair<double, double>, WidthScan> cache;
  const auto key = std::make_pair(w0, theta_pi);
  auto it = cache.find(key);
  if (it == cache.end()) {
    const BeamParams beam{500.0, w0, HermiteOrder(1), HermiteOrder(0)};
    const double theta = theta_pi * M_PI;
    const auto spec = spectrum_window(beam, theta, 0.0, 1.3, 801);
    it = cache.emplace(key, WidthScan{compton_line_energy(500.0, theta, kC),
                                      support_width(spec, 0.01)}).first;
  }
  return it->second;
}

Verdict hermite_orthonormality() {
  // Composite 32-point Gauss-Legendre over [-20, 20]; the exp(-x^2) tails
  // beyond are far below the tolerance.
  const auto& xs = gl32_nodes();
  const auto& ws = gl32_weights();
  double worst = 0.0;
  for (int n = 0; n <= 12; ++n)
    for (int m = n; m <= 12; ++m) {
      double acc = 0.0;
      for (int p = -20; p < 20; ++p)
        for (int i = 0; i < 32; ++i) {
          const double x = p + 0.5 * (xs[i] + 1.0);
          acc += 0.5 * ws[i] * hermite_function(HermiteOrder(n), x) *
                 hermite_function(HermiteOrder(m), x);
        }
      worst = std::max(worst, std::abs(acc - (n == m ? 1.0 : 0.0)));
    }
  return {worst < 1e-10,
          fmt("max |<f_n,f_m> - delta_nm| = %.1e for n,m <= 12, tol 1e-10", worst)};
}

Verdict reduction_vs_oracle() {
  // The two routes share only the prefactor: the analytic delta reduction
  // against the regularized 3D integral, on the standard instance draw.
  const auto inst = validation_instances(20, 20260818ULL, 500.0, {}, kC);
  double worst = 0.0;
  int unconverged = 0;
  for (const auto& it : inst) {
    const double d = dcs(it.beam, it.pt, {}, kC).value;
    try {
      const double o = dcs_regularized(it.beam, it.pt, it.reg, kC).value;
      const double dev =
          std::abs(d - o) / std::max({std::abs(d), std::abs(o), 1e-300});
      worst = std::max(worst, dev);
    } catch (const OracleUnconverged&) {
      ++unconverged;
    }
  }
  if (unconverged > 0)
    return {false, fmt("%d of 20 instances failed to converge, max relative "
                       "deviation elsewhere = %.1e",
                       unconverged, worst)};
  return {worst <= 1e-3,
          fmt("20 instances, max relative deviation = %.1e, tol 1e-3", worst)};
}

Verdict mirror_symmetry() {
  // phi -> -phi and phi -> pi - phi both land back on a 16-point azimuth
  // grid, so the comparison needs no interpolation.
  const BeamParams beam{500.0, 25.0, HermiteOrder(2), HermiteOrder(1)};
  double v[36][16];
  for (int j = 0; j < 36; ++j) {
    const double theta = M_PI * (j + 1) / 37.0;
    const double E0 = compton_line_energy(beam.k, theta, kC);
    for (int i = 0; i < 16; ++i)
      v[j][i] = dcs(beam, {theta, 2.0 * M_PI * i / 16.0, E0}, {}, kC).value;
  }
  double worst = 0.0;
  for (int j = 0; j < 36; ++j)
    for (int i = 0; i < 16; ++i) {
      const double a = v[j][i];
      for (const double b : {v[j][(16 - i) % 16], v[j][(8 - i + 16) % 16]}) {
        const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
        worst = std::max(worst, std::abs(a - b) / scale);
      }
    }
  return {worst < 1e-5,
          fmt("36x16 grid at the line, max relative asymmetry = %.1e, tol 1e-5",
              worst)};
}

Verdict node_counts() {
  // Spectral dips at phi = 0 count n_x, at phi = pi/2 count n_y.
  int checked = 0, matched = 0;
  std::string miss;
  for (int nx = 0; nx <= 3; ++nx)
    for (int ny = 0; ny <= 1; ++ny) {
      const BeamParams beam{500.0, 75.0, HermiteOrder(nx), HermiteOrder(ny)};
      for (int axis = 0; axis < 2; ++axis) {
        const double phi = axis == 0 ? 0.0 : 0.5 * M_PI;
        const int want = axis == 0 ? nx : ny;
        const auto spec = spectrum_window(beam, 0.1 * M_PI, phi, 1.1, 321);
        const int got = count_nodes(spec);
        ++checked;
        if (got == want)
          ++matched;
        else if (miss.empty())
          miss = fmt(", first miss (%d,%d) phi=%s: got %d want %d", nx, ny,
                     axis == 0 ? "0" : "pi/2", got, want);
      }
    }
  return {matched == checked,
          fmt("%d/%d exact matches over (n_x,n_y) in {0..3}x{0,1}%s", matched,
              checked, miss.c_str())};
}

Verdict plane_wave_limit() {
  // n = (0,0), w0 = 250 pm: the energy-integrated spectrum must reproduce
  // the unpolarized plane-wave angular cross section.
  const BeamParams beam{500.0, 250.0, HermiteOrder(0), HermiteOrder(0)};
  double worst = 0.0;
  for (const double theta_pi : {0.1, 0.5}) {
    const double theta = theta_pi * M_PI;
    const auto spec = spectrum_window(beam, theta, 0.0, 1.3, 601);
    double integral = 0.0;
    for (size_t i = 1; i < spec.grid.size(); ++i)
      integral += 0.5 * (spec.grid[i].val.value + spec.grid[i - 1].val.value) *
                  (spec.grid[i].E_q - spec.grid[i - 1].E_q);
    const double kn = klein_nishina_reference(500.0, theta, kC);
    worst = std::max(worst, std::abs(integral - kn) / kn);
  }
  return {worst <= 0.02,
          fmt("energy-integrated spectrum vs plane-wave reference, max relative "
              "difference = %.1e at theta in {0.1, 0.5}pi, tol 2e-2",
              worst)};
}

Verdict width_trends() {
  const double t1 = width_scan(25.0, 0.1).width;
  const double t2 = width_scan(25.0, 0.5).width;
  const double t3 = width_scan(25.0, 0.9).width;
  const double w1 = t1;
  const double w2 = width_scan(75.0, 0.1).width;
  const double w3 = width_scan(250.0, 0.1).width;
  const bool pass = t1 > t2 && t2 > t3 && w1 > w2 && w2 > w3;
  return {pass,
          fmt("1%%-of-peak widths [keV]: theta series %.3g > %.3g > %.3g, "
              "waist series %.3g > %.3g > %.3g",
              t1, t2, t3, w1, w2, w3)};
}

Verdict width_bracket() {
  bool pass = true;
  std::string parts;
  for (const double w0 : {25.0, 75.0}) {
    for (const double theta_pi : {0.1, 0.5}) {
      const auto& s = width_scan(w0, theta_pi);
      const double ratio = 0.5 * s.width / s.E0;
      const bool ok = ratio >= 5e-4 && ratio <= 2e-2;
      pass = pass && ok;
      parts += fmt("%sw0=%g theta=%gpi: %.2e%s", parts.empty() ? "" : ", ", w0,
                   theta_pi, ratio, ok ? "" : " OUT OF [5e-4, 2e-2]");
    }
  }
  return {pass, fmt("half-width over line energy: %s", parts.c_str())};
}

Verdict determinism_roundtrip() {
  // Identical bytes across repeated runs and across thread counts; the
  // worker partition must not leak into the numbers.
  const BeamParams beam{500.0, 75.0, HermiteOrder(2), HermiteOrder(1)};
  const auto thetas = linspace(0.15 * M_PI, 0.85 * M_PI, 4);
  const std::vector<double> phis = {0.0, 0.4, 1.1, 3.3};
  const std::vector<double> dEs = {-1.0, 0.0, 1.0};
  RunConfig cfg;
  const auto csv_of = [&](int threads) {
    const auto table = angular_scan(beam, thetas, phis, dEs, {}, kC, threads);
    return render_csv(cfg, records_from(table, cfg.units));
  };
  const std::string a = csv_of(1);
  const std::string b = csv_of(1);
  const std::string c = csv_of(4);
  const bool rows_ok = a == b && a == c;

  // Round-trip a config touching every section, with values that survive
  // only at full 17-digit precision.
  RunConfig rt;
  rt.mode = RunMode::spectrum;
  rt.w0_pm = 25.0;
  rt.nx = 3;
  rt.ny = 1;
  rt.theta_pi = 0.1 + 1e-17;
  rt.phi_list_pi = {0.0, 0.25, 1.0 / 3.0};
  rt.e_min_keV = 440.12345678901234;
  rt.e_max_keV = 460.98765432109876;
  rt.e_step_keV = 0.0125;
  rt.units = OutputUnits::barn;
  rt.format = OutputFormat::json;
  rt.seed = 18446744073709551615ULL;
  const bool rt_ok = parse_config(serialize_config(rt)) == rt;

  return {rows_ok && rt_ok,
          fmt("scan bytes identical across reruns %s, across 1 vs 4 threads %s, "
              "config round-trip %s",
              a == b ? "yes" : "NO", a == c ? "yes" : "NO",
              rt_ok ? "exact" : "NOT exact")};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Verdict (*fn)();
  };
  const Criterion table[] = {
      {"Hermite orthonormality", hermite_orthonormality},
      {"reduction vs regularized oracle", reduction_vs_oracle},
      {"mirror symmetry of the angular map", mirror_symmetry},
      {"spectral node counts", node_counts},
      {"plane-wave limit", plane_wave_limit},
      {"spectral width trends", width_trends},
      {"spectral width bracket", width_bracket},
      {"determinism and config round-trip", determinism_roundtrip},
  };
  int failures = 0;
  for (int i = 0; i < 8; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = table[i].fn();
    } catch (const std::exception& e) {
      v = {false, fmt("unexpected exception: %s", e.what())};
    }
    const double dt =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    std::printf("[%s] criterion %d: %s (%s; %.1f s)\n", v.pass ? "PASS" : "FAIL",
                i + 1, table[i].name, v.detail.c_str(), dt);
    std::fflush(stdout);
    if (!v.pass) ++failures;
  }
  std::printf("%d of 8 criteria passed\n", 8 - failures);
  return failures;
}
