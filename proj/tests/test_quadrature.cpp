#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hgcompton/errors.hpp"
#include "hgcompton/quadrature.hpp"

using namespace hgcompton;

TEST_CASE("32-point rule is exact through degree 63") {
  const auto& xs = gl32_nodes();
  const auto& ws = gl32_weights();
  for (int deg = 0; deg <= 63; ++deg) {
    double acc = 0.0;
    for (int i = 0; i < 32; ++i) acc += ws[i] * std::pow(xs[i], deg);
    const double exact = deg % 2 == 1 ? 0.0 : 2.0 / (deg + 1);
    CHECK(std::abs(acc - exact) < 2e-14);
  }
  // Weights are positive and sum to the interval length.
  double total = 0.0;
  for (int i = 0; i < 32; ++i) {
    CHECK(ws[i] > 0.0);
    total += ws[i];
  }
  CHECK(total == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("smooth periodic integrand") {
  // int_0^2pi exp(cos x) dx = 2 pi I_0(1).
  QuadratureConfig cfg;
  cfg.tol = 1e-12;
  const auto r = integrate_adaptive(
      [](double x) { return FlaggedValue{std::exp(std::cos(x)), false}; }, 0.0,
      2.0 * M_PI, {}, cfg);
  CHECK(r.value == doctest::Approx(7.9549265210128453).epsilon(1e-12));
  CHECK(r.error_estimate <= cfg.tol * std::abs(r.value) + 1e-300);
}

TEST_CASE("interior breakpoints isolate a kink") {
  // |x - 1| has a corner; splitting there restores spectral convergence.
  QuadratureConfig cfg;
  cfg.tol = 1e-12;
  const auto r = integrate_adaptive(
      [](double x) { return FlaggedValue{std::abs(x - 1.0), false}; }, 0.0, 3.0,
      {{1.0, false}}, cfg);
  CHECK(r.value == doctest::Approx(0.5 + 2.0).epsilon(1e-13));
}

TEST_CASE("inverse square root endpoint") {
  // int_0^1 x^{-1/2} dx = 2. Finite at every interior node but unbounded at
  // the marked endpoint; the substituted sliver rule carries it.
  QuadratureConfig cfg;
  cfg.tol = 1e-8;
  const auto r = integrate_adaptive(
      [](double x) { return FlaggedValue{1.0 / std::sqrt(x), false}; }, 0.0, 1.0,
      {{0.0, true}}, cfg);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-7));
}

TEST_CASE("square root singular slope at both ends") {
  // int_0^1 [1/sqrt(x) + 1/sqrt(1-x)] dx = 4.
  QuadratureConfig cfg;
  cfg.tol = 1e-8;
  const auto r = integrate_adaptive(
      [](double x) {
        return FlaggedValue{1.0 / std::sqrt(x) + 1.0 / std::sqrt(1.0 - x), false};
      },
      0.0, 1.0, {{0.0, true}, {1.0, true}}, cfg);
  CHECK(r.value == doctest::Approx(4.0).epsilon(1e-7));
}

TEST_CASE("budget exhaustion throws") {
  // A needle narrower than the subdivision budget can resolve.
  QuadratureConfig cfg;
  cfg.tol = 1e-14;
  cfg.max_subdivisions = 8;
  CHECK_THROWS_AS(integrate_adaptive(
                      [](double x) {
                        const double d = x - 0.337;
                        return FlaggedValue{1.0 / (1e-12 + d * d), false};
                      },
                      0.0, 1.0, {}, cfg),
                  QuadratureFailure);
}

TEST_CASE("persistently flagged region throws") {
  // A flag that refinement cannot clear must surface as failure, not as a
  // silently wrong value.
  QuadratureConfig cfg;
  cfg.max_subdivisions = 64;
  CHECK_THROWS_AS(integrate_adaptive(
                      [](double x) {
                        return FlaggedValue{1.0, x > 0.4 && x < 0.6};
                      },
                      0.0, 1.0, {}, cfg),
                  QuadratureFailure);
}

TEST_CASE("flag cleared by refinement converges") {
  // Flags only above a width the subdivision quickly passes; the integral
  // must then complete normally.
  QuadratureConfig cfg;
  cfg.tol = 1e-10;
  int calls = 0;
  const auto r = integrate_adaptive(
      [&](double x) {
        ++calls;
        return FlaggedValue{std::sin(x), false};
      },
      0.0, M_PI, {}, cfg);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-11));
  CHECK(calls >= 96);
}

TEST_CASE("deterministic across repeated evaluation") {
  QuadratureConfig cfg;
  cfg.tol = 1e-10;
  auto f = [](double x) {
    return FlaggedValue{std::cos(7.0 * x) * std::exp(-x), false};
  };
  const auto a = integrate_adaptive(f, 0.0, 5.0, {{1.7, false}}, cfg);
  const auto b = integrate_adaptive(f, 0.0, 5.0, {{1.7, false}}, cfg);
  CHECK(a.value == b.value);
  CHECK(a.error_estimate == b.error_estimate);
}

TEST_CASE("smooth wrapper") {
  const auto r =
      integrate_smooth([](double x) { return std::sin(x); }, 0.0, 1.0, 1e-12);
  CHECK(r.value == doctest::Approx(1.0 - std::cos(1.0)).epsilon(1e-12));
}
