#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <vector>

#include "hgcompton/errors.hpp"
#include "hgcompton/kinematics.hpp"

namespace hgcompton {

struct QuadratureConfig {
  double tol = 1e-6;              // relative tolerance on the integral
  int max_subdivisions = 4000;    // panel-split budget per integral
  double min_panel_width = 1e-6;  // [rad] below this a panel is finished, not split
  double eps_jac = kEpsJac;       // degenerate-Jacobian threshold for delta_roots
};

// Integrand sample: value plus a root-degeneracy flag that forces the
// surrounding panel to be subdivided regardless of its error estimate.
struct FlaggedValue {
  double value = 0.0;
  bool flagged = false;
};

struct IntegralResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int panels_used = 0;
};

// A breakpoint splits the domain; singular ones mark an integrable
// inverse-square-root endpoint, finished by a sqrt-substituted midpoint rule.
struct Breakpoint {
  double x;
  bool singular = false;
};

// 32-point Gauss-Legendre rule on [-1, 1].
const std::array<double, 32>& gl32_nodes();
const std::array<double, 32>& gl32_weights();

namespace detail {

struct Panel {
  double a = 0.0, b = 0.0;
  double val = 0.0, err = 0.0;
  bool flagged = false;
  bool done = false;
  // Endpoint adjacency to a singular breakpoint: 0 none, 1 left, 2 right, 3 both.
  int singular_ends = 0;
};

struct QueueEntry {
  double key;  // error, with flagged panels forced to the front
  std::uint64_t seq;
  std::size_t idx;
  bool operator<(const QueueEntry& o) const {
    if (key != o.key) return key < o.key;  // max-heap: larger key pops first
    return seq > o.seq;                    // older entry wins ties, deterministically
  }
};

template <typename F>
FlaggedValue gl32_panel(F&& f, double a, double b) {
  const auto& xs = gl32_nodes();
  const auto& ws = gl32_weights();
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double acc = 0.0;
  bool flag = false;
  for (int i = 0; i < 32; ++i) {
    const FlaggedValue fv = f(mid + half * xs[i]);
    acc += ws[i] * fv.value;
    flag |= fv.flagged;
  }
  return {acc * half, flag};
}

// Whole panel vs its two halves; the halves' sum is kept as the value.
template <typename F>
Panel make_panel(F&& f, double a, double b) {
  const double m = 0.5 * (a + b);
  const FlaggedValue whole = gl32_panel(f, a, b);
  const FlaggedValue left = gl32_panel(f, a, m);
  const FlaggedValue right = gl32_panel(f, m, b);
  Panel p;
  p.a = a;
  p.b = b;
  p.val = left.value + right.value;
  p.err = std::abs(p.val - whole.value);
  p.flagged = whole.flagged || left.flagged || right.flagged;
  return p;
}

// Integrate a sliver whose `end` endpoint (1 left, 2 right) carries a 1/sqrt
// singularity: t^2 = distance to that endpoint makes the integrand bounded.
// Composite midpoint, with a half-resolution pass as the error estimate.
template <typename F>
IntegralResult sqrt_substituted(F&& f, double a, double b, int end) {
  const double T = std::sqrt(b - a);
  auto eval = [&](int m_panels) {
    const double dt = T / m_panels;
    double acc = 0.0;
    for (int i = 0; i < m_panels; ++i) {
      const double t = (i + 0.5) * dt;
      const double x = (end == 1) ? a + t * t : b - t * t;
      acc += 2.0 * t * f(x).value;
    }
    return acc * dt;
  };
  const double coarse = eval(32);
  const double fine = eval(64);
  return {fine, std::abs(fine - coarse), 1};
}

}  // namespace detail

// Globally adaptive Gauss-Legendre integration of f over [lo, hi] with the
// domain pre-split at `breaks`. Worst panel first; panels flagged by the
// integrand are refined unconditionally; panels that shrink to
// min_panel_width next to a singular breakpoint are finished by the
// sqrt-substituted rule. Throws QuadratureFailure if the budget runs out
// above tolerance.
template <typename F>
IntegralResult integrate_adaptive(F&& f, double lo, double hi,
                                  const std::vector<Breakpoint>& breaks,
                                  const QuadratureConfig& cfg) {
  using detail::Panel;
  using detail::QueueEntry;

  std::vector<double> edges{lo, hi};
  std::vector<double> singular_pts;
  for (const auto& bp : breaks) {
    if (bp.x > lo && bp.x < hi) edges.push_back(bp.x);
    if (bp.singular && bp.x >= lo && bp.x <= hi) singular_pts.push_back(bp.x);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  std::sort(singular_pts.begin(), singular_pts.end());

  const auto is_singular_pt = [&](double x) {
    return std::binary_search(singular_pts.begin(), singular_pts.end(), x);
  };
  // Panel endpoints inherit exact edge doubles through bisection, so exact
  // comparison against the singular set is sound.
  const auto classify = [&](Panel& p) {
    p.singular_ends = (is_singular_pt(p.a) ? 1 : 0) | (is_singular_pt(p.b) ? 2 : 0);
  };

  std::vector<Panel> arena;
  std::priority_queue<QueueEntry> queue;
  std::uint64_t seq = 0;
  int flagged_open = 0;
  double sum_val = 0.0, sum_err = 0.0;

  const auto push_panel = [&](Panel p) {
    classify(p);
    sum_val += p.val;
    sum_err += p.err;
    if (p.flagged) ++flagged_open;
    const double key = p.flagged ? std::numeric_limits<double>::infinity() : p.err;
    arena.push_back(p);
    queue.push({key, seq++, arena.size() - 1});
  };

  for (std::size_t i = 0; i + 1 < edges.size(); ++i)
    push_panel(detail::make_panel(f, edges[i], edges[i + 1]));

  int budget = cfg.max_subdivisions;
  const auto converged = [&] {
    return flagged_open == 0 && sum_err <= cfg.tol * std::abs(sum_val) + 1e-300;
  };

  while (!queue.empty() && !converged() && budget > 0) {
    const QueueEntry top = queue.top();
    queue.pop();
    Panel& p = arena[top.idx];
    if (p.done) continue;
    const double width = p.b - p.a;

    if (width <= cfg.min_panel_width) {
      // Too narrow to split: finish it. Next to a singular breakpoint the
      // sqrt substitution removes the endpoint blowup; otherwise keep as is.
      sum_val -= p.val;
      sum_err -= p.err;
      if (p.flagged) --flagged_open;
      if (p.singular_ends == 1 || p.singular_ends == 2) {
        const IntegralResult r = detail::sqrt_substituted(f, p.a, p.b, p.singular_ends);
        p.val = r.value;
        p.err = r.error_estimate;
      } else if (p.singular_ends == 3) {
        const double m = 0.5 * (p.a + p.b);
        const IntegralResult rl = detail::sqrt_substituted(f, p.a, m, 1);
        const IntegralResult rr = detail::sqrt_substituted(f, m, p.b, 2);
        p.val = rl.value + rr.value;
        p.err = rl.error_estimate + rr.error_estimate;
      }
      p.flagged = false;
      p.done = true;  // stays in the arena, never re-queued
      sum_val += p.val;
      sum_err += p.err;
      --budget;
      continue;
    }

    sum_val -= p.val;
    sum_err -= p.err;
    if (p.flagged) --flagged_open;
    const double pa = p.a, pb = p.b, pm = 0.5 * (p.a + p.b);
    p.done = true;
    p.val = 0.0;
    p.err = 0.0;
    push_panel(detail::make_panel(f, pa, pm));
    push_panel(detail::make_panel(f, pm, pb));
    --budget;
  }

  // Canonical left-to-right summation keeps the result independent of the
  // refinement history's arithmetic drift.
  std::vector<const Panel*> live;
  live.reserve(arena.size());
  for (const auto& p : arena)
    if (!(p.done && p.val == 0.0 && p.err == 0.0)) live.push_back(&p);
  std::sort(live.begin(), live.end(),
            [](const Panel* x, const Panel* y) { return x->a < y->a; });
  IntegralResult out;
  double cval = 0.0, cerr = 0.0;  // Kahan compensations
  for (const Panel* p : live) {
    double y = p->val - cval, t = out.value + y;
    cval = (t - out.value) - y;
    out.value = t;
    y = p->err - cerr;
    t = out.error_estimate + y;
    cerr = (t - out.error_estimate) - y;
    out.error_estimate = t;
  }
  out.panels_used = static_cast<int>(live.size());

  if (flagged_open > 0 ||
      out.error_estimate > cfg.tol * std::abs(out.value) + 1e-300)
    throw QuadratureFailure("adaptive integration exhausted " +
                            std::to_string(cfg.max_subdivisions) +
                            " subdivisions above tolerance");
  return out;
}

// Convenience wrapper for smooth scalar integrands (no flags, no breakpoints).
template <typename G>
IntegralResult integrate_smooth(G&& g, double lo, double hi, double rel_tol,
                                int max_subdivisions = 2000) {
  QuadratureConfig cfg;
  cfg.tol = rel_tol;
  cfg.max_subdivisions = max_subdivisions;
  cfg.min_panel_width = 1e-12 * std::max(1.0, std::abs(hi - lo));
  return integrate_adaptive([&](double x) { return FlaggedValue{g(x), false}; }, lo,
                            hi, {}, cfg);
}

}  // namespace hgcompton
