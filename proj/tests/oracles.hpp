// Copyright 2026 The OCCO Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Reference computations written from the defining formulas, independent of
// the library code paths they are compared against.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <vector>

namespace oracle {

inline long double kl(const std::vector<double>& a, const std::vector<double>& b) {
  long double s = 0.0L;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > 0.0) s += static_cast<long double>(a[i]) * std::log(static_cast<long double>(a[i]) / b[i]);
  }
  return s;
}

// Quadratic saddle with center (a, b), from the closed form.
struct Saddle {
  double a = 0.0;
  double b = 0.0;
  double value(double x, double y) const {
    const double dx = x - a, dy = y - b;
    return 0.5 * dx * dx - 0.5 * dy * dy + dx * dy;
  }
  double gx(double x, double y) const { return (x - a) + (y - b); }
  double gy_neg(double x, double y) const { return (y - b) - (x - a); }
};

inline double argmin_1d(const std::function<double(double)>& g, double lo, double hi, std::size_t n) {
  double best = std::numeric_limits<double>::infinity();
  double arg = lo;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    const double v = g(x);
    if (v < best) {
      best = v;
      arg = x;
    }
  }
  return arg;
}

// max |g| on an n x n grid over [-1, 1]^2.
inline double grid_max_abs(const std::function<double(double, double)>& g, std::size_t n) {
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(n - 1);
    for (std::size_t j = 0; j < n; ++j) {
      const double y = -1.0 + 2.0 * static_cast<double>(j) / static_cast<double>(n - 1);
      best = std::max(best, std::abs(g(x, y)));
    }
  }
  return best;
}

// argmin of KL(w, q / |q|_1) over {w : w_i >= floor, sum w = 1} for d = 2 or 3,
// by nested golden-section search on the free coordinates.
inline double golden(const std::function<double(double)>& g, double lo, double hi) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - r * (b - a), d = a + r * (b - a);
  double gc = g(c), gd = g(d);
  for (int i = 0; i < 200 && b - a > 1e-15; ++i) {
    if (gc < gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - r * (b - a);
      gc = g(c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + r * (b - a);
      gd = g(d);
    }
  }
  return 0.5 * (a + b);
}

inline std::vector<double> clipped_kl_projection(const std::vector<double>& q, double floor) {
  double total = 0.0;
  for (double v : q) total += v;
  std::vector<double> p(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) p[i] = q[i] / total;
  auto obj = [&](const std::vector<double>& w) { return static_cast<double>(kl(w, p)); };
  if (q.size() == 2) {
    const double w0 = golden([&](double a) { return obj({a, 1.0 - a}); }, floor, 1.0 - floor);
    return {w0, 1.0 - w0};
  }
  // d = 3: outer search on w0, inner on w1.
  auto inner = [&](double a) {
    const double hi = 1.0 - a - floor;
    const double b = golden([&](double t) { return obj({a, t, 1.0 - a - t}); }, floor, hi);
    return b;
  };
  const double a = golden(
      [&](double a0) {
        const double b = inner(a0);
        return obj({a0, b, 1.0 - a0 - b});
      },
      floor, 1.0 - 2.0 * floor);
  const double b = inner(a);
  return {a, b, 1.0 - a - b};
}

// Coupled operator for a quadratic-saddle predictor on scalar blocks,
// evaluated from the block formulas. v = (x, y, w, omega).
struct CoupledInstance {
  Saddle h;
  double ax = 0.0, ay = 0.0, aw = 0.5, aom = 0.5;  // anchors
  double bx = 0.0, by = 0.0;                       // side strategies
  double eta = 1.0, gamma = 1.0, theta = 1.0, vartheta = 1.0;
  long T = 8;

  static double logit(double u) { return std::log(u / (1.0 - u)); }

  std::array<double, 4> G(const std::array<double, 4>& v) const {
    const double x = v[0], y = v[1], w = v[2], om = v[3];
    std::array<double, 4> g{};
    g[0] = eta * om * h.gx(x, y) + eta * (1.0 - om) * h.gx(x, by) + x - ax;
    g[1] = gamma * w * h.gy_neg(x, y) + gamma * (1.0 - w) * h.gy_neg(bx, y) + y - ay;
    g[2] = theta * om * (h.value(x, y) - h.value(bx, y)) + theta * (1.0 - om) * (h.value(x, by) - h.value(bx, by)) +
           logit(w) - logit(aw);
    g[3] = vartheta * w * (h.value(x, by) - h.value(x, y)) + vartheta * (1.0 - w) * (h.value(bx, by) - h.value(bx, y)) +
           logit(om) - logit(aom);
    return g;
  }

  std::array<double, 4> lower() const {
    const double f = 1.0 / static_cast<double>(T);
    return {-1.0, -1.0, f, f};
  }
  std::array<double, 4> upper() const {
    const double f = 1.0 / static_cast<double>(T);
    return {1.0, 1.0, 1.0 - f, 1.0 - f};
  }

  double natural_residual(const std::array<double, 4>& v) const {
    const auto g = G(v);
    const auto lo = lower(), hi = upper();
    double s = 0.0;
    for (int i = 0; i < 4; ++i) {
      const double p = std::clamp(v[i] - g[i], lo[i], hi[i]);
      s += (v[i] - p) * (v[i] - p);
    }
    return std::sqrt(s);
  }
};

// Minimizes the natural residual by successive local grids. Each pass lays
// n points per axis over the current window. When the best point sits on an
// inner edge of the window the window moves there unchanged; otherwise it
// shrinks to four grid steps around the best point. Stops after `passes`
// shrinks.
inline std::array<double, 4> grid_refinement(const CoupledInstance& inst, std::size_t n, int passes) {
  const auto lo = inst.lower(), hi = inst.upper();
  std::array<double, 4> c{}, r{};
  for (int i = 0; i < 4; ++i) {
    c[i] = 0.5 * (lo[i] + hi[i]);
    r[i] = 0.5 * (hi[i] - lo[i]);
  }
  int shrinks = 0;
  for (int iter = 0; shrinks < passes && iter < 50 * passes; ++iter) {
    std::array<double, 4> a{}, b{}, step{};
    for (int i = 0; i < 4; ++i) {
      a[i] = std::max(lo[i], c[i] - r[i]);
      b[i] = std::min(hi[i], c[i] + r[i]);
      step[i] = (b[i] - a[i]) / static_cast<double>(n - 1);
    }
    double best = std::numeric_limits<double>::infinity();
    std::array<double, 4> arg = c;
    std::array<std::size_t, 4> idx{}, best_idx{};
    std::array<double, 4> v{};
    for (idx[0] = 0; idx[0] < n; ++idx[0]) {
      v[0] = a[0] + step[0] * static_cast<double>(idx[0]);
      for (idx[1] = 0; idx[1] < n; ++idx[1]) {
        v[1] = a[1] + step[1] * static_cast<double>(idx[1]);
        for (idx[2] = 0; idx[2] < n; ++idx[2]) {
          v[2] = a[2] + step[2] * static_cast<double>(idx[2]);
          for (idx[3] = 0; idx[3] < n; ++idx[3]) {
            v[3] = a[3] + step[3] * static_cast<double>(idx[3]);
            const double res = inst.natural_residual(v);
            if (res < best) {
              best = res;
              arg = v;
              best_idx = idx;
            }
          }
        }
      }
    }
    bool on_edge = false;
    for (int i = 0; i < 4; ++i) {
      on_edge = on_edge || (best_idx[i] == 0 && a[i] > lo[i]) || (best_idx[i] == n - 1 && b[i] < hi[i]);
    }
    c = arg;
    if (!on_edge) {
      for (int i = 0; i < 4; ++i) r[i] = std::max(4.0 * step[i], 1e-300);
      ++shrinks;
    }
  }
  return c;
}

inline double joint_distance(const std::array<double, 4>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (int i = 0; i < 4; ++i) s += (a[i] - b[static_cast<std::size_t>(i)]) * (a[i] - b[static_cast<std::size_t>(i)]);
  return std::sqrt(s);
}

}  // namespace oracle
