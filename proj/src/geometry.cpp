// Copyright 2026 The OCCO Authors
// SPDX-License-Identifier: Apache-2.0
#include "occo/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "occo/error.hpp"

namespace occo {

BoxDomain::BoxDomain(Vec lower, Vec upper) : lower_(std::move(lower)), upper_(std::move(upper)) {
  OCCO_REQUIRE(lower_.size() == upper_.size(), InputError, "box bounds differ in dimension");
  for (std::size_t i = 0; i < lower_.size(); ++i) {
    OCCO_REQUIRE(std::isfinite(lower_[i]) && std::isfinite(upper_[i]), InputError,
                 "box bounds must be finite");
    OCCO_REQUIRE(lower_[i] <= upper_[i], InputError, "box lower bound exceeds upper bound");
  }
}

BoxDomain BoxDomain::cube(std::size_t dim, double lo, double hi) {
  return BoxDomain(Vec(dim, lo), Vec(dim, hi));
}

double BoxDomain::diameter() const {
  double s = 0.0;
  for (std::size_t i = 0; i < dim(); ++i) {
    const double d = upper_[i] - lower_[i];
    s += d * d;
  }
  return std::sqrt(s);
}

Vec BoxDomain::center() const {
  Vec c(dim());
  for (std::size_t i = 0; i < dim(); ++i) c[i] = 0.5 * (lower_[i] + upper_[i]);
  return c;
}

bool BoxDomain::contains(std::span<const double> p, double slack) const {
  if (p.size() != dim()) return false;
  for (std::size_t i = 0; i < dim(); ++i) {
    if (p[i] < lower_[i] - slack || p[i] > upper_[i] + slack) return false;
  }
  return true;
}

ClippedSimplex::ClippedSimplex(std::size_t dim, double alpha) : dim_(dim), alpha_(alpha) {
  OCCO_REQUIRE(dim >= 1, InputError, "clipped simplex needs dim >= 1");
  OCCO_REQUIRE(alpha > 0.0 && alpha <= 1.0, InputError, "clipping coefficient must lie in (0, 1]");
}

bool ClippedSimplex::contains(std::span<const double> w, double tol) const {
  if (w.size() != dim_) return false;
  double s = 0.0;
  for (double v : w) {
    if (v < floor() - tol) return false;
    s += v;
  }
  return std::abs(s - 1.0) <= tol;
}

void project_box_inplace(std::span<double> p, const BoxDomain& dom) {
  OCCO_REQUIRE(p.size() == dom.dim(), InputError, "project_box: dimension mismatch");
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::clamp(p[i], dom.lower()[i], dom.upper()[i]);
}

Vec project_box(std::span<const double> p, const BoxDomain& dom) {
  Vec out(p.begin(), p.end());
  project_box_inplace(out, dom);
  return out;
}

double kl_divergence(std::span<const double> a, std::span<const double> b) {
  OCCO_REQUIRE(a.size() == b.size(), InputError, "kl_divergence: dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0.0) continue;
    OCCO_REQUIRE(b[i] > 0.0, DomainError, "kl_divergence: b has a zero where a is positive");
    s += a[i] * std::log(a[i] / b[i]);
  }
  return s;
}

double bregman(Regularizer reg, std::span<const double> p, const MirrorPoint& anchor) {
  OCCO_REQUIRE(p.size() == anchor.primal.size(), InputError, "bregman: dimension mismatch");
  if (reg == Regularizer::kEuclidean) {
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      const double d = p[i] - anchor.primal[i];
      s += d * d;
    }
    return 0.5 * s;
  }
  for (double v : anchor.primal) {
    OCCO_REQUIRE(v > 0.0, DomainError, "bregman: entropic anchor has a zero coordinate");
  }
  return kl_divergence(p, anchor.primal);
}

Vec project_clipped_simplex_kl(std::span<const double> q, const ClippedSimplex& cs) {
  OCCO_REQUIRE(q.size() == cs.dim(), InputError, "clipped projection: dimension mismatch");
  for (double v : q) {
    OCCO_REQUIRE(v > 0.0 && std::isfinite(v), DomainError,
                 "clipped projection: q must be strictly positive and finite");
  }
  const std::size_t d = cs.dim();
  const double floor = cs.floor();
  std::vector<bool> pinned(d, false);
  Vec w(d, floor);
  std::size_t n_pinned = 0;
  for (std::size_t pass = 0; pass <= d; ++pass) {
    double free_q = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      if (!pinned[i]) free_q += q[i];
    }
    const double free_mass = 1.0 - static_cast<double>(n_pinned) * floor;
    bool changed = false;
    for (std::size_t i = 0; i < d; ++i) {
      if (pinned[i]) continue;
      w[i] = free_mass * q[i] / free_q;
      if (w[i] < floor) {
        pinned[i] = true;
        ++n_pinned;
        changed = true;
      }
    }
    if (!changed) break;
    for (std::size_t i = 0; i < d; ++i) {
      if (pinned[i]) w[i] = floor;
    }
    if (n_pinned == d) break;
  }
  return w;
}

Vec hedge_step(std::span<const double> w, std::span<const double> loss, double rate,
               const ClippedSimplex& cs) {
  OCCO_REQUIRE(w.size() == cs.dim() && loss.size() == cs.dim(), InputError,
               "hedge_step: dimension mismatch");
  OCCO_REQUIRE(rate >= 0.0, InputError, "hedge_step: negative rate");
  const double min_loss = *std::min_element(loss.begin(), loss.end());
  Vec logq(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    OCCO_REQUIRE(w[i] > 0.0, DomainError, "hedge_step: weights must be strictly positive");
    logq[i] = std::log(w[i]) - rate * (loss[i] - min_loss);
  }
  const double top = *std::max_element(logq.begin(), logq.end());
  Vec q(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    // Tiny entries would be pinned at the floor anyway; keep q positive.
    q[i] = std::max(std::exp(logq[i] - top), std::numeric_limits<double>::min());
  }
  return project_clipped_simplex_kl(q, cs);
}

double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double dot(std::span<const double> a, std::span<const double> b) {
  OCCO_REQUIRE(a.size() == b.size(), InputError, "dot: dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace occo
