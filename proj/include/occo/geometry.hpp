// Copyright 2026 The OCCO Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace occo {

using Vec = std::vector<double>;

/// Axis-aligned box [lower, upper] in R^n.
class BoxDomain {
 public:
  BoxDomain() = default;
  BoxDomain(Vec lower, Vec upper);

  /// The cube [lo, hi]^dim.
  static BoxDomain cube(std::size_t dim, double lo, double hi);

  std::size_t dim() const { return lower_.size(); }
  const Vec& lower() const { return lower_; }
  const Vec& upper() const { return upper_; }

  /// Euclidean norm of (upper - lower).
  double diameter() const;
  Vec center() const;
  bool contains(std::span<const double> p, double slack = 0.0) const;

 private:
  Vec lower_;
  Vec upper_;
};

enum class Regularizer { kEuclidean, kNegativeEntropy };

/// A primal point together with the regularizer that defines its dual anchor.
/// Under the Euclidean regularizer the dual anchor equals the primal point, so
/// only the primal is stored. Under negative entropy the primal is a strictly
/// positive distribution and the anchor is its log.
struct MirrorPoint {
  Vec primal;
  Regularizer regularizer = Regularizer::kEuclidean;
};

/// Clipped simplex: {w : sum w = 1, w_i >= alpha/dim}.
class ClippedSimplex {
 public:
  ClippedSimplex(std::size_t dim, double alpha);

  std::size_t dim() const { return dim_; }
  double alpha() const { return alpha_; }
  double floor() const { return alpha_ / static_cast<double>(dim_); }
  bool contains(std::span<const double> w, double tol = 1e-12) const;

 private:
  std::size_t dim_;
  double alpha_;
};

/// Coordinate-wise clamp into the box (the Euclidean projection).
Vec project_box(std::span<const double> p, const BoxDomain& dom);
void project_box_inplace(std::span<double> p, const BoxDomain& dom);

/// Fenchel coupling of p against the anchor. Euclidean: half squared distance.
/// Negative entropy: KL(p, anchor.primal).
double bregman(Regularizer reg, std::span<const double> p, const MirrorPoint& anchor);

/// Sum a_i ln(a_i / b_i), with 0 ln 0 = 0.
double kl_divergence(std::span<const double> a, std::span<const double> b);

/// argmin over the clipped simplex of KL(w, q / |q|_1).
///
/// The minimizer has the form w_i = max(floor, c q_i) for a scalar c. It is
/// found by repeatedly pinning every coordinate whose proportional share falls
/// below the floor and redistributing the remaining mass over the free
/// coordinates in proportion to q. Pinned coordinates never get released
/// because c only decreases, so at most dim passes are needed.
Vec project_clipped_simplex_kl(std::span<const double> q, const ClippedSimplex& cs);

/// Exponentiated-weights step w * exp(-rate * loss) followed by the KL
/// projection onto the clipped simplex. Computed in the log domain after
/// subtracting the minimum loss, so it is invariant under constant shifts.
Vec hedge_step(std::span<const double> w, std::span<const double> loss, double rate,
               const ClippedSimplex& cs);

double norm2(std::span<const double> v);
double dot(std::span<const double> a, std::span<const double> b);

}  // namespace occo
