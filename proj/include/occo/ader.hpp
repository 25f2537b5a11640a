// Copyright 2026 The OCCO Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <span>
#include <vector>

#include "occo/geometry.hpp"

namespace occo {

/// Gradient oracle of a convex loss on the ADER domain.
using GradientOracle = std::function<Vec(std::span<const double>)>;

/// ADER: projected online gradient descent experts on a geometric grid of step
/// sizes, combined by exponentiated weights on the linearized surrogate loss.
///
/// Grid and meta constants (D = domain diameter, G = gradient bound):
///   N      = ceil(log2(1 + 2T) / 2) + 1 experts
///   step_i = 2^(i-1) * D / (G sqrt(T)),  i = 1..N
///   w_i   ∝ 1 / (i (i + 1))
///   meta   = sqrt(8 / T) / (G D)
/// All experts start at the domain center. Horizon changes are handled by the
/// caller re-creating the state.
class AderState {
 public:
  struct Expert {
    double step_size;
    Vec iterate;
  };

  AderState(BoxDomain domain, double gradient_bound, long horizon);

  /// Build from explicit experts and weights (used to exercise degenerate cases).
  AderState(BoxDomain domain, std::vector<Expert> experts, Vec meta_weights, double meta_rate, long horizon);

  const BoxDomain& domain() const { return domain_; }
  long horizon() const { return horizon_; }
  const std::vector<Expert>& experts() const { return experts_; }
  const Vec& meta_weights() const { return meta_weights_; }
  double meta_rate() const { return meta_rate_; }

  /// Meta-weighted average of the expert iterates; lies in the domain.
  Vec predict() const;

  /// One round: g = grad(predict()); every expert takes a projected gradient
  /// step along g from its own iterate; the meta weights are multiplied by
  /// exp(-meta_rate * <g, iterate_i>) using the pre-update iterates.
  void update(const GradientOracle& grad);

  /// Same as update() when the gradient at predict() is already known.
  void update_with_gradient(std::span<const double> g);

 private:
  BoxDomain domain_;
  long horizon_;
  std::vector<Expert> experts_;
  Vec meta_weights_;
  double meta_rate_;
};

/// Number of grid experts for horizon T.
std::size_t ader_expert_count(long horizon);

}  // namespace occo
