// Copyright 2026 The OCCO Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>

#include "occo/geometry.hpp"
#include "occo/payoff.hpp"

namespace occo {

/// Result of one aggregator round.
struct AggregatorStep {
  Vec weights_next;
  double residual_raw = 0.0;
  double rate = 0.0;  // the rate used for this step
};

/// Delta = <L, xi - xi'> - KL(xi', xi) / zeta.
double aggregator_residual(std::span<const double> loss, std::span<const double> xi, std::span<const double> xi_next,
                           double zeta);

/// Clipped Hedge over d predictors on the simplex with floor 1/T (clipping
/// coefficient d/T), with self-tuning rate zeta_t = ln T / (eps + sum Delta).
/// Weights start uniform.
class AggregatorState {
 public:
  AggregatorState(std::size_t d, long horizon, double epsilon = 1.0);

  std::size_t size() const { return weights_.size(); }
  long horizon() const { return horizon_; }
  const Vec& weights() const { return weights_; }
  double rate() const;
  double residual_sum() const { return sum_; }
  ClippedSimplex simplex() const;

  /// h = sum_k xi_k h^k. A single predictor is returned as is.
  PayoffPtr aggregate(std::span<const PayoffPtr> bank) const;

  /// xi' = hedge(xi, L, zeta), then Delta, then the rate advance.
  AggregatorStep update(std::span<const double> loss);

 private:
  long horizon_;
  double epsilon_;
  Vec weights_;
  double sum_ = 0.0;
};

}  // namespace occo
