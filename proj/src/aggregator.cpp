// Copyright 2026 The OCCO Authors
// SPDX-License-Identifier: Apache-2.0
#include "occo/aggregator.hpp"

#include <cmath>

#include "occo/error.hpp"
#include "occo/integration.hpp"

namespace occo {

double aggregator_residual(std::span<const double> loss, std::span<const double> xi, std::span<const double> xi_next,
                           double zeta) {
  OCCO_REQUIRE(loss.size() == xi.size() && xi.size() == xi_next.size(), InputError,
               "aggregator_residual: dimension mismatch");
  OCCO_REQUIRE(zeta > 0.0, InputError, "aggregator_residual: rate must be positive");
  double s = 0.0;
  for (std::size_t k = 0; k < loss.size(); ++k) s += loss[k] * (xi[k] - xi_next[k]);
  return s - kl_divergence(xi_next, xi) / zeta;
}

AggregatorState::AggregatorState(std::size_t d, long horizon, double epsilon)
    : horizon_(horizon), epsilon_(epsilon), weights_(d, d > 0 ? 1.0 / static_cast<double>(d) : 0.0) {
  OCCO_REQUIRE(d >= 1, InputError, "aggregator needs at least one predictor");
  OCCO_REQUIRE(horizon >= 2 && static_cast<std::size_t>(horizon) >= d, InputError, "aggregator needs T >= max(d, 2)");
  OCCO_REQUIRE(epsilon > 0.0, InputError, "epsilon must be positive");
}

double AggregatorState::rate() const { return std::log(static_cast<double>(horizon_)) / (epsilon_ + sum_); }

ClippedSimplex AggregatorState::simplex() const {
  return ClippedSimplex(weights_.size(), static_cast<double>(weights_.size()) / static_cast<double>(horizon_));
}

PayoffPtr AggregatorState::aggregate(std::span<const PayoffPtr> bank) const {
  OCCO_REQUIRE(bank.size() == weights_.size(), InputError, "predictor bank size does not match the aggregator");
  for (const auto& p : bank) OCCO_REQUIRE(p != nullptr, InputError, "predictor bank holds a null predictor");
  if (bank.size() == 1) return bank.front();
  return std::make_shared<MixturePayoff>(std::vector<PayoffPtr>(bank.begin(), bank.end()), weights_);
}

AggregatorStep AggregatorState::update(std::span<const double> loss) {
  OCCO_REQUIRE(loss.size() == weights_.size(), InputError, "loss vector size does not match the aggregator");
  for (double l : loss) OCCO_REQUIRE(std::isfinite(l) && l >= 0.0, InputError, "losses must be finite and nonnegative");
  AggregatorStep s;
  s.rate = rate();
  s.weights_next = hedge_step(weights_, loss, s.rate, simplex());
  s.residual_raw = aggregator_residual(loss, weights_, s.weights_next, s.rate);
  const double accepted = accept_residual(s.residual_raw, "aggregator");
  weights_ = s.weights_next;
  sum_ += accepted;
  return s;
}

}  // namespace occo
