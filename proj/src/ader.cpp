// Copyright 2026 The OCCO Authors
// SPDX-License-Identifier: Apache-2.0
#include "occo/ader.hpp"

#include <algorithm>
#include <cmath>

#include "occo/error.hpp"

namespace occo {

std::size_t ader_expert_count(long horizon) {
  OCCO_REQUIRE(horizon >= 1, InputError, "ADER horizon must be >= 1");
  const double t = static_cast<double>(horizon);
  return static_cast<std::size_t>(std::ceil(0.5 * std::log2(1.0 + 2.0 * t))) + 1;
}

AderState::AderState(BoxDomain domain, double gradient_bound, long horizon)
    : domain_(std::move(domain)), horizon_(horizon) {
  OCCO_REQUIRE(horizon >= 1, InputError, "ADER horizon must be >= 1");
  OCCO_REQUIRE(gradient_bound > 0.0, InputError, "ADER gradient bound must be positive");
  OCCO_REQUIRE(domain_.dim() >= 1, InputError, "ADER domain must be nonempty");
  const double T = static_cast<double>(horizon);
  double D = domain_.diameter();
  if (D <= 0.0) D = 1.0;  // singleton domain: every step is a no-op anyway
  const std::size_t n = ader_expert_count(horizon);
  const double base = D / (gradient_bound * std::sqrt(T));
  const Vec center = domain_.center();
  experts_.reserve(n);
  meta_weights_.resize(n);
  double total = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    experts_.push_back({std::ldexp(base, static_cast<int>(i) - 1), center});
    const double di = static_cast<double>(i);
    meta_weights_[i - 1] = 1.0 / (di * (di + 1.0));
    total += meta_weights_[i - 1];
  }
  for (double& w : meta_weights_) w /= total;
  meta_rate_ = std::sqrt(8.0 / T) / (gradient_bound * D);
}

AderState::AderState(BoxDomain domain, std::vector<Expert> experts, Vec meta_weights, double meta_rate,
                     long horizon)
    : domain_(std::move(domain)),
      horizon_(horizon),
      experts_(std::move(experts)),
      meta_weights_(std::move(meta_weights)),
      meta_rate_(meta_rate) {
  OCCO_REQUIRE(!experts_.empty() && experts_.size() == meta_weights_.size(), InputError,
               "ADER experts and weights must be nonempty and of equal size");
  for (const auto& e : experts_) {
    OCCO_REQUIRE(e.step_size > 0.0, InputError, "ADER step sizes must be positive");
    OCCO_REQUIRE(domain_.contains(e.iterate), DomainError, "ADER iterate outside the domain");
  }
  double total = 0.0;
  for (double w : meta_weights_) {
    OCCO_REQUIRE(w >= 0.0, InputError, "ADER meta weights must be nonnegative");
    total += w;
  }
  OCCO_REQUIRE(std::abs(total - 1.0) < 1e-12, InputError, "ADER meta weights must sum to one");
}

Vec AderState::predict() const {
  Vec out(domain_.dim(), 0.0);
  for (std::size_t i = 0; i < experts_.size(); ++i) {
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += meta_weights_[i] * experts_[i].iterate[j];
  }
  // Rounding can push a convex combination a hair outside the box.
  project_box_inplace(out, domain_);
  return out;
}

void AderState::update(const GradientOracle& grad) {
  const Vec g = grad(predict());
  update_with_gradient(g);
}

void AderState::update_with_gradient(std::span<const double> g) {
  OCCO_REQUIRE(g.size() == domain_.dim(), InputError, "ADER gradient dimension mismatch");
  const std::size_t n = experts_.size();
  Vec surrogate(n);
  for (std::size_t i = 0; i < n; ++i) surrogate[i] = dot(g, experts_[i].iterate);
  const double lo = *std::min_element(surrogate.begin(), surrogate.end());
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    meta_weights_[i] *= std::exp(-meta_rate_ * (surrogate[i] - lo));
    total += meta_weights_[i];
  }
  for (double& w : meta_weights_) w /= total;
  for (auto& e : experts_) {
    for (std::size_t j = 0; j < g.size(); ++j) e.iterate[j] -= e.step_size * g[j];
    project_box_inplace(e.iterate, domain_);
  }
}

}  // namespace occo
