// Copyright 2026 The OCCO Authors
// SPDX-License-Identifier: Apache-2.0
#include "occo/runtime.hpp"

#include <string>

#include "occo/error.hpp"

namespace occo {

namespace {

Vec grad_x_at(const PayoffFunction& f, std::span<const double> x, std::span<const double> y) {
  Vec g(x.size());
  f.grad_x(x, y, g);
  return g;
}

Vec grad_y_neg_at(const PayoffFunction& f, std::span<const double> x, std::span<const double> y) {
  Vec g(y.size());
  f.grad_y_neg(x, y, g);
  return g;
}

void check_player_config(const PlayerConfig& cfg) {
  OCCO_REQUIRE(cfg.initial_horizon >= 2, ConfigError, "initial horizon must be >= 2");
  OCCO_REQUIRE(cfg.epsilon > 0.0, ConfigError, "epsilon must be positive");
  OCCO_REQUIRE(cfg.gradient_bound_x > 0.0 && cfg.gradient_bound_y > 0.0, ConfigError,
               "gradient bounds must be positive");
}

}  // namespace

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::kModular:
      return "modular";
    case Algorithm::kAderPair:
      return "ader-pair";
    case Algorithm::kOptOppm:
      return "optoppm";
  }
  return "unknown";
}

Algorithm parse_algorithm(std::string_view name) {
  if (name == "modular") return Algorithm::kModular;
  if (name == "ader-pair") return Algorithm::kAderPair;
  if (name == "optoppm") return Algorithm::kOptOppm;
  throw ConfigError("unknown algorithm: " + std::string(name));
}

EpochSchedule::EpochSchedule(long initial_horizon) : horizon_(initial_horizon) {
  OCCO_REQUIRE(initial_horizon >= 1, InputError, "epoch horizon must be >= 1");
}

bool EpochSchedule::advance() {
  if (!started_) {
    started_ = true;
    used_ = 1;
    return true;
  }
  if (used_ < horizon_) {
    ++used_;
    return false;
  }
  ++index_;
  horizon_ *= 2;
  used_ = 1;
  return true;
}

std::unique_ptr<OnlinePlayer> make_player(const PlayerConfig& cfg) {
  switch (cfg.algorithm) {
    case Algorithm::kModular:
      return std::make_unique<ModularAlgorithm>(cfg);
    case Algorithm::kAderPair:
      return std::make_unique<AderPair>(cfg);
    case Algorithm::kOptOppm:
      return std::make_unique<OptOppmPlayer>(cfg);
  }
  throw ConfigError("unknown algorithm");
}

ModularAlgorithm::ModularAlgorithm(PlayerConfig cfg) : cfg_(std::move(cfg)), schedule_(cfg_.initial_horizon) {
  check_player_config(cfg_);
  OCCO_REQUIRE(cfg_.predictors >= 1, ConfigError, "the modular algorithm needs at least one predictor");
  OCCO_REQUIRE(static_cast<std::size_t>(cfg_.initial_horizon) >= cfg_.predictors, ConfigError,
               "initial horizon must be at least the number of predictors");
}

void ModularAlgorithm::reset(long horizon) {
  ader_x_.emplace(cfg_.X, cfg_.gradient_bound_x, horizon);
  ader_y_.emplace(cfg_.Y, cfg_.gradient_bound_y, horizon);
  IntegrationConfig ic;
  ic.horizon = horizon;
  ic.epsilon = cfg_.epsilon;
  ic.solver = cfg_.solver;
  integ_.emplace(cfg_.X, cfg_.Y, ic);
  agg_.emplace(cfg_.predictors, horizon, cfg_.epsilon);
}

Strategy ModularAlgorithm::decide(std::span<const PayoffPtr> bank) {
  OCCO_REQUIRE(!pending_, ProtocolError, "decide() called twice without observe()");
  OCCO_REQUIRE(bank.size() == cfg_.predictors, InputError, "predictor bank size does not match the configuration");
  epoch_started_ = schedule_.advance();
  if (epoch_started_) reset(schedule_.horizon());
  bank_.assign(bank.begin(), bank.end());
  h_ = agg_->aggregate(bank_);
  const Vec x_bar = ader_x_->predict();
  const Vec y_bar = ader_y_->predict();
  decision_ = integ_->decide(h_, x_bar, y_bar);
  pending_ = true;
  return {decision_.x, decision_.y};
}

RoundDiagnostics ModularAlgorithm::observe(const PayoffPtr& f) {
  OCCO_REQUIRE(pending_, ProtocolError, "observe() called before decide()");
  OCCO_REQUIRE(f != nullptr, InputError, "observe() needs a payoff");
  RoundDiagnostics r;
  r.t = ++t_;
  r.epoch = schedule_.index();
  r.epoch_horizon = schedule_.horizon();
  r.epoch_started = epoch_started_;
  r.x = decision_.x;
  r.y = decision_.y;
  r.w = decision_.w;
  r.omega = decision_.omega;
  r.xi = agg_->weights();
  r.eta = integ_->eta();
  r.gamma = integ_->gamma();
  r.theta = integ_->theta();
  r.vartheta = integ_->vartheta();
  r.zeta = agg_->rate();
  r.solver_iterations = decision_.solver_iterations;
  r.solver_flag = decision_.solver_flag;
  r.solver_disagreement = decision_.solver_disagreement;
  r.x_hat = decision_.x_hat;
  r.y_hat = decision_.y_hat;
  r.x_bar = decision_.x_bar;
  r.y_bar = decision_.y_bar;

  const IntegrationStep step = integ_->observe(*f, *h_, decision_);
  r.A = step.matrices.A;
  r.delta_x = step.expert_raw.x;
  r.delta_y = step.expert_raw.y;
  r.Delta_x = step.meta_raw.x;
  r.Delta_y = step.meta_raw.y;

  const std::array<Vec, 3> px = {decision_.x_hat, decision_.x_bar, step.x_next};
  const std::array<Vec, 3> py = {decision_.y_hat, decision_.y_bar, step.y_next};
  const Vec loss = loss_vector(*f, bank_, px, py);
  const AggregatorStep agg_step = agg_->update(loss);
  r.aggregator_residual = agg_step.residual_raw;

  ader_x_->update_with_gradient(grad_x_at(*f, decision_.x_bar, decision_.y));
  ader_y_->update_with_gradient(grad_y_neg_at(*f, decision_.x, decision_.y_bar));
  pending_ = false;
  return r;
}

AderPair::AderPair(PlayerConfig cfg) : cfg_(std::move(cfg)), schedule_(cfg_.initial_horizon) {
  check_player_config(cfg_);
}

Strategy AderPair::decide(std::span<const PayoffPtr>) {
  OCCO_REQUIRE(!pending_, ProtocolError, "decide() called twice without observe()");
  epoch_started_ = schedule_.advance();
  if (epoch_started_) {
    ader_x_.emplace(cfg_.X, cfg_.gradient_bound_x, schedule_.horizon());
    ader_y_.emplace(cfg_.Y, cfg_.gradient_bound_y, schedule_.horizon());
  }
  decision_ = {ader_x_->predict(), ader_y_->predict()};
  pending_ = true;
  return decision_;
}

RoundDiagnostics AderPair::observe(const PayoffPtr& f) {
  OCCO_REQUIRE(pending_, ProtocolError, "observe() called before decide()");
  OCCO_REQUIRE(f != nullptr, InputError, "observe() needs a payoff");
  RoundDiagnostics r;
  r.t = ++t_;
  r.epoch = schedule_.index();
  r.epoch_horizon = schedule_.horizon();
  r.epoch_started = epoch_started_;
  r.x = decision_.x;
  r.y = decision_.y;
  r.x_bar = decision_.x;
  r.y_bar = decision_.y;
  ader_x_->update_with_gradient(grad_x_at(*f, decision_.x, decision_.y));
  ader_y_->update_with_gradient(grad_y_neg_at(*f, decision_.x, decision_.y));
  pending_ = false;
  return r;
}

OptOppmPlayer::OptOppmPlayer(PlayerConfig cfg) : cfg_(std::move(cfg)), schedule_(cfg_.initial_horizon) {
  check_player_config(cfg_);
}

Strategy OptOppmPlayer::decide(std::span<const PayoffPtr> bank) {
  OCCO_REQUIRE(!pending_, ProtocolError, "decide() called twice without observe()");
  OCCO_REQUIRE(!bank.empty() && bank.front() != nullptr, InputError, "the optimistic baseline needs a predictor");
  epoch_started_ = schedule_.advance();
  if (epoch_started_) {
    OptOppmConfig oc;
    oc.horizon = schedule_.horizon();
    oc.epsilon = cfg_.epsilon;
    oc.lambda = cfg_.lambda;
    oc.mu = cfg_.mu;
    oc.solver = cfg_.solver;
    state_.emplace(cfg_.X, cfg_.Y, oc);
  }
  h_ = bank.front();
  decision_ = state_->decide(h_);
  pending_ = true;
  return {decision_.x, decision_.y};
}

RoundDiagnostics OptOppmPlayer::observe(const PayoffPtr& f) {
  OCCO_REQUIRE(pending_, ProtocolError, "observe() called before decide()");
  OCCO_REQUIRE(f != nullptr, InputError, "observe() needs a payoff");
  RoundDiagnostics r;
  r.t = ++t_;
  r.epoch = schedule_.index();
  r.epoch_horizon = schedule_.horizon();
  r.epoch_started = epoch_started_;
  r.x = decision_.x;
  r.y = decision_.y;
  r.eta = state_->eta();
  r.gamma = state_->gamma();
  r.solver_iterations = decision_.solver_iterations;
  r.solver_flag = decision_.solver_flag;
  r.solver_disagreement = decision_.solver_disagreement;
  const OptOppmStep step = state_->update(*f, *h_, decision_);
  r.nu_x = step.raw.x;
  r.nu_y = step.raw.y;
  pending_ = false;
  return r;
}

GapSeries ddgap(std::span<const PayoffPtr> payoffs, std::span<const Vec> xs, std::span<const Vec> ys,
                std::span<const Vec> us, std::span<const Vec> vs, const BoxDomain& X, const BoxDomain& Y) {
  const std::size_t n = payoffs.size();
  OCCO_REQUIRE(xs.size() == n && ys.size() == n && us.size() == n && vs.size() == n, InputError,
               "ddgap: sequences differ in length");
  GapSeries s;
  s.instant.resize(n);
  s.cumulative.resize(n);
  s.average.resize(n);
  double cum = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    OCCO_REQUIRE(X.contains(us[t]) && Y.contains(vs[t]), InputError, "ddgap: comparator outside the domain");
    const double g = payoffs[t]->value(xs[t], vs[t]) - payoffs[t]->value(us[t], ys[t]);
    cum += g;
    s.instant[t] = g;
    s.cumulative[t] = cum;
    s.average[t] = cum / static_cast<double>(t + 1);
  }
  return s;
}

std::array<double, 3> gap_decomposition(const PayoffFunction& f, std::span<const double> x,
                                        std::span<const double> y, std::span<const double> u,
                                        std::span<const double> v, const Matrix2& A, double w, double omega) {
  const double wAe1 = w * A[0][0] + (1.0 - w) * A[1][0];
  const double e1Aom = omega * A[0][0] + (1.0 - omega) * A[0][1];
  return {f.value(x, v) - wAe1, wAe1 - e1Aom, e1Aom - f.value(u, y)};
}

}  // namespace occo
