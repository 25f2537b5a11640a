// Copyright 2026 The OCCO Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "occo/ader.hpp"
#include "occo/aggregator.hpp"
#include "occo/integration.hpp"
#include "occo/optoppm.hpp"
#include "occo/payoff.hpp"

namespace occo {

enum class Algorithm { kModular, kAderPair, kOptOppm };

std::string_view to_string(Algorithm a);
/// Parses "modular", "ader-pair" or "optoppm"; throws ConfigError otherwise.
Algorithm parse_algorithm(std::string_view name);

/// Doubling schedule: epoch m lasts T0 * 2^m rounds.
class EpochSchedule {
 public:
  explicit EpochSchedule(long initial_horizon);

  int index() const { return index_; }
  long horizon() const { return horizon_; }
  long used() const { return used_; }
  /// Consume one round; returns true when it opens a new epoch (including the first).
  bool advance();

 private:
  int index_ = 0;
  long horizon_;
  long used_ = 0;
  bool started_ = false;
};

struct PlayerConfig {
  Algorithm algorithm = Algorithm::kModular;
  BoxDomain X = BoxDomain::cube(1, -1.0, 1.0);
  BoxDomain Y = BoxDomain::cube(1, -1.0, 1.0);
  /// Number of predictors the modular player aggregates.
  std::size_t predictors = 4;
  long initial_horizon = 64;
  double epsilon = 1.0;
  /// Gradient bounds handed to the ADER pair.
  double gradient_bound_x = 4.0;
  double gradient_bound_y = 4.0;
  /// Optimistic baseline path-length budgets per epoch; < 0 selects D T.
  double lambda = -1.0;
  double mu = -1.0;
  SolverSettings solver;
};

/// Per-round diagnostics. Fields an algorithm does not have stay empty.
struct RoundDiagnostics {
  long t = 0;
  int epoch = 0;
  long epoch_horizon = 0;
  bool epoch_started = false;
  Vec x;
  Vec y;
  std::optional<double> w;
  std::optional<double> omega;
  Vec xi;
  std::optional<double> eta;
  std::optional<double> gamma;
  std::optional<double> theta;
  std::optional<double> vartheta;
  std::optional<double> zeta;
  std::optional<long> solver_iterations;
  std::optional<SolverFlag> solver_flag;
  bool solver_disagreement = false;
  // Raw residuals before clamping.
  std::optional<double> delta_x;
  std::optional<double> delta_y;
  std::optional<double> Delta_x;
  std::optional<double> Delta_y;
  std::optional<double> aggregator_residual;
  std::optional<double> nu_x;
  std::optional<double> nu_y;
  // Modular internals used by the gap decomposition.
  Vec x_hat;
  Vec y_hat;
  Vec x_bar;
  Vec y_bar;
  std::optional<Matrix2> A;
};

/// Strategies committed for one round.
struct Strategy {
  Vec x;
  Vec y;
};

/// Two-phase online player: decide() commits (x_t, y_t) from the predictor
/// bank before the payoff exists; observe(f_t) then learns from it.
class OnlinePlayer {
 public:
  virtual ~OnlinePlayer() = default;
  virtual Algorithm algorithm() const = 0;
  /// Throws ProtocolError when called twice without observe().
  virtual Strategy decide(std::span<const PayoffPtr> bank) = 0;
  /// Throws ProtocolError when no decision is pending.
  virtual RoundDiagnostics observe(const PayoffPtr& f) = 0;
  /// Global round counter (rounds observed so far).
  virtual long rounds() const = 0;
};

std::unique_ptr<OnlinePlayer> make_player(const PlayerConfig& cfg);

/// The modular algorithm: adaptive ADER pair, integration module and predictor
/// aggregator, restarted by the doubling schedule. Every sub-state (including
/// the aggregator weights) is re-created at each epoch boundary.
class ModularAlgorithm final : public OnlinePlayer {
 public:
  explicit ModularAlgorithm(PlayerConfig cfg);

  Algorithm algorithm() const override { return Algorithm::kModular; }
  Strategy decide(std::span<const PayoffPtr> bank) override;
  RoundDiagnostics observe(const PayoffPtr& f) override;
  long rounds() const override { return t_; }

  const EpochSchedule& schedule() const { return schedule_; }
  const IntegrationState& integration() const { return *integ_; }
  const AggregatorState& aggregator() const { return *agg_; }
  const AderState& ader_x() const { return *ader_x_; }
  const AderState& ader_y() const { return *ader_y_; }

 private:
  void reset(long horizon);

  PlayerConfig cfg_;
  EpochSchedule schedule_;
  long t_ = 0;
  std::optional<AderState> ader_x_;
  std::optional<AderState> ader_y_;
  std::optional<IntegrationState> integ_;
  std::optional<AggregatorState> agg_;
  bool pending_ = false;
  bool epoch_started_ = false;
  std::vector<PayoffPtr> bank_;
  PayoffPtr h_;
  JointDecision decision_;
};

/// The adaptive module alone: x_t = x-bar_t, y_t = y-bar_t.
class AderPair final : public OnlinePlayer {
 public:
  explicit AderPair(PlayerConfig cfg);

  Algorithm algorithm() const override { return Algorithm::kAderPair; }
  Strategy decide(std::span<const PayoffPtr> bank) override;
  RoundDiagnostics observe(const PayoffPtr& f) override;
  long rounds() const override { return t_; }

 private:
  PlayerConfig cfg_;
  EpochSchedule schedule_;
  long t_ = 0;
  std::optional<AderState> ader_x_;
  std::optional<AderState> ader_y_;
  bool pending_ = false;
  bool epoch_started_ = false;
  Strategy decision_;
};

/// The optimistic proximal point baseline on the first predictor of the bank.
class OptOppmPlayer final : public OnlinePlayer {
 public:
  explicit OptOppmPlayer(PlayerConfig cfg);

  Algorithm algorithm() const override { return Algorithm::kOptOppm; }
  Strategy decide(std::span<const PayoffPtr> bank) override;
  RoundDiagnostics observe(const PayoffPtr& f) override;
  long rounds() const override { return t_; }

 private:
  PlayerConfig cfg_;
  EpochSchedule schedule_;
  long t_ = 0;
  std::optional<OptOppmState> state_;
  bool pending_ = false;
  bool epoch_started_ = false;
  PayoffPtr h_;
  OptOppmDecision decision_;
};

/// Instantaneous, cumulative and time-averaged D-DGap series.
struct GapSeries {
  Vec instant;
  Vec cumulative;
  Vec average;
};

/// gap_t = f_t(x_t, v_t) - f_t(u_t, y_t), with plain prefix sums and
/// averages cum_t / t. Throws InputError on infeasible comparators.
GapSeries ddgap(std::span<const PayoffPtr> payoffs, std::span<const Vec> xs, std::span<const Vec> ys,
                std::span<const Vec> us, std::span<const Vec> vs, const BoxDomain& X, const BoxDomain& Y);

/// The three terms of
///   f(x,v) - f(u,y) = (f(x,v) - w^T A e1) + (w^T A e1 - e1^T A om) + (e1^T A om - f(u,y))
/// with w = (w, 1-w), om = (omega, 1-omega).
std::array<double, 3> gap_decomposition(const PayoffFunction& f, std::span<const double> x,
                                        std::span<const double> y, std::span<const double> u,
                                        std::span<const double> v, const Matrix2& A, double w, double omega);

}  // namespace occo
