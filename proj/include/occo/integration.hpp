// Copyright 2026 The OCCO Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <span>

#include "occo/geometry.hpp"
#include "occo/payoff.hpp"
#include "occo/vi_solver.hpp"

namespace occo {

using Matrix2 = std::array<std::array<double, 2>, 2>;

/// [[g(x^, y^), g(x^, y-bar)], [g(x-bar, y^), g(x-bar, y-bar)]], row-major evaluation.
Matrix2 build_matrix(const PayoffFunction& g, std::span<const double> x_hat, std::span<const double> y_hat,
                     std::span<const double> x_bar, std::span<const double> y_bar);

/// A from the revealed payoff, Lam from the predictor, both at (x^, y^).
struct GameMatrices {
  Matrix2 A{};
  Matrix2 Lam{};
};

/// How the coupled system is solved each round.
struct SolverSettings {
  /// Stop rule of the fixed-point path (update norm).
  double tol = 1e-13;
  double damping = 0.5;
  long max_sweeps = 20'000;
  /// Also run dual extrapolation and keep its answer on disagreement.
  bool cross_check = false;
  /// Skip the fixed-point path and solve with dual extrapolation only.
  bool certified_only = false;
  double certified_tol = 1e-9;
  long certified_max_iter = 2'000'000;
};

/// Runs the configured solver on a block VI and returns its result.
SolveResult solve_coupled(const CoupledOperator& op, const SolverSettings& settings);

/// Outcome of the joint expert/meta decision in one round.
struct JointDecision {
  Vec x_hat;
  Vec y_hat;
  double w = 0.5;      // weight on x^ in x_t
  double omega = 0.5;  // weight on y^ in y_t
  Vec x_bar;
  Vec y_bar;
  Vec x;  // w x^ + (1 - w) x-bar
  Vec y;  // omega y^ + (1 - omega) y-bar
  long solver_iterations = 0;
  SolverFlag solver_flag = SolverFlag::kCertified;
  double natural_residual = 0.0;
  bool solver_disagreement = false;
};

/// argmin over X of eta (omega f(x, y^) + (1 - omega) f(x, y-bar)) + |x - x~|^2 / 2.
/// Exact for the scalar quadratic family, projected gradient otherwise.
Vec expert_step_x(const PayoffFunction& f, const BoxDomain& X, std::span<const double> anchor_x,
                  std::span<const double> y_hat, std::span<const double> y_bar, double omega, double eta);

/// argmin over Y of -gamma (w f(x^, y) + (1 - w) f(x-bar, y)) + |y - y~|^2 / 2.
Vec expert_step_y(const PayoffFunction& f, const BoxDomain& Y, std::span<const double> anchor_y,
                  std::span<const double> x_hat, std::span<const double> x_bar, double w, double gamma);

/// w~' = hedge on loss A omega at rate theta, into the clipped simplex with floor 1/T.
Vec meta_step_w(const Matrix2& A, std::span<const double> anchor_w, std::span<const double> omega, double theta,
                long horizon);

/// omega~' = hedge on loss -A^T w at rate vartheta.
Vec meta_step_omega(const Matrix2& A, std::span<const double> anchor_omega, std::span<const double> w,
                    double vartheta, long horizon);

struct ExpertResiduals {
  double x = 0.0;
  double y = 0.0;
};

/// delta^x = [f(x^,y^), f(x^,y-bar)] om - [h(x^,y^), h(x^,y-bar)] om
///         + [h(x~',y^), h(x~',y-bar)] om - [f(x~',y^), f(x~',y-bar)] om
/// delta^y = [h(x^,y^), h(x-bar,y^)] w - [f(x^,y^), f(x-bar,y^)] w
///         + [f(x^,y~'), f(x-bar,y~')] w - [h(x^,y~'), h(x-bar,y~')] w
/// with om = (omega, 1 - omega) and w = (w, 1 - w).
ExpertResiduals expert_residuals(const PayoffFunction& f, const PayoffFunction& h, std::span<const double> x_hat,
                                 std::span<const double> y_hat, std::span<const double> x_bar,
                                 std::span<const double> y_bar, std::span<const double> x_next,
                                 std::span<const double> y_next, double w, double omega);

struct MetaResiduals {
  double x = 0.0;
  double y = 0.0;
};

/// Delta^x = (w - w~')^T (A - Lam) om - KL(w~', w) / theta
/// Delta^y = -w^T (A - Lam) (om - om~') - KL(om~', om) / vartheta
/// All weight arguments are 2-vectors.
MetaResiduals meta_residuals(const Matrix2& A, const Matrix2& Lam, std::span<const double> w,
                             std::span<const double> omega, std::span<const double> w_next,
                             std::span<const double> omega_next, double theta, double vartheta);

/// Residuals below zero by at most this much are treated as solver noise and
/// clamped to zero before they enter a rate denominator.
inline constexpr double kResidualClampTol = 1e-9;
/// Residuals below -kResidualFailTol raise InvariantViolation.
inline constexpr double kResidualFailTol = 1e-6;

/// max(raw, 0), throwing InvariantViolation when raw < -kResidualFailTol.
double accept_residual(double raw, const char* name);

struct IntegrationConfig {
  long horizon = 64;
  double epsilon = 1.0;
  /// Lipschitz constants of the couplings; <= 0 selects the domain diameter.
  double L_Bphi = 0.0;
  double L_Bpsi = 0.0;
  SolverSettings solver;
};

/// Everything observe() computed in one round.
struct IntegrationStep {
  GameMatrices matrices;
  Vec x_next;  // x~_{t+1}
  Vec y_next;  // y~_{t+1}
  Vec w_next;  // w~_{t+1}
  Vec omega_next;
  ExpertResiduals expert_raw;
  MetaResiduals meta_raw;
};

/// Expert and meta layers of the Integration Module with self-tuning rates:
///   eta_t   = L_Bphi D_X (T + 1) / (eps + sum delta^x)
///   gamma_t = L_Bpsi D_Y (T + 1) / (eps + sum delta^y)
///   theta_t = ln T / (eps + sum Delta^x)
///   vartheta_t = ln T / (eps + sum Delta^y)
/// Anchors start at the domain centers and at uniform meta weights.
class IntegrationState {
 public:
  IntegrationState(BoxDomain X, BoxDomain Y, IntegrationConfig cfg);

  const BoxDomain& X() const { return X_; }
  const BoxDomain& Y() const { return Y_; }
  const IntegrationConfig& config() const { return cfg_; }
  long horizon() const { return cfg_.horizon; }

  const Vec& anchor_x() const { return anchor_x_; }
  const Vec& anchor_y() const { return anchor_y_; }
  const Vec& anchor_w() const { return anchor_w_; }
  const Vec& anchor_omega() const { return anchor_omega_; }

  double eta() const;
  double gamma() const;
  double theta() const;
  double vartheta() const;
  double sum_delta_x() const { return sum_dx_; }
  double sum_delta_y() const { return sum_dy_; }
  double sum_Delta_x() const { return sum_Dx_; }
  double sum_Delta_y() const { return sum_Dy_; }

  /// The coupled operator for this round.
  OperatorContext operator_context(const PayoffPtr& h, std::span<const double> x_bar,
                                   std::span<const double> y_bar) const;

  /// Solve the coupled system for (x^, y^, w, omega) and form (x_t, y_t).
  JointDecision decide(const PayoffPtr& h, std::span<const double> x_bar, std::span<const double> y_bar) const;

  /// Expert steps, meta steps, residuals and rate updates after f_t is revealed.
  IntegrationStep observe(const PayoffFunction& f, const PayoffFunction& h, const JointDecision& d);

 private:
  BoxDomain X_;
  BoxDomain Y_;
  IntegrationConfig cfg_;
  double L_Bphi_;
  double L_Bpsi_;
  Vec anchor_x_;
  Vec anchor_y_;
  Vec anchor_w_;
  Vec anchor_omega_;
  double sum_dx_ = 0.0;
  double sum_dy_ = 0.0;
  double sum_Dx_ = 0.0;
  double sum_Dy_ = 0.0;
};

}  // namespace occo
