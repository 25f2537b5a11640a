// Copyright 2026 The OCCO Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string_view>

#include "occo/geometry.hpp"
#include "occo/payoff.hpp"

namespace occo {

/// Variational inequality over a box K: find v* in K with
/// <G(v*), z - v*> >= 0 for all z in K.
class VariationalProblem {
 public:
  virtual ~VariationalProblem() = default;
  virtual const BoxDomain& feasible_set() const = 0;
  virtual void apply(std::span<const double> v, std::span<double> out) const = 0;
  std::size_t dimension() const { return feasible_set().dim(); }
};

/// A VI whose coordinates split into blocks, each with a solvable
/// best-response subproblem (the VI restricted to that block).
class BlockVariationalProblem : public VariationalProblem {
 public:
  virtual std::size_t block_count() const = 0;
  /// Overwrite block `block` of v with the solution of its subproblem,
  /// holding the other blocks fixed.
  virtual void best_response(std::size_t block, std::span<double> v) const = 0;
  /// Starting point for iterative solvers.
  virtual Vec initial_point() const { return feasible_set().center(); }
};

/// Joint decision (x, y, w, omega) of the coupled expert/meta system.
struct JointVector {
  Vec x;
  Vec y;
  double w = 0.5;
  double omega = 0.5;

  /// Flattened [x..., y..., w, omega].
  Vec flatten() const;
  static JointVector unflatten(std::span<const double> v, std::size_t dim_x, std::size_t dim_y);
  /// sqrt(|x|^2 + |y|^2 + w^2 + omega^2)
  double norm() const;
};

/// Everything the coupled operator reads at one round. Regularizers on X and Y
/// are Euclidean (half squared norm), so their dual anchors equal the primal
/// anchors.
struct OperatorContext {
  PayoffPtr predictor;  // h_t
  BoxDomain X;
  BoxDomain Y;
  Vec anchor_x;          // x~_t
  Vec anchor_y;          // y~_t
  double anchor_w = 0.5;      // head of w~_t
  double anchor_omega = 0.5;  // head of omega~_t
  Vec side_x;            // x-bar_t from the adaptive module
  Vec side_y;            // y-bar_t
  double eta = 1.0;
  double gamma = 1.0;
  double theta = 1.0;
  double vartheta = 1.0;
  long horizon = 2;

  void validate() const;
};

/// The coupled operator G over K = X x Y x [1/T, 1-1/T]^2. Blocks are the
/// gradients of the four players' proximal objectives:
///   x: eta (omega grad_x h(x,y) + (1-omega) grad_x h(x,y-bar)) + x - x~
///   y: gamma (w grad_y(-h)(x,y) + (1-w) grad_y(-h)(x-bar,y)) + y - y~
///   w: theta (omega (h(x,y) - h(x-bar,y)) + (1-omega)(h(x,y-bar) - h(x-bar,y-bar)))
///        + logit(w) - logit(w~)
///   omega: vartheta (w (h(x,y-bar) - h(x,y)) + (1-w)(h(x-bar,y-bar) - h(x-bar,y)))
///        + logit(omega) - logit(omega~)
///
/// With frozen weights the w and omega blocks are dropped and both weights are
/// held at 1, which leaves the two-block saddle problem of the optimistic
/// proximal point baseline.
class CoupledOperator final : public BlockVariationalProblem {
 public:
  explicit CoupledOperator(OperatorContext ctx, bool freeze_weights = false);

  const OperatorContext& context() const { return ctx_; }
  bool frozen_weights() const { return frozen_; }
  const BoxDomain& feasible_set() const override { return K_; }
  void apply(std::span<const double> v, std::span<double> out) const override;
  std::size_t block_count() const override { return frozen_ ? 2 : 4; }
  void best_response(std::size_t block, std::span<double> v) const override;
  /// Anchors (x~, y~, w~, omega~): the exact solution when h == 0.
  Vec initial_point() const override;

  JointVector unpack(std::span<const double> v) const;
  Vec pack(const JointVector& j) const;

 private:
  void best_response_primal(bool x_side, std::span<double> v) const;

  OperatorContext ctx_;
  bool frozen_;
  BoxDomain K_;
  std::size_t dx_;
  std::size_t dy_;
  std::optional<QuadraticForm> quad_;
  double curvature_x_;  // upper bound on the x-subproblem curvature
  double curvature_y_;
};

/// Constants entering the Lipschitz bound of G.
struct LipschitzConstants {
  double G_X = 0.0;
  double G_Y = 0.0;
  double D_X = 0.0;
  double D_Y = 0.0;
  double L_xx = 0.0;
  double L_xy = 0.0;
  double L_yx = 0.0;
  double L_yy = 0.0;
  double L_phi = 1.0;
  double L_psi = 1.0;
};

/// Constants read off the context: predictor bounds and smoothness, box diameters.
LipschitzConstants lipschitz_constants(const OperatorContext& ctx);

/// L = sqrt(max{C_x, C_y, C_w, C_omega}) with
///   C_x = 4((eta L_xx + L_phi)^2 + gamma^2 L_yx^2 + (theta^2 + 4 vartheta^2) G_X^2)
///   C_y = 4((gamma L_yy + L_psi)^2 + theta^2 L_xy^2 + (vartheta^2 + 4 theta^2) G_Y^2)
///   C   = min{D_X^2 (L_xx D_X + L_xy D_Y)^2, D_Y^2 (L_yx D_X + L_yy D_Y)^2} + T^2
///   C_w = 2 gamma^2 L_yx^2 D_X^2 + 4 vartheta^2 C
///   C_omega = 2 eta^2 L_xy^2 D_Y^2 + 4 theta^2 C
double lipschitz_bound(double eta, double gamma, double theta, double vartheta, long horizon,
                       const LipschitzConstants& k);
double lipschitz_bound(const OperatorContext& ctx);

/// A bound that also covers the rate-free logit terms of the w and omega
/// blocks (slope up to T^2/(T-1) on [1/T, 1-1/T]) and the eta L_xy coupling of
/// the x block to y. Always >= lipschitz_bound(); this is what the solvers use.
double safe_lipschitz_bound(const OperatorContext& ctx, bool freeze_weights = false);

enum class SolverFlag {
  kCertified,    // stopping rule met
  kUncertified,  // iteration cap hit; best iterate returned
  kFallback,     // fixed-point path failed, certified path used
};

std::string_view to_string(SolverFlag flag);

struct SolveResult {
  Vec solution;
  long iterations = 0;
  /// Dual extrapolation: |G(y0)| (L/(L+1))^(k/2). Fixed point: last update norm.
  double certificate = 0.0;
  /// |v - Proj_K(v - G(v))| at the returned point.
  double natural_residual = 0.0;
  SolverFlag flag = SolverFlag::kCertified;
  /// Set when a cross-check against the certified solver disagreed.
  bool disagreement = false;
};

struct DualExtrapolationOptions {
  double tol = 1e-9;
  long max_iter = 2'000'000;
  /// Called after every iteration with k and the current weighted average.
  std::function<void(long, std::span<const double>)> observer;
};

/// Nesterov's dual extrapolation for a 1-strongly monotone, L-Lipschitz G:
///   x_k     = Proj_K((sum l_i y_i - sum l_i G(y_i)) / sum l_i)
///   y_{k+1} = Proj_K(x_k - G(x_k) / L)
///   l_{k+1} = (sum_{i<=k} l_i) / L
/// starting from y_0 = center of K, l_0 = 1. The x_k update is the closed form
/// of argmin_x sum l_i (<G(y_i), x> + |y_i - x|^2 / 2) over a box. Stops once
/// |G(y_0)| (L/(L+1))^(k/2) <= tol and returns the l-weighted average of y_i.
SolveResult dual_extrapolation_solve(const VariationalProblem& problem, double lipschitz,
                                     const DualExtrapolationOptions& opts = {});

struct FixedPointOptions {
  double tol = 1e-13;
  /// Damping factor in (0, 1]: v <- v + beta (BR(v) - v). Halved (down to
  /// min_damping) whenever the update norm grows.
  double damping = 0.5;
  double min_damping = 1.0 / 64.0;
  long max_sweeps = 20'000;
  /// Lipschitz constant for the dual extrapolation fallback; <= 0 disables it.
  double fallback_lipschitz = 0.0;
  double fallback_tol = 1e-9;
  /// Run the certified solver as well and prefer it on disagreement > 1e-5.
  bool cross_check = false;
};

/// Damped Gauss-Seidel best-response iteration: sweep the blocks in order,
/// each solved exactly against the latest values of the others, then move a
/// fraction beta towards the sweep result. Stops when the sweep moves the
/// point by at most tol. Falls back to dual_extrapolation_solve on
/// non-convergence.
SolveResult fixed_point_solve(const BlockVariationalProblem& problem, const FixedPointOptions& opts = {});

/// Gradient oracle of a smooth strongly convex objective on a box.
using BoxGradient = std::function<void(std::span<const double>, std::span<double>)>;

/// Minimize a 1-strongly convex function over a box by projected gradient with
/// Barzilai-Borwein steps clipped to [1/(1 + curvature), 1]. `curvature` bounds
/// the Hessian beyond the unit strong convexity term; <= 0 means unknown.
/// Returns the minimizer; `iterations` (optional) receives the step count.
Vec projected_gradient_minimize(const BoxGradient& grad, const BoxDomain& dom, Vec start, double curvature,
                                double tol = 1e-15, long max_iter = 20'000, long* iterations = nullptr);

/// |v - Proj_K(v - G(v))|; zero exactly at the VI solution.
double natural_residual(const VariationalProblem& problem, std::span<const double> v);

/// max over z in K of <G(v), v - z>, computed exactly for the box K.
double vi_gap(const VariationalProblem& problem, std::span<const double> v);

}  // namespace occo
