// Copyright 2026 The OCCO Authors
// SPDX-License-Identifier: Apache-2.0
#include "occo/integration.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "occo/error.hpp"

namespace occo {

namespace {

std::optional<QuadraticForm> scalar_convex_form(const PayoffFunction& f) {
  if (f.dim_x() != 1 || f.dim_y() != 1) return std::nullopt;
  auto q = f.quadratic_form();
  if (q && q->c < 0.0) return std::nullopt;
  return q;
}

double pair(double a0, double a1, double w0) { return w0 * a0 + (1.0 - w0) * a1; }

Vec mix(std::span<const double> a, std::span<const double> b, double wa, const BoxDomain& dom) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = wa * a[i] + (1.0 - wa) * b[i];
  project_box_inplace(out, dom);
  return out;
}

}  // namespace

Matrix2 build_matrix(const PayoffFunction& g, std::span<const double> x_hat, std::span<const double> y_hat,
                     std::span<const double> x_bar, std::span<const double> y_bar) {
  Matrix2 m{};
  m[0][0] = g.value(x_hat, y_hat);
  m[0][1] = g.value(x_hat, y_bar);
  m[1][0] = g.value(x_bar, y_hat);
  m[1][1] = g.value(x_bar, y_bar);
  return m;
}

SolveResult solve_coupled(const CoupledOperator& op, const SolverSettings& settings) {
  const OperatorContext& ctx = op.context();
  const double L = ctx.predictor->smoothness() ? safe_lipschitz_bound(ctx, op.frozen_weights()) : 0.0;
  if (settings.certified_only) {
    OCCO_REQUIRE(L > 0.0, InputError, "certified solver needs a predictor with declared smoothness");
    DualExtrapolationOptions de;
    de.tol = settings.certified_tol;
    de.max_iter = settings.certified_max_iter;
    return dual_extrapolation_solve(op, L, de);
  }
  FixedPointOptions fp;
  fp.tol = settings.tol;
  fp.damping = settings.damping;
  fp.max_sweeps = settings.max_sweeps;
  fp.fallback_lipschitz = L;
  fp.fallback_tol = settings.certified_tol;
  fp.cross_check = settings.cross_check;
  return fixed_point_solve(op, fp);
}

Vec expert_step_x(const PayoffFunction& f, const BoxDomain& X, std::span<const double> anchor_x,
                  std::span<const double> y_hat, std::span<const double> y_bar, double omega, double eta) {
  OCCO_REQUIRE(anchor_x.size() == X.dim() && f.dim_x() == X.dim(), InputError, "expert_step_x: dimension mismatch");
  if (const auto q = scalar_convex_form(f)) {
    const double y_mix = pair(y_hat[0], y_bar[0], omega);
    const double x = (anchor_x[0] - eta * (q->c * y_mix + q->p)) / (1.0 + eta * q->c);
    return {std::clamp(x, X.lower()[0], X.upper()[0])};
  }
  const auto sm = f.smoothness();
  Vec buf(X.dim());
  auto grad = [&](std::span<const double> x, std::span<double> g) {
    f.grad_x(x, y_hat, g);
    for (double& v : g) v *= eta * omega;
    f.grad_x(x, y_bar, buf);
    for (std::size_t i = 0; i < g.size(); ++i) g[i] += eta * (1.0 - omega) * buf[i] + x[i] - anchor_x[i];
  };
  return projected_gradient_minimize(grad, X, Vec(anchor_x.begin(), anchor_x.end()), sm ? eta * sm->L_xx : 0.0);
}

Vec expert_step_y(const PayoffFunction& f, const BoxDomain& Y, std::span<const double> anchor_y,
                  std::span<const double> x_hat, std::span<const double> x_bar, double w, double gamma) {
  OCCO_REQUIRE(anchor_y.size() == Y.dim() && f.dim_y() == Y.dim(), InputError, "expert_step_y: dimension mismatch");
  if (const auto q = scalar_convex_form(f)) {
    const double x_mix = pair(x_hat[0], x_bar[0], w);
    const double y = (anchor_y[0] + gamma * (q->c * x_mix + q->q)) / (1.0 + gamma * q->c);
    return {std::clamp(y, Y.lower()[0], Y.upper()[0])};
  }
  const auto sm = f.smoothness();
  Vec buf(Y.dim());
  auto grad = [&](std::span<const double> y, std::span<double> g) {
    f.grad_y_neg(x_hat, y, g);
    for (double& v : g) v *= gamma * w;
    f.grad_y_neg(x_bar, y, buf);
    for (std::size_t i = 0; i < g.size(); ++i) g[i] += gamma * (1.0 - w) * buf[i] + y[i] - anchor_y[i];
  };
  return projected_gradient_minimize(grad, Y, Vec(anchor_y.begin(), anchor_y.end()), sm ? gamma * sm->L_yy : 0.0);
}

Vec meta_step_w(const Matrix2& A, std::span<const double> anchor_w, std::span<const double> omega, double theta,
                long horizon) {
  OCCO_REQUIRE(anchor_w.size() == 2 && omega.size() == 2, InputError, "meta_step_w: weights must be 2-vectors");
  OCCO_REQUIRE(horizon >= 2, InputError, "meta layer needs T >= 2");
  const double loss[2] = {A[0][0] * omega[0] + A[0][1] * omega[1], A[1][0] * omega[0] + A[1][1] * omega[1]};
  return hedge_step(anchor_w, loss, theta, ClippedSimplex(2, 2.0 / static_cast<double>(horizon)));
}

Vec meta_step_omega(const Matrix2& A, std::span<const double> anchor_omega, std::span<const double> w,
                    double vartheta, long horizon) {
  OCCO_REQUIRE(anchor_omega.size() == 2 && w.size() == 2, InputError, "meta_step_omega: weights must be 2-vectors");
  OCCO_REQUIRE(horizon >= 2, InputError, "meta layer needs T >= 2");
  const double loss[2] = {-(A[0][0] * w[0] + A[1][0] * w[1]), -(A[0][1] * w[0] + A[1][1] * w[1])};
  return hedge_step(anchor_omega, loss, vartheta, ClippedSimplex(2, 2.0 / static_cast<double>(horizon)));
}

ExpertResiduals expert_residuals(const PayoffFunction& f, const PayoffFunction& h, std::span<const double> x_hat,
                                 std::span<const double> y_hat, std::span<const double> x_bar,
                                 std::span<const double> y_bar, std::span<const double> x_next,
                                 std::span<const double> y_next, double w, double omega) {
  ExpertResiduals r;
  r.x = pair(f.value(x_hat, y_hat), f.value(x_hat, y_bar), omega) -
        pair(h.value(x_hat, y_hat), h.value(x_hat, y_bar), omega) +
        pair(h.value(x_next, y_hat), h.value(x_next, y_bar), omega) -
        pair(f.value(x_next, y_hat), f.value(x_next, y_bar), omega);
  r.y = pair(h.value(x_hat, y_hat), h.value(x_bar, y_hat), w) - pair(f.value(x_hat, y_hat), f.value(x_bar, y_hat), w) +
        pair(f.value(x_hat, y_next), f.value(x_bar, y_next), w) -
        pair(h.value(x_hat, y_next), h.value(x_bar, y_next), w);
  return r;
}

MetaResiduals meta_residuals(const Matrix2& A, const Matrix2& Lam, std::span<const double> w,
                             std::span<const double> omega, std::span<const double> w_next,
                             std::span<const double> omega_next, double theta, double vartheta) {
  OCCO_REQUIRE(w.size() == 2 && omega.size() == 2 && w_next.size() == 2 && omega_next.size() == 2, InputError,
               "meta_residuals: weights must be 2-vectors");
  OCCO_REQUIRE(theta > 0.0 && vartheta > 0.0, InputError, "meta_residuals: rates must be positive");
  Matrix2 D{};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) D[i][j] = A[i][j] - Lam[i][j];
  }
  MetaResiduals r;
  double sx = 0.0, sy = 0.0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      sx += (w[i] - w_next[i]) * D[i][j] * omega[j];
      sy += w[i] * D[i][j] * (omega[j] - omega_next[j]);
    }
  }
  r.x = sx - kl_divergence(w_next, w) / theta;
  r.y = -sy - kl_divergence(omega_next, omega) / vartheta;
  return r;
}

double accept_residual(double raw, const char* name) {
  if (raw < -kResidualFailTol) {
    throw InvariantViolation(std::string(name) + " residual is negative beyond tolerance: " + std::to_string(raw));
  }
  return std::max(raw, 0.0);
}

IntegrationState::IntegrationState(BoxDomain X, BoxDomain Y, IntegrationConfig cfg)
    : X_(std::move(X)), Y_(std::move(Y)), cfg_(cfg) {
  OCCO_REQUIRE(cfg_.horizon >= 2, InputError, "integration module needs T >= 2");
  OCCO_REQUIRE(cfg_.epsilon > 0.0, InputError, "epsilon must be positive");
  OCCO_REQUIRE(X_.dim() >= 1 && Y_.dim() >= 1, InputError, "domains must be nonempty");
  L_Bphi_ = cfg_.L_Bphi > 0.0 ? cfg_.L_Bphi : X_.diameter();
  L_Bpsi_ = cfg_.L_Bpsi > 0.0 ? cfg_.L_Bpsi : Y_.diameter();
  anchor_x_ = X_.center();
  anchor_y_ = Y_.center();
  anchor_w_ = {0.5, 0.5};
  anchor_omega_ = {0.5, 0.5};
}

double IntegrationState::eta() const {
  return L_Bphi_ * X_.diameter() * static_cast<double>(cfg_.horizon + 1) / (cfg_.epsilon + sum_dx_);
}

double IntegrationState::gamma() const {
  return L_Bpsi_ * Y_.diameter() * static_cast<double>(cfg_.horizon + 1) / (cfg_.epsilon + sum_dy_);
}

double IntegrationState::theta() const {
  return std::log(static_cast<double>(cfg_.horizon)) / (cfg_.epsilon + sum_Dx_);
}

double IntegrationState::vartheta() const {
  return std::log(static_cast<double>(cfg_.horizon)) / (cfg_.epsilon + sum_Dy_);
}

OperatorContext IntegrationState::operator_context(const PayoffPtr& h, std::span<const double> x_bar,
                                                   std::span<const double> y_bar) const {
  OperatorContext ctx;
  ctx.predictor = h;
  ctx.X = X_;
  ctx.Y = Y_;
  ctx.anchor_x = anchor_x_;
  ctx.anchor_y = anchor_y_;
  ctx.anchor_w = anchor_w_[0];
  ctx.anchor_omega = anchor_omega_[0];
  ctx.side_x.assign(x_bar.begin(), x_bar.end());
  ctx.side_y.assign(y_bar.begin(), y_bar.end());
  ctx.eta = eta();
  ctx.gamma = gamma();
  ctx.theta = theta();
  ctx.vartheta = vartheta();
  ctx.horizon = cfg_.horizon;
  return ctx;
}

JointDecision IntegrationState::decide(const PayoffPtr& h, std::span<const double> x_bar,
                                       std::span<const double> y_bar) const {
  const CoupledOperator op(operator_context(h, x_bar, y_bar));
  const SolveResult res = solve_coupled(op, cfg_.solver);
  const JointVector j = op.unpack(res.solution);
  JointDecision d;
  d.x_hat = j.x;
  d.y_hat = j.y;
  d.w = j.w;
  d.omega = j.omega;
  d.x_bar.assign(x_bar.begin(), x_bar.end());
  d.y_bar.assign(y_bar.begin(), y_bar.end());
  d.x = mix(d.x_hat, d.x_bar, d.w, X_);
  d.y = mix(d.y_hat, d.y_bar, d.omega, Y_);
  d.solver_iterations = res.iterations;
  d.solver_flag = res.flag;
  d.natural_residual = res.natural_residual;
  d.solver_disagreement = res.disagreement;
  return d;
}

IntegrationStep IntegrationState::observe(const PayoffFunction& f, const PayoffFunction& h, const JointDecision& d) {
  IntegrationStep s;
  s.matrices.A = build_matrix(f, d.x_hat, d.y_hat, d.x_bar, d.y_bar);
  s.matrices.Lam = build_matrix(h, d.x_hat, d.y_hat, d.x_bar, d.y_bar);
  const double eta_t = eta(), gamma_t = gamma(), theta_t = theta(), vartheta_t = vartheta();

  s.x_next = expert_step_x(f, X_, anchor_x_, d.y_hat, d.y_bar, d.omega, eta_t);
  s.y_next = expert_step_y(f, Y_, anchor_y_, d.x_hat, d.x_bar, d.w, gamma_t);
  const Vec wv = {d.w, 1.0 - d.w};
  const Vec ov = {d.omega, 1.0 - d.omega};
  s.w_next = meta_step_w(s.matrices.A, anchor_w_, ov, theta_t, cfg_.horizon);
  s.omega_next = meta_step_omega(s.matrices.A, anchor_omega_, wv, vartheta_t, cfg_.horizon);

  s.expert_raw = expert_residuals(f, h, d.x_hat, d.y_hat, d.x_bar, d.y_bar, s.x_next, s.y_next, d.w, d.omega);
  s.meta_raw = meta_residuals(s.matrices.A, s.matrices.Lam, wv, ov, s.w_next, s.omega_next, theta_t, vartheta_t);

  const double dx = accept_residual(s.expert_raw.x, "expert x");
  const double dy = accept_residual(s.expert_raw.y, "expert y");
  const double Dx = accept_residual(s.meta_raw.x, "meta x");
  const double Dy = accept_residual(s.meta_raw.y, "meta y");
  sum_dx_ += dx;
  sum_dy_ += dy;
  sum_Dx_ += Dx;
  sum_Dy_ += Dy;
  anchor_x_ = s.x_next;
  anchor_y_ = s.y_next;
  anchor_w_ = s.w_next;
  anchor_omega_ = s.omega_next;
  return s;
}

}  // namespace occo
