// Copyright 2026 The OCCO Authors
// SPDX-License-Identifier: Apache-2.0
#include "occo/optoppm.hpp"

#include <algorithm>

#include "occo/error.hpp"

namespace occo {

namespace {

double half_sq_dist(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return 0.5 * s;
}

}  // namespace

OptOppmResiduals optoppm_residuals(const PayoffFunction& f, const PayoffFunction& h, std::span<const double> x,
                                   std::span<const double> y, std::span<const double> x_next,
                                   std::span<const double> y_next, double eta, double gamma) {
  OCCO_REQUIRE(eta > 0.0 && gamma > 0.0, InputError, "optoppm_residuals: rates must be positive");
  OptOppmResiduals r;
  r.x = f.value(x, y) - h.value(x, y) + h.value(x_next, y) - f.value(x_next, y) - half_sq_dist(x_next, x) / eta;
  r.y = f.value(x, y_next) - h.value(x, y_next) + h.value(x, y) - f.value(x, y) - half_sq_dist(y_next, y) / gamma;
  return r;
}

OptOppmState::OptOppmState(BoxDomain X, BoxDomain Y, OptOppmConfig cfg)
    : X_(std::move(X)), Y_(std::move(Y)), cfg_(cfg) {
  OCCO_REQUIRE(cfg_.horizon >= 1, InputError, "horizon must be >= 1");
  OCCO_REQUIRE(cfg_.epsilon > 0.0, InputError, "epsilon must be positive");
  const double T = static_cast<double>(cfg_.horizon);
  lambda_ = cfg_.lambda >= 0.0 ? cfg_.lambda : X_.diameter() * T;
  mu_ = cfg_.mu >= 0.0 ? cfg_.mu : Y_.diameter() * T;
  L_Bphi_ = cfg_.L_Bphi > 0.0 ? cfg_.L_Bphi : X_.diameter();
  L_Bpsi_ = cfg_.L_Bpsi > 0.0 ? cfg_.L_Bpsi : Y_.diameter();
  anchor_x_ = X_.center();
  anchor_y_ = Y_.center();
}

double OptOppmState::eta() const { return L_Bphi_ * (X_.diameter() + lambda_) / (cfg_.epsilon + sum_x_); }

double OptOppmState::gamma() const { return L_Bpsi_ * (Y_.diameter() + mu_) / (cfg_.epsilon + sum_y_); }

OptOppmDecision OptOppmState::decide(const PayoffPtr& h) const {
  OperatorContext ctx;
  ctx.predictor = h;
  ctx.X = X_;
  ctx.Y = Y_;
  ctx.anchor_x = anchor_x_;
  ctx.anchor_y = anchor_y_;
  ctx.side_x = anchor_x_;
  ctx.side_y = anchor_y_;
  ctx.eta = eta();
  ctx.gamma = gamma();
  ctx.horizon = std::max(cfg_.horizon, 2L);
  const CoupledOperator op(std::move(ctx), true);
  const SolveResult res = solve_coupled(op, cfg_.solver);
  const JointVector j = op.unpack(res.solution);
  OptOppmDecision d;
  d.x = j.x;
  d.y = j.y;
  d.solver_iterations = res.iterations;
  d.solver_flag = res.flag;
  d.natural_residual = res.natural_residual;
  d.solver_disagreement = res.disagreement;
  return d;
}

OptOppmStep OptOppmState::update(const PayoffFunction& f, const PayoffFunction& h, const OptOppmDecision& d) {
  const double eta_t = eta(), gamma_t = gamma();
  OptOppmStep s;
  s.x_next = expert_step_x(f, X_, anchor_x_, d.y, d.y, 1.0, eta_t);
  s.y_next = expert_step_y(f, Y_, anchor_y_, d.x, d.x, 1.0, gamma_t);
  s.raw = optoppm_residuals(f, h, d.x, d.y, s.x_next, s.y_next, eta_t, gamma_t);
  const double nx = accept_residual(s.raw.x, "optimistic x");
  const double ny = accept_residual(s.raw.y, "optimistic y");
  sum_x_ += nx;
  sum_y_ += ny;
  anchor_x_ = s.x_next;
  anchor_y_ = s.y_next;
  return s;
}

}  // namespace occo
