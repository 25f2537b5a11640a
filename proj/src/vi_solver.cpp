// Copyright 2026 The OCCO Authors
// SPDX-License-Identifier: Apache-2.0
#include "occo/vi_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "occo/error.hpp"

namespace occo {

namespace {

double logit(double u) { return std::log(u / (1.0 - u)); }

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

constexpr long kInnerMaxIter = 20'000;
constexpr double kInnerTol = 1e-15;

}  // namespace

Vec JointVector::flatten() const {
  Vec v;
  v.reserve(x.size() + y.size() + 2);
  v.insert(v.end(), x.begin(), x.end());
  v.insert(v.end(), y.begin(), y.end());
  v.push_back(w);
  v.push_back(omega);
  return v;
}

JointVector JointVector::unflatten(std::span<const double> v, std::size_t dim_x, std::size_t dim_y) {
  OCCO_REQUIRE(v.size() == dim_x + dim_y + 2, InputError, "joint vector has the wrong size");
  JointVector j;
  j.x.assign(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(dim_x));
  j.y.assign(v.begin() + static_cast<std::ptrdiff_t>(dim_x), v.begin() + static_cast<std::ptrdiff_t>(dim_x + dim_y));
  j.w = v[dim_x + dim_y];
  j.omega = v[dim_x + dim_y + 1];
  return j;
}

double JointVector::norm() const {
  double s = w * w + omega * omega;
  for (double a : x) s += a * a;
  for (double a : y) s += a * a;
  return std::sqrt(s);
}

void OperatorContext::validate() const {
  OCCO_REQUIRE(predictor != nullptr, InputError, "operator context has no predictor");
  OCCO_REQUIRE(predictor->dim_x() == X.dim() && predictor->dim_y() == Y.dim(), InputError,
               "predictor dimensions do not match the domains");
  OCCO_REQUIRE(horizon >= 2, InputError, "operator context needs horizon >= 2");
  OCCO_REQUIRE(X.contains(anchor_x, 1e-12) && Y.contains(anchor_y, 1e-12), DomainError,
               "proximal anchors outside the domain");
  OCCO_REQUIRE(X.contains(side_x, 1e-12) && Y.contains(side_y, 1e-12), DomainError,
               "adaptive strategies outside the domain");
  const double lo = 1.0 / static_cast<double>(horizon);
  for (double a : {anchor_w, anchor_omega}) {
    OCCO_REQUIRE(a >= lo - 1e-12 && a <= 1.0 - lo + 1e-12, DomainError, "meta anchor outside [1/T, 1-1/T]");
  }
  for (double r : {eta, gamma, theta, vartheta}) {
    OCCO_REQUIRE(std::isfinite(r) && r >= 0.0, InputError, "learning rates must be finite and nonnegative");
  }
}

CoupledOperator::CoupledOperator(OperatorContext ctx, bool freeze_weights)
    : ctx_(std::move(ctx)), frozen_(freeze_weights) {
  ctx_.validate();
  dx_ = ctx_.X.dim();
  dy_ = ctx_.Y.dim();
  Vec lo = ctx_.X.lower();
  Vec hi = ctx_.X.upper();
  lo.insert(lo.end(), ctx_.Y.lower().begin(), ctx_.Y.lower().end());
  hi.insert(hi.end(), ctx_.Y.upper().begin(), ctx_.Y.upper().end());
  if (!frozen_) {
    const double f = 1.0 / static_cast<double>(ctx_.horizon);
    lo.push_back(f);
    lo.push_back(f);
    hi.push_back(1.0 - f);
    hi.push_back(1.0 - f);
  }
  K_ = BoxDomain(std::move(lo), std::move(hi));
  if (dx_ == 1 && dy_ == 1) {
    quad_ = ctx_.predictor->quadratic_form();
    if (quad_ && quad_->c < 0.0) quad_.reset();
  }
  const auto sm = ctx_.predictor->smoothness();
  curvature_x_ = sm ? ctx_.eta * sm->L_xx : 0.0;
  curvature_y_ = sm ? ctx_.gamma * sm->L_yy : 0.0;
}

JointVector CoupledOperator::unpack(std::span<const double> v) const {
  OCCO_REQUIRE(v.size() == K_.dim(), InputError, "joint vector has the wrong size");
  if (!frozen_) return JointVector::unflatten(v, dx_, dy_);
  JointVector j;
  j.x.assign(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(dx_));
  j.y.assign(v.begin() + static_cast<std::ptrdiff_t>(dx_), v.end());
  j.w = 1.0;
  j.omega = 1.0;
  return j;
}

Vec CoupledOperator::pack(const JointVector& j) const {
  OCCO_REQUIRE(j.x.size() == dx_ && j.y.size() == dy_, InputError, "joint vector blocks have the wrong size");
  if (!frozen_) return j.flatten();
  Vec v(j.x);
  v.insert(v.end(), j.y.begin(), j.y.end());
  return v;
}

Vec CoupledOperator::initial_point() const {
  JointVector j{ctx_.anchor_x, ctx_.anchor_y, ctx_.anchor_w, ctx_.anchor_omega};
  Vec v = pack(j);
  project_box_inplace(v, K_);
  return v;
}

void CoupledOperator::apply(std::span<const double> v, std::span<double> out) const {
  OCCO_REQUIRE(v.size() == K_.dim() && out.size() == K_.dim(), InputError, "operator: dimension mismatch");
  const auto x = v.subspan(0, dx_);
  const auto y = v.subspan(dx_, dy_);
  const double w = frozen_ ? 1.0 : v[dx_ + dy_];
  const double om = frozen_ ? 1.0 : v[dx_ + dy_ + 1];
  if (!frozen_) {
    OCCO_REQUIRE(w > 0.0 && w < 1.0 && om > 0.0 && om < 1.0, DomainError, "meta weights must lie in (0, 1)");
  }
  const PayoffFunction& h = *ctx_.predictor;
  const auto xb = std::span<const double>(ctx_.side_x);
  const auto yb = std::span<const double>(ctx_.side_y);

  Vec buf(std::max(dx_, dy_));
  auto gx = out.subspan(0, dx_);
  h.grad_x(x, y, gx);
  for (std::size_t i = 0; i < dx_; ++i) gx[i] *= ctx_.eta * om;
  if (om < 1.0) {
    h.grad_x(x, yb, std::span<double>(buf.data(), dx_));
    for (std::size_t i = 0; i < dx_; ++i) gx[i] += ctx_.eta * (1.0 - om) * buf[i];
  }
  for (std::size_t i = 0; i < dx_; ++i) gx[i] += x[i] - ctx_.anchor_x[i];

  auto gy = out.subspan(dx_, dy_);
  h.grad_y_neg(x, y, gy);
  for (std::size_t i = 0; i < dy_; ++i) gy[i] *= ctx_.gamma * w;
  if (w < 1.0) {
    h.grad_y_neg(xb, y, std::span<double>(buf.data(), dy_));
    for (std::size_t i = 0; i < dy_; ++i) gy[i] += ctx_.gamma * (1.0 - w) * buf[i];
  }
  for (std::size_t i = 0; i < dy_; ++i) gy[i] += y[i] - ctx_.anchor_y[i];

  if (frozen_) return;
  const double h_xy = h.value(x, y);
  const double h_bxy = h.value(xb, y);
  const double h_xby = h.value(x, yb);
  const double h_bxby = h.value(xb, yb);
  out[dx_ + dy_] = ctx_.theta * (om * (h_xy - h_bxy) + (1.0 - om) * (h_xby - h_bxby)) + logit(w) - logit(ctx_.anchor_w);
  out[dx_ + dy_ + 1] =
      ctx_.vartheta * (w * (h_xby - h_xy) + (1.0 - w) * (h_bxby - h_bxy)) + logit(om) - logit(ctx_.anchor_omega);
}

void CoupledOperator::best_response(std::size_t block, std::span<double> v) const {
  OCCO_REQUIRE(block < block_count(), InputError, "best_response: no such block");
  OCCO_REQUIRE(v.size() == K_.dim(), InputError, "best_response: dimension mismatch");
  const double w = frozen_ ? 1.0 : v[dx_ + dy_];
  const double om = frozen_ ? 1.0 : v[dx_ + dy_ + 1];
  const double lo = 1.0 / static_cast<double>(ctx_.horizon);
  const double hi = 1.0 - lo;

  if (block == 0 || block == 1) {
    if (!quad_) {
      best_response_primal(block == 0, v);
      return;
    }
    const QuadraticForm& q = *quad_;
    if (block == 0) {
      const double y_mix = om * v[1] + (1.0 - om) * ctx_.side_y[0];
      const double x = (ctx_.anchor_x[0] - ctx_.eta * (q.c * y_mix + q.p)) / (1.0 + ctx_.eta * q.c);
      v[0] = std::clamp(x, ctx_.X.lower()[0], ctx_.X.upper()[0]);
    } else {
      const double x_mix = w * v[0] + (1.0 - w) * ctx_.side_x[0];
      const double y = (ctx_.anchor_y[0] + ctx_.gamma * (q.c * x_mix + q.q)) / (1.0 + ctx_.gamma * q.c);
      v[1] = std::clamp(y, ctx_.Y.lower()[0], ctx_.Y.upper()[0]);
    }
    return;
  }

  const auto x = std::span<const double>(v.data(), dx_);
  const auto y = std::span<const double>(v.data() + dx_, dy_);
  const PayoffFunction& h = *ctx_.predictor;
  const auto xb = std::span<const double>(ctx_.side_x);
  const auto yb = std::span<const double>(ctx_.side_y);
  double h_xy, h_bxy, h_xby, h_bxby;
  if (quad_) {
    h_xy = quad_->value(x[0], y[0]);
    h_bxy = quad_->value(xb[0], y[0]);
    h_xby = quad_->value(x[0], yb[0]);
    h_bxby = quad_->value(xb[0], yb[0]);
  } else {
    h_xy = h.value(x, y);
    h_bxy = h.value(xb, y);
    h_xby = h.value(x, yb);
    h_bxby = h.value(xb, yb);
  }
  // The w and omega subproblems are scalar with an increasing logit term, so
  // the box-constrained root is the clamped unconstrained one.
  if (block == 2) {
    const double c = om * (h_xy - h_bxy) + (1.0 - om) * (h_xby - h_bxby);
    v[dx_ + dy_] = std::clamp(sigmoid(logit(ctx_.anchor_w) - ctx_.theta * c), lo, hi);
  } else {
    const double c = w * (h_xby - h_xy) + (1.0 - w) * (h_bxby - h_bxy);
    v[dx_ + dy_ + 1] = std::clamp(sigmoid(logit(ctx_.anchor_omega) - ctx_.vartheta * c), lo, hi);
  }
}

void CoupledOperator::best_response_primal(bool x_side, std::span<double> v) const {
  const std::size_t off = x_side ? 0 : dx_;
  const std::size_t n = x_side ? dx_ : dy_;
  const PayoffFunction& h = *ctx_.predictor;
  const double w = frozen_ ? 1.0 : v[dx_ + dy_];
  const double om = frozen_ ? 1.0 : v[dx_ + dy_ + 1];

  Vec full(v.begin(), v.end());
  Vec buf(n);
  auto block_grad = [&](std::span<const double> z, std::span<double> g) {
    std::copy(z.begin(), z.end(), full.begin() + static_cast<std::ptrdiff_t>(off));
    const auto x = std::span<const double>(full).subspan(0, dx_);
    const auto y = std::span<const double>(full).subspan(dx_, dy_);
    if (x_side) {
      h.grad_x(x, y, g);
      for (std::size_t i = 0; i < n; ++i) g[i] *= ctx_.eta * om;
      if (om < 1.0) {
        h.grad_x(x, ctx_.side_y, buf);
        for (std::size_t i = 0; i < n; ++i) g[i] += ctx_.eta * (1.0 - om) * buf[i];
      }
      for (std::size_t i = 0; i < n; ++i) g[i] += x[i] - ctx_.anchor_x[i];
    } else {
      h.grad_y_neg(x, y, g);
      for (std::size_t i = 0; i < n; ++i) g[i] *= ctx_.gamma * w;
      if (w < 1.0) {
        h.grad_y_neg(ctx_.side_x, y, buf);
        for (std::size_t i = 0; i < n; ++i) g[i] += ctx_.gamma * (1.0 - w) * buf[i];
      }
      for (std::size_t i = 0; i < n; ++i) g[i] += y[i] - ctx_.anchor_y[i];
    }
  };
  Vec start(v.begin() + static_cast<std::ptrdiff_t>(off), v.begin() + static_cast<std::ptrdiff_t>(off + n));
  const Vec z = projected_gradient_minimize(block_grad, x_side ? ctx_.X : ctx_.Y, std::move(start),
                                            x_side ? curvature_x_ : curvature_y_, kInnerTol, kInnerMaxIter);
  std::copy(z.begin(), z.end(), v.begin() + static_cast<std::ptrdiff_t>(off));
}

Vec projected_gradient_minimize(const BoxGradient& grad, const BoxDomain& dom, Vec start, double curvature,
                                double tol, long max_iter, long* iterations) {
  const std::size_t n = dom.dim();
  OCCO_REQUIRE(start.size() == n, InputError, "projected_gradient_minimize: dimension mismatch");
  const double min_step = 1.0 / (1.0 + (curvature > 0.0 ? curvature : 1e6));
  Vec z = std::move(start);
  project_box_inplace(z, dom);
  Vec g(n), g_prev(n), z_prev(n);
  grad(z, g);
  double step = curvature > 0.0 ? 1.0 / (1.0 + curvature) : 1.0;
  long it = 0;
  while (it < max_iter) {
    ++it;
    z_prev = z;
    g_prev = g;
    double moved = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      z[i] = std::clamp(z[i] - step * g[i], dom.lower()[i], dom.upper()[i]);
      moved = std::max(moved, std::abs(z[i] - z_prev[i]));
      scale = std::max(scale, std::abs(z[i]));
    }
    if (moved <= tol * (1.0 + scale)) break;
    grad(z, g);
    double ss = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double s = z[i] - z_prev[i];
      ss += s * s;
      sy += s * (g[i] - g_prev[i]);
    }
    step = sy > 0.0 ? std::clamp(ss / sy, min_step, 1.0) : min_step;
  }
  if (iterations) *iterations = it;
  return z;
}

LipschitzConstants lipschitz_constants(const OperatorContext& ctx) {
  OCCO_REQUIRE(ctx.predictor != nullptr, InputError, "operator context has no predictor");
  LipschitzConstants k;
  const PayoffBounds b = ctx.predictor->bounds();
  k.G_X = b.G_X;
  k.G_Y = b.G_Y;
  k.D_X = ctx.X.diameter();
  k.D_Y = ctx.Y.diameter();
  const auto sm = ctx.predictor->smoothness();
  OCCO_REQUIRE(sm.has_value(), InputError, "Lipschitz bound needs a predictor with declared smoothness");
  k.L_xx = sm->L_xx;
  k.L_xy = sm->L_xy;
  k.L_yx = sm->L_yx;
  k.L_yy = sm->L_yy;
  return k;
}

double lipschitz_bound(double eta, double gamma, double theta, double vartheta, long horizon,
                       const LipschitzConstants& k) {
  const double T = static_cast<double>(horizon);
  const auto sq = [](double a) { return a * a; };
  const double cx = 4.0 * (sq(eta * k.L_xx + k.L_phi) + sq(gamma * k.L_yx) + (sq(theta) + 4.0 * sq(vartheta)) * sq(k.G_X));
  const double cy = 4.0 * (sq(gamma * k.L_yy + k.L_psi) + sq(theta * k.L_xy) + (sq(vartheta) + 4.0 * sq(theta)) * sq(k.G_Y));
  const double c = std::min(sq(k.D_X) * sq(k.L_xx * k.D_X + k.L_xy * k.D_Y),
                            sq(k.D_Y) * sq(k.L_yx * k.D_X + k.L_yy * k.D_Y)) +
                   sq(T);
  const double cw = 2.0 * sq(gamma * k.L_yx * k.D_X) + 4.0 * sq(vartheta) * c;
  const double comega = 2.0 * sq(eta * k.L_xy * k.D_Y) + 4.0 * sq(theta) * c;
  return std::sqrt(std::max({cx, cy, cw, comega}));
}

double lipschitz_bound(const OperatorContext& ctx) {
  return lipschitz_bound(ctx.eta, ctx.gamma, ctx.theta, ctx.vartheta, ctx.horizon, lipschitz_constants(ctx));
}

double safe_lipschitz_bound(const OperatorContext& ctx, bool freeze_weights) {
  const LipschitzConstants k = lipschitz_constants(ctx);
  const double M = ctx.predictor->bounds().M;
  const double T = static_cast<double>(ctx.horizon);
  // Frobenius norm of the matrix of Jacobian block norms bounds the spectral
  // norm of the Jacobian.
  const double logit_slope = T * T / (T - 1.0);
  const double xx = ctx.eta * k.L_xx + 1.0, xy = ctx.eta * k.L_xy;
  const double yx = ctx.gamma * k.L_yx, yy = ctx.gamma * k.L_yy + 1.0;
  double fro = xx * xx + xy * xy + yx * yx + yy * yy;
  if (freeze_weights) return std::sqrt(fro);
  const double x_om = ctx.eta * std::min(k.L_xy * k.D_Y, 2.0 * k.G_X);
  const double y_w = ctx.gamma * std::min(k.L_yx * k.D_X, 2.0 * k.G_Y);
  const double w_x = ctx.theta * k.G_X;
  const double w_y = ctx.theta * std::min(2.0 * k.G_Y, k.L_yx * k.D_X);
  const double w_om = ctx.theta * std::min(4.0 * M, 2.0 * k.G_X * k.D_X);
  const double om_x = ctx.vartheta * std::min(2.0 * k.G_X, k.L_xy * k.D_Y);
  const double om_y = ctx.vartheta * k.G_Y;
  const double om_w = ctx.vartheta * std::min(4.0 * M, 2.0 * k.G_Y * k.D_Y);
  for (double a : {x_om, y_w, w_x, w_y, w_om, om_x, om_y, om_w, logit_slope, logit_slope}) fro += a * a;
  return std::max(std::sqrt(fro), lipschitz_bound(ctx));
}

std::string_view to_string(SolverFlag flag) {
  switch (flag) {
    case SolverFlag::kCertified:
      return "ok";
    case SolverFlag::kUncertified:
      return "uncertified";
    case SolverFlag::kFallback:
      return "fallback";
  }
  return "unknown";
}

double natural_residual(const VariationalProblem& problem, std::span<const double> v) {
  const BoxDomain& K = problem.feasible_set();
  OCCO_REQUIRE(v.size() == K.dim(), InputError, "natural_residual: dimension mismatch");
  Vec g(v.size());
  problem.apply(v, g);
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double p = std::clamp(v[i] - g[i], K.lower()[i], K.upper()[i]);
    s += (v[i] - p) * (v[i] - p);
  }
  return std::sqrt(s);
}

double vi_gap(const VariationalProblem& problem, std::span<const double> v) {
  const BoxDomain& K = problem.feasible_set();
  OCCO_REQUIRE(v.size() == K.dim(), InputError, "vi_gap: dimension mismatch");
  Vec g(v.size());
  problem.apply(v, g);
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) s += g[i] * (v[i] - (g[i] > 0.0 ? K.lower()[i] : K.upper()[i]));
  return s;
}

SolveResult dual_extrapolation_solve(const VariationalProblem& problem, double lipschitz,
                                     const DualExtrapolationOptions& opts) {
  OCCO_REQUIRE(lipschitz > 0.0 && std::isfinite(lipschitz), InputError, "Lipschitz constant must be positive");
  OCCO_REQUIRE(opts.tol > 0.0 && opts.max_iter >= 0, InputError, "invalid dual extrapolation options");
  const BoxDomain& K = problem.feasible_set();
  const std::size_t n = K.dim();
  const double L = lipschitz;
  const double ratio = std::sqrt(L / (L + 1.0));

  Vec y = K.center();
  Vec g(n), xk(n), gx(n);
  problem.apply(y, g);
  const double g0 = norm2(g);
  // Running sums of l_i y_i and l_i G(y_i), and of l_i.
  Vec sum_y(y), sum_g(g);
  double sum_l = 1.0;
  Vec avg(y);

  SolveResult res;
  double cert = g0;
  long k = 0;
  while (cert > opts.tol && k < opts.max_iter) {
    for (std::size_t i = 0; i < n; ++i) {
      xk[i] = std::clamp((sum_y[i] - sum_g[i]) / sum_l, K.lower()[i], K.upper()[i]);
    }
    problem.apply(xk, gx);
    for (std::size_t i = 0; i < n; ++i) y[i] = std::clamp(xk[i] - gx[i] / L, K.lower()[i], K.upper()[i]);
    const double lam = sum_l / L;
    problem.apply(y, g);
    for (std::size_t i = 0; i < n; ++i) {
      sum_y[i] += lam * y[i];
      sum_g[i] += lam * g[i];
    }
    sum_l += lam;
    if (sum_l > 1e100) {
      // The weights grow geometrically; every formula is scale-free in them.
      for (std::size_t i = 0; i < n; ++i) {
        sum_y[i] /= sum_l;
        sum_g[i] /= sum_l;
      }
      sum_l = 1.0;
    }
    ++k;
    cert *= ratio;
    for (std::size_t i = 0; i < n; ++i) avg[i] = std::clamp(sum_y[i] / sum_l, K.lower()[i], K.upper()[i]);
    if (opts.observer) opts.observer(k, avg);
  }
  res.solution = std::move(avg);
  res.iterations = k;
  res.certificate = cert;
  res.flag = cert <= opts.tol ? SolverFlag::kCertified : SolverFlag::kUncertified;
  res.natural_residual = natural_residual(problem, res.solution);
  return res;
}

SolveResult fixed_point_solve(const BlockVariationalProblem& problem, const FixedPointOptions& opts) {
  OCCO_REQUIRE(opts.damping > 0.0 && opts.damping <= 1.0, InputError, "damping must lie in (0, 1]");
  OCCO_REQUIRE(opts.tol > 0.0 && opts.max_sweeps >= 1, InputError, "invalid fixed point options");
  const BoxDomain& K = problem.feasible_set();
  const std::size_t n = K.dim();
  Vec v = problem.initial_point();
  OCCO_REQUIRE(v.size() == n, InputError, "initial point has the wrong size");
  project_box_inplace(v, K);

  Vec u(n);
  double beta = opts.damping;
  double prev = std::numeric_limits<double>::infinity();
  double moved = prev;
  long sweeps = 0;
  bool converged = false;
  while (sweeps < opts.max_sweeps) {
    u = v;
    for (std::size_t b = 0; b < problem.block_count(); ++b) problem.best_response(b, u);
    ++sweeps;
    moved = distance(u, v);
    if (moved <= opts.tol) {
      v = u;
      converged = true;
      break;
    }
    if (moved > prev) beta = std::max(0.5 * beta, std::min(opts.min_damping, opts.damping));
    prev = moved;
    for (std::size_t i = 0; i < n; ++i) v[i] += beta * (u[i] - v[i]);
  }

  SolveResult res;
  res.solution = v;
  res.iterations = sweeps;
  res.certificate = moved;
  res.natural_residual = natural_residual(problem, v);
  // A fixed point of the sweep solves the VI; guard against a stalled sweep.
  const bool ok = converged && res.natural_residual <= std::max(1e-9, 1e3 * opts.tol);
  res.flag = ok ? SolverFlag::kCertified : SolverFlag::kUncertified;

  const bool want_reference = opts.fallback_lipschitz > 0.0 && (!ok || opts.cross_check);
  if (!want_reference) return res;
  DualExtrapolationOptions de;
  de.tol = opts.fallback_tol;
  SolveResult ref = dual_extrapolation_solve(problem, opts.fallback_lipschitz, de);
  ref.iterations += sweeps;
  if (!ok) {
    ref.flag = ref.flag == SolverFlag::kCertified ? SolverFlag::kFallback : SolverFlag::kUncertified;
    return ref;
  }
  if (distance(ref.solution, res.solution) > 1e-5 && ref.flag == SolverFlag::kCertified) {
    ref.disagreement = true;
    return ref;
  }
  return res;
}

}  // namespace occo
