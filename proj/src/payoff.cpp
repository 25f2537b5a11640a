// Copyright 2026 The OCCO Authors
// SPDX-License-Identifier: Apache-2.0
#include "occo/payoff.hpp"

#include <algorithm>
#include <cmath>

#include "occo/error.hpp"

namespace occo {

namespace {

constexpr std::size_t kSmallDim = 8;

void check_scalar(std::span<const double> x, std::span<const double> y) {
  OCCO_REQUIRE(x.size() == 1 && y.size() == 1, InputError, "quadratic saddle payoffs are scalar in x and y");
}

}  // namespace

QuadraticSaddle::QuadraticSaddle(double center_x, double center_y) : a_(center_x), b_(center_y) {
  OCCO_REQUIRE(std::isfinite(center_x) && std::isfinite(center_y), InputError,
               "quadratic saddle center must be finite");
}

double QuadraticSaddle::value(std::span<const double> x, std::span<const double> y) const {
  check_scalar(x, y);
  const double dx = x[0] - a_;
  const double dy = y[0] - b_;
  return 0.5 * dx * dx - 0.5 * dy * dy + dx * dy;
}

void QuadraticSaddle::grad_x(std::span<const double> x, std::span<const double> y, std::span<double> out) const {
  check_scalar(x, y);
  out[0] = (x[0] - a_) + (y[0] - b_);
}

void QuadraticSaddle::grad_y_neg(std::span<const double> x, std::span<const double> y,
                                 std::span<double> out) const {
  check_scalar(x, y);
  out[0] = (y[0] - b_) - (x[0] - a_);
}

std::optional<QuadraticForm> QuadraticSaddle::quadratic_form() const {
  return QuadraticForm{1.0, -a_ - b_, b_ - a_, 0.5 * a_ * a_ - 0.5 * b_ * b_ + a_ * b_};
}

void ZeroPayoff::grad_x(std::span<const double>, std::span<const double>, std::span<double> out) const {
  std::fill(out.begin(), out.end(), 0.0);
}

void ZeroPayoff::grad_y_neg(std::span<const double>, std::span<const double>, std::span<double> out) const {
  std::fill(out.begin(), out.end(), 0.0);
}

std::optional<QuadraticForm> ZeroPayoff::quadratic_form() const {
  if (dx_ != 1 || dy_ != 1) return std::nullopt;
  return QuadraticForm{};
}

MixturePayoff::MixturePayoff(std::vector<PayoffPtr> components, Vec weights)
    : components_(std::move(components)), weights_(std::move(weights)) {
  OCCO_REQUIRE(!components_.empty(), InputError, "mixture needs at least one component");
  OCCO_REQUIRE(components_.size() == weights_.size(), InputError, "mixture weights/components size mismatch");
  for (const auto& c : components_) {
    OCCO_REQUIRE(c != nullptr, InputError, "mixture component is null");
    OCCO_REQUIRE(c->dim_x() == dim_x() && c->dim_y() == dim_y(), InputError,
                 "mixture components differ in dimension");
  }
  for (double w : weights_) OCCO_REQUIRE(w >= 0.0, InputError, "mixture weights must be nonnegative");
}

double MixturePayoff::value(std::span<const double> x, std::span<const double> y) const {
  double s = 0.0;
  for (std::size_t k = 0; k < components_.size(); ++k) s += weights_[k] * components_[k]->value(x, y);
  return s;
}

void MixturePayoff::grad_x(std::span<const double> x, std::span<const double> y, std::span<double> out) const {
  std::fill(out.begin(), out.end(), 0.0);
  std::array<double, kSmallDim> small{};
  Vec big;
  std::span<double> buf;
  if (out.size() <= kSmallDim) {
    buf = std::span<double>(small.data(), out.size());
  } else {
    big.resize(out.size());
    buf = big;
  }
  for (std::size_t k = 0; k < components_.size(); ++k) {
    components_[k]->grad_x(x, y, buf);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += weights_[k] * buf[i];
  }
}

void MixturePayoff::grad_y_neg(std::span<const double> x, std::span<const double> y,
                               std::span<double> out) const {
  std::fill(out.begin(), out.end(), 0.0);
  std::array<double, kSmallDim> small{};
  Vec big;
  std::span<double> buf;
  if (out.size() <= kSmallDim) {
    buf = std::span<double>(small.data(), out.size());
  } else {
    big.resize(out.size());
    buf = big;
  }
  for (std::size_t k = 0; k < components_.size(); ++k) {
    components_[k]->grad_y_neg(x, y, buf);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += weights_[k] * buf[i];
  }
}

PayoffBounds MixturePayoff::bounds() const {
  PayoffBounds b;
  for (const auto& c : components_) {
    const PayoffBounds cb = c->bounds();
    b.M = std::max(b.M, cb.M);
    b.G_X = std::max(b.G_X, cb.G_X);
    b.G_Y = std::max(b.G_Y, cb.G_Y);
  }
  return b;
}

std::optional<Smoothness> MixturePayoff::smoothness() const {
  Smoothness s;
  for (const auto& c : components_) {
    const auto cs = c->smoothness();
    if (!cs) return std::nullopt;
    s.L_xx = std::max(s.L_xx, cs->L_xx);
    s.L_xy = std::max(s.L_xy, cs->L_xy);
    s.L_yx = std::max(s.L_yx, cs->L_yx);
    s.L_yy = std::max(s.L_yy, cs->L_yy);
  }
  return s;
}

std::optional<QuadraticForm> MixturePayoff::quadratic_form() const {
  QuadraticForm acc;
  for (std::size_t k = 0; k < components_.size(); ++k) {
    const auto qf = components_[k]->quadratic_form();
    if (!qf) return std::nullopt;
    acc += qf->scaled(weights_[k]);
  }
  return acc;
}

PayoffPtr make_quadratic(double center_x, double center_y) {
  return std::make_shared<QuadraticSaddle>(center_x, center_y);
}

PayoffPtr make_zero(std::size_t dim_x, std::size_t dim_y) { return std::make_shared<ZeroPayoff>(dim_x, dim_y); }

double eval_payoff(const PayoffFunction& f, const BoxDomain& X, const BoxDomain& Y, std::span<const double> x,
                   std::span<const double> y) {
  OCCO_REQUIRE(X.contains(x) && Y.contains(y), InputError, "eval_payoff: point outside the domain");
  return f.value(x, y);
}

SaddleGradients saddle_gradients(const PayoffFunction& f, const BoxDomain& X, const BoxDomain& Y,
                                 std::span<const double> x, std::span<const double> y) {
  OCCO_REQUIRE(X.contains(x) && Y.contains(y), InputError, "saddle_gradients: point outside the domain");
  SaddleGradients g{Vec(x.size()), Vec(y.size())};
  f.grad_x(x, y, g.grad_x);
  f.grad_y_neg(x, y, g.grad_y_neg);
  return g;
}

double max_abs_quadratic_on_box(const QuadraticForm& g, double x0, double x1, double y0, double y1) {
  double best = 0.0;
  auto probe = [&](double x, double y) { best = std::max(best, std::abs(g.value(x, y))); };
  probe(x0, y0);
  probe(x0, y1);
  probe(x1, y0);
  probe(x1, y1);
  if (g.c != 0.0) {
    // Edges x = const: dg/dy = c (x - y) + q = 0.
    for (double x : {x0, x1}) {
      const double y = x + g.q / g.c;
      if (y > y0 && y < y1) probe(x, y);
    }
    // Edges y = const: dg/dx = c (x + y) + p = 0.
    for (double y : {y0, y1}) {
      const double x = -y - g.p / g.c;
      if (x > x0 && x < x1) probe(x, y);
    }
  }
  return best;
}

RhoResult rho_distance(const PayoffFunction& f, const PayoffFunction& h, const BoxDomain& X, const BoxDomain& Y,
                       std::size_t grid_points) {
  OCCO_REQUIRE(f.dim_x() == h.dim_x() && f.dim_y() == h.dim_y(), InputError, "rho_distance: dimension mismatch");
  OCCO_REQUIRE(X.dim() == f.dim_x() && Y.dim() == f.dim_y(), InputError, "rho_distance: domain mismatch");
  OCCO_REQUIRE(X.dim() == 1 && Y.dim() == 1, InputError, "rho_distance: only scalar domains are supported");
  const double x0 = X.lower()[0], x1 = X.upper()[0];
  const double y0 = Y.lower()[0], y1 = Y.upper()[0];
  const auto qf = f.quadratic_form();
  const auto qh = h.quadratic_form();
  if (qf && qh) return {max_abs_quadratic_on_box(*qf - *qh, x0, x1, y0, y1), true};

  OCCO_REQUIRE(grid_points >= 2, InputError, "rho_distance: grid needs at least two points per axis");
  double best = 0.0;
  const double n = static_cast<double>(grid_points - 1);
  for (std::size_t i = 0; i < grid_points; ++i) {
    const double x = x0 + (x1 - x0) * static_cast<double>(i) / n;
    for (std::size_t j = 0; j < grid_points; ++j) {
      const double y = y0 + (y1 - y0) * static_cast<double>(j) / n;
      best = std::max(best, std::abs(f.at(x, y) - h.at(x, y)));
    }
  }
  return {best, false};
}

Vec loss_vector(const PayoffFunction& f, std::span<const PayoffPtr> bank, const std::array<Vec, 3>& probe_x,
                const std::array<Vec, 3>& probe_y) {
  OCCO_REQUIRE(!bank.empty(), InputError, "loss_vector: empty predictor bank");
  Vec fv(9);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) fv[3 * i + j] = f.value(probe_x[i], probe_y[j]);
  }
  Vec L(bank.size(), 0.0);
  for (std::size_t k = 0; k < bank.size(); ++k) {
    double m = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        m = std::max(m, std::abs(fv[3 * i + j] - bank[k]->value(probe_x[i], probe_y[j])));
      }
    }
    L[k] = m;
  }
  return L;
}

std::vector<PayoffPtr> delayed_predictor_bank(std::span<const PayoffPtr> history, std::span<const int> delays,
                                              long t, std::size_t dim_x, std::size_t dim_y) {
  OCCO_REQUIRE(std::is_sorted(delays.begin(), delays.end()) &&
                   std::adjacent_find(delays.begin(), delays.end()) == delays.end(),
               InputError, "predictor delays must be sorted and unique");
  std::vector<PayoffPtr> bank;
  bank.reserve(delays.size());
  PayoffPtr zero;
  for (int d : delays) {
    OCCO_REQUIRE(d >= 1, InputError, "predictor delays must be positive");
    const long src = t - d;  // 1-based round index of the source payoff
    if (src >= 1 && static_cast<std::size_t>(src) <= history.size()) {
      bank.push_back(history[static_cast<std::size_t>(src - 1)]);
    } else {
      if (!zero) zero = make_zero(dim_x, dim_y);
      bank.push_back(zero);
    }
  }
  return bank;
}

}  // namespace occo
