// Copyright 2026 The OCCO Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "occo/geometry.hpp"

namespace occo {

/// Payoff bound metadata: |f| <= M, |grad_x f| <= G_X, |grad_y (-f)| <= G_Y.
struct PayoffBounds {
  double M = 0.0;
  double G_X = 0.0;
  double G_Y = 0.0;
};

/// Lipschitz constants of the gradients.
struct Smoothness {
  double L_xx = 0.0;
  double L_xy = 0.0;
  double L_yx = 0.0;
  double L_yy = 0.0;
};

/// Scalar payoffs of the form c (x^2/2 - y^2/2 + x y) + p x + q y + r.
/// Saddle quadratics, the zero payoff and any mixture of them live in this
/// family, which admits exact closed forms for proximal steps, best responses
/// and the distance rho. Convex-concave iff c >= 0.
struct QuadraticForm {
  double c = 0.0;
  double p = 0.0;
  double q = 0.0;
  double r = 0.0;

  double value(double x, double y) const { return c * (0.5 * x * x - 0.5 * y * y + x * y) + p * x + q * y + r; }
  double dx(double x, double y) const { return c * (x + y) + p; }
  double dy(double x, double y) const { return c * (x - y) + q; }

  QuadraticForm operator-(const QuadraticForm& o) const { return {c - o.c, p - o.p, q - o.q, r - o.r}; }
  QuadraticForm scaled(double s) const { return {s * c, s * p, s * q, s * r}; }
  QuadraticForm& operator+=(const QuadraticForm& o) {
    c += o.c;
    p += o.p;
    q += o.q;
    r += o.r;
    return *this;
  }
};

/// A convex-concave payoff f(x, y) with subgradient oracles.
/// Implementations are immutable after construction.
class PayoffFunction {
 public:
  virtual ~PayoffFunction() = default;

  virtual std::size_t dim_x() const = 0;
  virtual std::size_t dim_y() const = 0;
  virtual double value(std::span<const double> x, std::span<const double> y) const = 0;
  virtual void grad_x(std::span<const double> x, std::span<const double> y, std::span<double> out) const = 0;
  /// Subgradient of -f in y.
  virtual void grad_y_neg(std::span<const double> x, std::span<const double> y,
                          std::span<double> out) const = 0;
  virtual PayoffBounds bounds() const = 0;
  virtual std::optional<Smoothness> smoothness() const { return std::nullopt; }
  virtual std::optional<QuadraticForm> quadratic_form() const { return std::nullopt; }

  double at(double x, double y) const { return value({&x, 1}, {&y, 1}); }
};

using PayoffPtr = std::shared_ptr<const PayoffFunction>;

/// f(x,y) = (x-a)^2/2 - (y-b)^2/2 + (x-a)(y-b) on scalar domains; saddle at (a, b).
class QuadraticSaddle final : public PayoffFunction {
 public:
  QuadraticSaddle(double center_x, double center_y);

  double center_x() const { return a_; }
  double center_y() const { return b_; }

  std::size_t dim_x() const override { return 1; }
  std::size_t dim_y() const override { return 1; }
  double value(std::span<const double> x, std::span<const double> y) const override;
  void grad_x(std::span<const double> x, std::span<const double> y, std::span<double> out) const override;
  void grad_y_neg(std::span<const double> x, std::span<const double> y, std::span<double> out) const override;
  /// Worst case over |a|, |b| <= 1 on [-1, 1]^2.
  PayoffBounds bounds() const override { return {4.5, 4.0, 4.0}; }
  std::optional<Smoothness> smoothness() const override { return Smoothness{1.0, 1.0, 1.0, 1.0}; }
  std::optional<QuadraticForm> quadratic_form() const override;

 private:
  double a_;
  double b_;
};

class ZeroPayoff final : public PayoffFunction {
 public:
  explicit ZeroPayoff(std::size_t dim_x = 1, std::size_t dim_y = 1) : dx_(dim_x), dy_(dim_y) {}

  std::size_t dim_x() const override { return dx_; }
  std::size_t dim_y() const override { return dy_; }
  double value(std::span<const double>, std::span<const double>) const override { return 0.0; }
  void grad_x(std::span<const double>, std::span<const double>, std::span<double> out) const override;
  void grad_y_neg(std::span<const double>, std::span<const double>, std::span<double> out) const override;
  PayoffBounds bounds() const override { return {}; }
  std::optional<Smoothness> smoothness() const override { return Smoothness{}; }
  std::optional<QuadraticForm> quadratic_form() const override;

 private:
  std::size_t dx_;
  std::size_t dy_;
};

/// Weighted combination sum_k weights[k] * components[k]. Components are kept
/// rather than collapsed so the mixture is exact for any family.
class MixturePayoff final : public PayoffFunction {
 public:
  MixturePayoff(std::vector<PayoffPtr> components, Vec weights);

  const std::vector<PayoffPtr>& components() const { return components_; }
  const Vec& weights() const { return weights_; }

  std::size_t dim_x() const override { return components_.front()->dim_x(); }
  std::size_t dim_y() const override { return components_.front()->dim_y(); }
  double value(std::span<const double> x, std::span<const double> y) const override;
  void grad_x(std::span<const double> x, std::span<const double> y, std::span<double> out) const override;
  void grad_y_neg(std::span<const double> x, std::span<const double> y, std::span<double> out) const override;
  /// Component-wise maxima.
  PayoffBounds bounds() const override;
  std::optional<Smoothness> smoothness() const override;
  std::optional<QuadraticForm> quadratic_form() const override;

 private:
  std::vector<PayoffPtr> components_;
  Vec weights_;
};

PayoffPtr make_quadratic(double center_x, double center_y);
PayoffPtr make_zero(std::size_t dim_x = 1, std::size_t dim_y = 1);

/// f(x, y) with domain checks.
double eval_payoff(const PayoffFunction& f, const BoxDomain& X, const BoxDomain& Y,
                   std::span<const double> x, std::span<const double> y);

struct SaddleGradients {
  Vec grad_x;
  Vec grad_y_neg;
};
SaddleGradients saddle_gradients(const PayoffFunction& f, const BoxDomain& X, const BoxDomain& Y,
                                 std::span<const double> x, std::span<const double> y);

struct RhoResult {
  double value = 0.0;
  /// False when the value is a grid estimate rather than the exact maximum.
  bool exact = true;
};

/// Default grid resolution (points per axis) for the rho estimate of general pairs.
inline constexpr std::size_t kRhoGridPoints = 401;

/// max over X x Y of |f - h|. Exact for pairs in the quadratic family on
/// scalar domains; otherwise a grid estimate on a kRhoGridPoints^2 lattice
/// (scalar domains) and flagged as such.
RhoResult rho_distance(const PayoffFunction& f, const PayoffFunction& h, const BoxDomain& X,
                       const BoxDomain& Y, std::size_t grid_points = kRhoGridPoints);

/// max |g| over [x0,x1] x [y0,y1] for a scalar quadratic form g. g is either
/// affine or an indefinite quadratic, so extrema sit on the boundary: the
/// corners plus the critical points of the restrictions to the four edges.
double max_abs_quadratic_on_box(const QuadraticForm& g, double x0, double x1, double y0, double y1);

/// L^k = max over the 3x3 probe grid of |f - h^k|.
Vec loss_vector(const PayoffFunction& f, std::span<const PayoffPtr> bank,
                const std::array<Vec, 3>& probe_x, const std::array<Vec, 3>& probe_y);

/// h^j = f_{t - delay_j} (history[0] is f_1), or the zero payoff when there is
/// not enough history yet.
std::vector<PayoffPtr> delayed_predictor_bank(std::span<const PayoffPtr> history,
                                              std::span<const int> delays, long t,
                                              std::size_t dim_x = 1, std::size_t dim_y = 1);

}  // namespace occo
