// Copyright 2026 The OCCO Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>

#include "occo/geometry.hpp"
#include "occo/integration.hpp"
#include "occo/payoff.hpp"

namespace occo {

struct OptOppmConfig {
  long horizon = 64;
  double epsilon = 1.0;
  /// Path-length budgets; < 0 selects D T.
  double lambda = -1.0;
  double mu = -1.0;
  /// Coupling constants; <= 0 selects the domain diameter.
  double L_Bphi = 0.0;
  double L_Bpsi = 0.0;
  SolverSettings solver;
};

struct OptOppmDecision {
  Vec x;
  Vec y;
  long solver_iterations = 0;
  SolverFlag solver_flag = SolverFlag::kCertified;
  double natural_residual = 0.0;
  bool solver_disagreement = false;
};

struct OptOppmResiduals {
  double x = 0.0;
  double y = 0.0;
};

/// nu^x = f(x,y) - h(x,y) + h(x~',y) - f(x~',y) - |x~' - x|^2 / (2 eta)
/// nu^y = f(x,y~') - h(x,y~') + h(x,y) - f(x,y) - |y~' - y|^2 / (2 gamma)
OptOppmResiduals optoppm_residuals(const PayoffFunction& f, const PayoffFunction& h, std::span<const double> x,
                                   std::span<const double> y, std::span<const double> x_next,
                                   std::span<const double> y_next, double eta, double gamma);

struct OptOppmStep {
  Vec x_next;
  Vec y_next;
  OptOppmResiduals raw;
};

/// Optimistic proximal point method with rates
///   eta_t   = L_Bphi (D_X + lambda) / (eps + sum nu^x)
///   gamma_t = L_Bpsi (D_Y + mu) / (eps + sum nu^y)
/// The decision solves the saddle problem of h + B(x, x~)/eta - B(y, y~)/gamma;
/// the anchors then take implicit steps on the revealed payoff.
class OptOppmState {
 public:
  OptOppmState(BoxDomain X, BoxDomain Y, OptOppmConfig cfg);

  const BoxDomain& X() const { return X_; }
  const BoxDomain& Y() const { return Y_; }
  const Vec& anchor_x() const { return anchor_x_; }
  const Vec& anchor_y() const { return anchor_y_; }
  double eta() const;
  double gamma() const;
  double lambda() const { return lambda_; }
  double mu() const { return mu_; }

  OptOppmDecision decide(const PayoffPtr& h) const;
  OptOppmStep update(const PayoffFunction& f, const PayoffFunction& h, const OptOppmDecision& d);

 private:
  BoxDomain X_;
  BoxDomain Y_;
  OptOppmConfig cfg_;
  double lambda_;
  double mu_;
  double L_Bphi_;
  double L_Bpsi_;
  Vec anchor_x_;
  Vec anchor_y_;
  double sum_x_ = 0.0;
  double sum_y_ = 0.0;
};

}  // namespace occo
