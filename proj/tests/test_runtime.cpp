// Copyright 2026 The OCCO Authors
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "occo/error.hpp"
#include "occo/runtime.hpp"

using namespace occo;

namespace {

const BoxDomain kUnit = BoxDomain::cube(1, -1.0, 1.0);

PlayerConfig config_for(Algorithm a, std::size_t predictors = 2, long t0 = 8) {
  PlayerConfig cfg;
  cfg.algorithm = a;
  cfg.predictors = predictors;
  cfg.initial_horizon = t0;
  return cfg;
}

}  // namespace

TEST_CASE("algorithm names") {
  for (Algorithm a : {Algorithm::kModular, Algorithm::kAderPair, Algorithm::kOptOppm}) {
    CHECK(parse_algorithm(to_string(a)) == a);
  }
  CHECK(to_string(Algorithm::kAderPair) == "ader-pair");
  CHECK_THROWS_AS(parse_algorithm("zhang"), ConfigError);
}

TEST_CASE("doubling schedule") {
  EpochSchedule s(2);
  std::vector<long> starts;
  for (long t = 1; t <= 30; ++t) {
    if (s.advance()) starts.push_back(t);
  }
  CHECK(starts == std::vector<long>{1, 3, 7, 15});
  CHECK(s.index() == 3);
  CHECK(s.horizon() == 16);
  CHECK(s.used() == 16);
  CHECK_THROWS_AS(EpochSchedule(0), InputError);
}

TEST_CASE("duality gap series") {
  const std::vector<PayoffPtr> fs{make_quadratic(0.0, 0.0), make_quadratic(0.0, 0.0)};
  const std::vector<Vec> xs{{1.0}, {0.0}}, ys{{0.0}, {0.0}}, us{{0.0}, {0.0}}, vs{{0.0}, {1.0}};
  const GapSeries g = ddgap(fs, xs, ys, us, vs, kUnit, kUnit);
  CHECK(g.instant[0] == doctest::Approx(0.5));
  CHECK(g.instant[1] == doctest::Approx(-0.5));
  CHECK(g.cumulative[1] == doctest::Approx(0.0));
  CHECK(g.average[0] == doctest::Approx(0.5));
  CHECK(g.average[1] == doctest::Approx(0.0));
  const std::vector<Vec> bad{{2.0}, {0.0}};
  CHECK_THROWS_AS(ddgap(fs, xs, ys, bad, vs, kUnit, kUnit), InputError);
  CHECK_THROWS_AS(ddgap(fs, xs, ys, us, std::vector<Vec>{{0.0}}, kUnit, kUnit), InputError);
}

TEST_CASE("gap decomposition sums to the per-round gap") {
  std::mt19937_64 rng(79);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> m(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const auto f = make_quadratic(u(rng), u(rng));
    const Vec xh{u(rng)}, yh{u(rng)}, xb{u(rng)}, yb{u(rng)}, uu{u(rng)}, vv{u(rng)};
    const double w = m(rng), om = m(rng);
    const Vec x{w * xh[0] + (1 - w) * xb[0]}, y{om * yh[0] + (1 - om) * yb[0]};
    const Matrix2 A = build_matrix(*f, xh, yh, xb, yb);
    const auto parts = gap_decomposition(*f, x, y, uu, vv, A, w, om);
    CHECK(std::abs(parts[0] + parts[1] + parts[2] - (f->value(x, vv) - f->value(uu, y))) <= 1e-12);
  }
}

TEST_CASE("two-phase protocol is enforced") {
  for (Algorithm a : {Algorithm::kModular, Algorithm::kAderPair, Algorithm::kOptOppm}) {
    auto p = make_player(config_for(a));
    const std::vector<PayoffPtr> bank{make_zero(), make_zero()};
    CHECK_THROWS_AS(p->observe(make_zero()), ProtocolError);
    p->decide(bank);
    CHECK_THROWS_AS(p->decide(bank), ProtocolError);
    const RoundDiagnostics d = p->observe(make_quadratic(0.1, 0.1));
    CHECK(d.t == 1);
    CHECK(d.epoch_started);
    CHECK(p->rounds() == 1);
    CHECK_THROWS_AS(p->observe(make_zero()), ProtocolError);
  }
  CHECK_THROWS_AS(make_player(config_for(Algorithm::kModular, 0)), ConfigError);
  CHECK_THROWS_AS(make_player(config_for(Algorithm::kModular, 4, 2)), ConfigError);
  auto m = make_player(config_for(Algorithm::kModular, 2));
  const std::vector<PayoffPtr> one{make_zero()};
  CHECK_THROWS_AS(m->decide(one), InputError);
}

TEST_CASE("diagnostics carry the fields of each algorithm") {
  const std::vector<PayoffPtr> bank{make_zero(), make_zero()};
  auto m = make_player(config_for(Algorithm::kModular));
  m->decide(bank);
  const RoundDiagnostics dm = m->observe(make_quadratic(0.2, 0.3));
  CHECK(dm.w.has_value());
  CHECK(dm.omega.has_value());
  CHECK(dm.xi.size() == 2);
  CHECK(dm.zeta.has_value());
  CHECK(dm.delta_x.has_value());
  CHECK(dm.Delta_y.has_value());
  CHECK(dm.aggregator_residual.has_value());
  CHECK_FALSE(dm.nu_x.has_value());

  auto a = make_player(config_for(Algorithm::kAderPair));
  const Strategy s = a->decide(bank);
  const RoundDiagnostics da = a->observe(make_quadratic(0.2, 0.3));
  CHECK(da.x == s.x);
  CHECK(da.x_bar == s.x);
  CHECK_FALSE(da.w.has_value());
  CHECK_FALSE(da.eta.has_value());
  CHECK(da.xi.empty());

  auto o = make_player(config_for(Algorithm::kOptOppm));
  o->decide(bank);
  const RoundDiagnostics dopt = o->observe(make_quadratic(0.2, 0.3));
  CHECK(dopt.eta.has_value());
  CHECK(dopt.nu_x.has_value());
  CHECK_FALSE(dopt.w.has_value());
}

TEST_CASE("modular sub-states restart at every epoch") {
  ModularAlgorithm m(config_for(Algorithm::kModular, 2, 4));
  std::vector<PayoffPtr> bank{make_quadratic(0.5, 0.5), make_quadratic(-0.5, -0.5)};
  const PayoffPtr f = make_quadratic(0.5, 0.5);
  for (long t = 1; t <= 12; ++t) {
    m.decide(bank);
    const RoundDiagnostics d = m.observe(f);
    const bool boundary = t == 1 || t == 5;
    CHECK(d.epoch_started == boundary);
    if (boundary) {
      CHECK(d.xi == Vec{0.5, 0.5});
    }
  }
  CHECK(m.schedule().index() == 1);
  CHECK(m.aggregator().weights()[0] > 0.5);
  CHECK(m.integration().horizon() == 8);
  CHECK(m.ader_x().horizon() == 8);
}

TEST_CASE("modular player with an exact predictor reaches the saddle") {
  ModularAlgorithm m(config_for(Algorithm::kModular, 1, 256));
  const PayoffPtr f = make_quadratic(0.3, -0.6);
  const std::vector<PayoffPtr> bank{f};
  double gap = 0.0;
  for (int t = 0; t < 200; ++t) {
    const Strategy s = m.decide(bank);
    m.observe(f);
    // Best-response gap of the committed pair.
    const double x = s.x[0], y = s.y[0];
    const double u = std::clamp(0.3 - (y + 0.6), -1.0, 1.0);
    const double v = std::clamp(-0.6 + (x - 0.3), -1.0, 1.0);
    gap = f->at(x, v) - f->at(u, y);
  }
  CHECK(gap >= -1e-12);
  CHECK(gap <= 1e-6);
}
