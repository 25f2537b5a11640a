// Copyright 2026 The OCCO Authors
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "occo/aggregator.hpp"
#include "occo/error.hpp"
#include "oracles.hpp"

using namespace occo;

TEST_CASE("aggregator residual formula") {
  const Vec L{1.0, 0.0}, xi{0.5, 0.5}, nx{0.125, 0.875};
  const double expected = 0.375 - static_cast<double>(oracle::kl({0.125, 0.875}, {0.5, 0.5})) / std::log(8.0);
  CHECK(aggregator_residual(L, xi, nx, std::log(8.0)) == doctest::Approx(expected).epsilon(1e-14));
  CHECK(aggregator_residual(L, xi, xi, 1.0) == 0.0);
  CHECK_THROWS_AS(aggregator_residual(L, xi, Vec{1.0}, 1.0), InputError);
  CHECK_THROWS_AS(aggregator_residual(L, xi, nx, 0.0), InputError);
}

TEST_CASE("construction and aggregation") {
  const AggregatorState a(3, 16, 0.5);
  CHECK(a.weights() == Vec{1.0 / 3, 1.0 / 3, 1.0 / 3});
  CHECK(a.rate() == doctest::Approx(std::log(16.0) / 0.5));
  CHECK(a.simplex().floor() == doctest::Approx(1.0 / 16));
  CHECK_THROWS_AS(AggregatorState(0, 16), InputError);
  CHECK_THROWS_AS(AggregatorState(4, 3), InputError);
  CHECK_THROWS_AS(AggregatorState(2, 16, 0.0), InputError);

  const AggregatorState one(1, 8);
  const PayoffPtr p = make_quadratic(0.1, 0.2);
  const std::vector<PayoffPtr> single{p};
  CHECK(one.aggregate(single) == p);

  const std::vector<PayoffPtr> bank{make_quadratic(0.5, 0.0), make_quadratic(0.0, 0.5), make_zero()};
  const PayoffPtr h = a.aggregate(bank);
  for (double x : {-0.7, 0.0, 0.9}) {
    for (double y : {-1.0, 0.3}) {
      const double expect = (bank[0]->at(x, y) + bank[1]->at(x, y)) / 3.0;
      CHECK(h->at(x, y) == doctest::Approx(expect).epsilon(1e-14));
    }
  }
  CHECK_THROWS_AS(a.aggregate(single), InputError);
}

TEST_CASE("update example with clipping") {
  AggregatorState a(2, 8);
  const AggregatorStep s = a.update(Vec{1.0, 0.0});
  CHECK(s.rate == doctest::Approx(std::log(8.0)));
  CHECK(s.weights_next[0] == doctest::Approx(0.125).epsilon(1e-12));
  CHECK(s.weights_next[1] == doctest::Approx(0.875).epsilon(1e-12));
  CHECK(a.weights() == s.weights_next);
  CHECK(a.residual_sum() == doctest::Approx(s.residual_raw));
  CHECK(a.rate() < s.rate);
  CHECK_THROWS_AS(a.update(Vec{-1.0, 0.0}), InputError);
  CHECK_THROWS_AS(a.update(Vec{1.0}), InputError);
}

TEST_CASE("weights stay on the clipped simplex and rates decrease") {
  std::mt19937_64 rng(73);
  std::uniform_real_distribution<double> u(0.0, 3.0);
  for (std::size_t d = 1; d <= 4; ++d) {
    const long T = 200;
    AggregatorState a(d, T);
    double rate = a.rate();
    double total = 0.0;
    Vec cumulative(d, 0.0);
    for (long t = 0; t < T; ++t) {
      Vec loss(d);
      for (std::size_t k = 0; k < d; ++k) loss[k] = u(rng) * (k == 0 ? 0.3 : 1.0);
      for (std::size_t k = 0; k < d; ++k) {
        total += a.weights()[k] * loss[k];
        cumulative[k] += loss[k];
      }
      const AggregatorStep s = a.update(loss);
      CHECK(s.residual_raw >= -1e-12);
      double sum = 0.0;
      for (double w : a.weights()) {
        CHECK(w >= 1.0 / T - 1e-15);
        sum += w;
      }
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(a.rate() <= rate);
      rate = a.rate();
    }
    const double best = *std::min_element(cumulative.begin(), cumulative.end());
    CHECK(total - best <= 3.0 * std::sqrt(static_cast<double>(T) * std::log(static_cast<double>(T))) + 3.0 * d);
  }
}

TEST_CASE("a consistently better predictor takes the weight") {
  AggregatorState a(3, 100);
  for (int t = 0; t < 100; ++t) a.update(Vec{0.0, 1.0, 1.0});
  CHECK(a.weights()[0] == doctest::Approx(0.98).epsilon(1e-6));
  CHECK(a.weights()[1] == doctest::Approx(0.01).epsilon(1e-6));
}
