// Copyright 2026 The OCCO Authors
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <functional>

#include "doctest.h"
#include "occo/ader.hpp"
#include "occo/error.hpp"

using namespace occo;

namespace {

const BoxDomain kUnit = BoxDomain::cube(1, -1.0, 1.0);

// Cumulative loss of the prediction on (x - target_t)^2 over T rounds.
double run_tracking(long T, const std::function<double(long)>& target) {
  AderState s(kUnit, 4.0, T);
  double loss = 0.0;
  for (long t = 1; t <= T; ++t) {
    const double c = target(t);
    const double x = s.predict()[0];
    CHECK(kUnit.contains(s.predict()));
    loss += (x - c) * (x - c);
    s.update_with_gradient(Vec{2.0 * (x - c)});
  }
  return loss;
}

}  // namespace

TEST_CASE("construction") {
  const AderState s(kUnit, 1.0, 1);
  CHECK(s.experts().size() == 2);
  CHECK(s.meta_weights()[0] == doctest::Approx(0.75));
  CHECK(s.meta_weights()[1] == doctest::Approx(0.25));
  for (const auto& e : s.experts()) CHECK(e.iterate == Vec{0.0});
  for (long T : {1L, 2L, 10L, 64L, 1000L, 100000L}) {
    const AderState a(kUnit, 4.0, T);
    CHECK(a.experts().size() == ader_expert_count(T));
    CHECK(a.experts().size() ==
          static_cast<std::size_t>(std::ceil(0.5 * std::log2(1.0 + 2.0 * static_cast<double>(T)))) + 1);
    double sum = 0.0;
    for (double w : a.meta_weights()) sum += w;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
    for (std::size_t i = 1; i < a.experts().size(); ++i) {
      CHECK(a.experts()[i].step_size == doctest::Approx(2.0 * a.experts()[i - 1].step_size).epsilon(1e-15));
    }
  }
  CHECK_THROWS_AS(AderState(kUnit, 1.0, 0), InputError);
  CHECK_THROWS_AS(AderState(kUnit, 0.0, 10), InputError);
}

TEST_CASE("prediction is the weighted average of iterates") {
  const AderState one(kUnit, {{0.5, {0.4}}}, {1.0}, 1.0, 10);
  CHECK(one.predict() == Vec{0.4});
  const AderState two(kUnit, {{0.5, {-1.0}}, {1.0, {1.0}}}, {0.5, 0.5}, 1.0, 10);
  CHECK(two.predict()[0] == doctest::Approx(0.0));
  const AderState three(kUnit, {{0.5, {0.2}}, {1.0, {0.6}}}, {0.25, 0.75}, 1.0, 10);
  CHECK(three.predict()[0] == doctest::Approx(0.5));
}

TEST_CASE("update steps") {
  AderState s(kUnit, 4.0, 100);
  const AderState before = s;
  s.update_with_gradient(Vec{0.0});
  for (std::size_t i = 0; i < s.experts().size(); ++i) {
    CHECK(s.experts()[i].iterate == before.experts()[i].iterate);
    CHECK(s.meta_weights()[i] == before.meta_weights()[i]);
  }
  AderState one(kUnit, {{0.5, {0.0}}}, {1.0}, 1.0, 10);
  one.update_with_gradient(Vec{1.0});
  CHECK(one.experts()[0].iterate[0] == doctest::Approx(-0.5));
  AderState clamp(kUnit, {{0.5, {0.9}}}, {1.0}, 1.0, 10);
  clamp.update_with_gradient(Vec{3.0});
  CHECK(clamp.experts()[0].iterate[0] == doctest::Approx(-0.6));
  AderState big(kUnit, {{0.5, {0.9}}}, {1.0}, 1.0, 10);
  big.update_with_gradient(Vec{-3.0});
  CHECK(big.experts()[0].iterate[0] == 1.0);
  CHECK_THROWS_AS(big.update_with_gradient(Vec{1.0, 2.0}), InputError);
}

TEST_CASE("meta weights favor experts with smaller linearized loss") {
  AderState s(kUnit, {{0.5, {-0.5}}, {0.5, {0.5}}}, {0.5, 0.5}, 1.0, 10);
  s.update_with_gradient(Vec{1.0});
  CHECK(s.meta_weights()[0] > s.meta_weights()[1]);
  CHECK(s.meta_weights()[0] / s.meta_weights()[1] == doctest::Approx(std::exp(1.0)));
}

TEST_CASE("static regret is of order sqrt(T)") {
  const long T = 10000;
  AderState s(kUnit, 2.6, T);
  double regret = 0.0;
  for (long t = 1; t <= T; ++t) {
    const double x = s.predict()[0];
    regret += (x - 0.3) * (x - 0.3);
    s.update_with_gradient(Vec{2.0 * (x - 0.3)});
  }
  CHECK(regret <= 5.0 * std::sqrt(static_cast<double>(T)));
}

TEST_CASE("dynamic regret stays sublinear under switching targets") {
  auto switching = [](long T) {
    return run_tracking(T, [T](long t) {
      static const double targets[6] = {0.3, -0.6, 0.8, -0.2, 0.5, -0.9};
      return targets[std::min<long>(5, (t - 1) * 6 / T)];
    });
  };
  const double small = switching(1000) / 1000.0;
  const double large = switching(10000) / 10000.0;
  CHECK(large < small);
  CHECK(large < 0.05);
}
