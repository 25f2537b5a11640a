// Copyright 2026 The OCCO Authors
// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <random>

#include "doctest.h"
#include "occo/error.hpp"
#include "occo/geometry.hpp"
#include "oracles.hpp"

using namespace occo;

namespace {

Vec random_distribution(std::mt19937_64& rng, std::size_t d) {
  std::uniform_real_distribution<double> u(0.01, 1.0);
  Vec w(d);
  double s = 0.0;
  for (double& v : w) s += (v = u(rng));
  for (double& v : w) v /= s;
  return w;
}

Vec random_clipped_member(std::mt19937_64& rng, std::size_t d, double floor) {
  Vec w = random_distribution(rng, d);
  const double free = 1.0 - floor * static_cast<double>(d);
  for (double& v : w) v = floor + free * v;
  return w;
}

}  // namespace

TEST_CASE("project_box clamps coordinates") {
  const BoxDomain unit = BoxDomain::cube(1, -1.0, 1.0);
  CHECK(project_box(Vec{1.7}, unit) == Vec{1.0});
  CHECK(project_box(Vec{0.3}, unit) == Vec{0.3});
  CHECK(project_box(Vec{-2.0, 0.5, 3.0}, BoxDomain::cube(3, -1.0, 1.0)) == Vec{-1.0, 0.5, 1.0});
  CHECK_THROWS_AS(project_box(Vec{0.0, 0.0}, unit), InputError);
}

TEST_CASE("project_box is idempotent and nearest") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  const BoxDomain box({-1.0, 0.0, -0.5}, {1.0, 2.0, 0.5});
  for (int i = 0; i < 1000; ++i) {
    const Vec p{u(rng), u(rng), u(rng)};
    const Vec q = project_box(p, box);
    CHECK(project_box(q, box) == q);
    CHECK(box.contains(q));
    const Vec z{std::clamp(u(rng), -1.0, 1.0), std::clamp(u(rng), 0.0, 2.0), std::clamp(u(rng), -0.5, 0.5)};
    double dq = 0.0, dz = 0.0;
    for (int k = 0; k < 3; ++k) {
      dq += (p[k] - q[k]) * (p[k] - q[k]);
      dz += (p[k] - z[k]) * (p[k] - z[k]);
    }
    CHECK(dq <= dz + 1e-12);
  }
}

TEST_CASE("box domain basics") {
  const BoxDomain box({-1.0, 0.0}, {1.0, 2.0});
  CHECK(box.diameter() == doctest::Approx(std::sqrt(8.0)));
  CHECK(box.center() == Vec{0.0, 1.0});
  CHECK_THROWS_AS(BoxDomain({1.0}, {0.0}), InputError);
  CHECK_THROWS_AS(BoxDomain({0.0}, {0.0, 1.0}), InputError);
}

TEST_CASE("bregman divergences") {
  CHECK(bregman(Regularizer::kEuclidean, Vec{0.5}, MirrorPoint{{0.5}}) == 0.0);
  CHECK(bregman(Regularizer::kEuclidean, Vec{1.0}, MirrorPoint{{0.0}}) == doctest::Approx(0.5));
  const double expected = 0.5 * std::log(2.0) + 0.5 * std::log(2.0 / 3.0);
  CHECK(bregman(Regularizer::kNegativeEntropy, Vec{0.5, 0.5}, MirrorPoint{{0.25, 0.75}, Regularizer::kNegativeEntropy}) ==
        doctest::Approx(expected).epsilon(1e-12));
  CHECK(expected == doctest::Approx(0.143841).epsilon(1e-6));
  CHECK_THROWS_AS(
      bregman(Regularizer::kNegativeEntropy, Vec{0.5, 0.5}, MirrorPoint{{0.0, 1.0}, Regularizer::kNegativeEntropy}),
      DomainError);
}

TEST_CASE("bregman is nonnegative and vanishes only at the anchor") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    const Vec a = random_distribution(rng, 3);
    const Vec b = random_distribution(rng, 3);
    CHECK(bregman(Regularizer::kNegativeEntropy, a, MirrorPoint{b, Regularizer::kNegativeEntropy}) > 0.0);
    CHECK(bregman(Regularizer::kNegativeEntropy, a, MirrorPoint{a, Regularizer::kNegativeEntropy}) ==
          doctest::Approx(0.0).epsilon(1e-15));
    CHECK(bregman(Regularizer::kEuclidean, a, MirrorPoint{b}) > 0.0);
  }
}

TEST_CASE("kl divergence values") {
  CHECK(kl_divergence(Vec{0.5, 0.5}, Vec{0.5, 0.5}) == 0.0);
  CHECK(kl_divergence(Vec{1.0, 0.0}, Vec{0.5, 0.5}) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  const double v = kl_divergence(Vec{0.25, 0.75}, Vec{0.75, 0.25});
  CHECK(v == doctest::Approx(static_cast<double>(oracle::kl({0.25, 0.75}, {0.75, 0.25}))).epsilon(1e-14));
  CHECK(v == doctest::Approx(0.549306).epsilon(1e-6));
  CHECK_THROWS_AS(kl_divergence(Vec{0.5, 0.5}, Vec{1.0, 0.0}), DomainError);
}

TEST_CASE("kl divergence dominates half the squared l1 distance") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t d = 2 + static_cast<std::size_t>(i % 4);
    const Vec a = random_distribution(rng, d);
    const Vec b = random_distribution(rng, d);
    double l1 = 0.0;
    for (std::size_t k = 0; k < d; ++k) l1 += std::abs(a[k] - b[k]);
    CHECK(kl_divergence(a, b) >= 0.5 * l1 * l1 - 1e-12);
  }
}

TEST_CASE("clipped simplex kl projection examples") {
  CHECK(project_clipped_simplex_kl(Vec{0.5, 0.5}, ClippedSimplex(2, 0.5)) == Vec{0.5, 0.5});
  const Vec p = project_clipped_simplex_kl(Vec{0.9, 0.1}, ClippedSimplex(2, 0.5));
  CHECK(p[0] == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(p[1] == doctest::Approx(0.25).epsilon(1e-12));
  const Vec o2 = oracle::clipped_kl_projection({0.9, 0.1}, 0.25);
  CHECK(p[0] == doctest::Approx(o2[0]).epsilon(1e-6));
  const Vec q = project_clipped_simplex_kl(Vec{8.0, 1.0, 1.0}, ClippedSimplex(3, 0.3));
  CHECK(q[0] == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(q[1] == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(q[2] == doctest::Approx(0.1).epsilon(1e-12));
  const Vec o3 = oracle::clipped_kl_projection({8.0, 1.0, 1.0}, 0.1);
  for (int k = 0; k < 3; ++k) CHECK(q[k] == doctest::Approx(o3[k]).epsilon(1e-6));
  CHECK_THROWS_AS(project_clipped_simplex_kl(Vec{1.0, 0.0}, ClippedSimplex(2, 0.5)), DomainError);
  CHECK_THROWS_AS(ClippedSimplex(2, 1.5), InputError);
}

TEST_CASE("clipped simplex kl projection is feasible, idempotent and optimal on samples") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(1e-3, 10.0);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t d = 2 + static_cast<std::size_t>(trial % 3);
    const double alpha = 0.1 + 0.8 * static_cast<double>(trial) / 50.0;
    const ClippedSimplex cs(d, alpha);
    Vec q(d);
    for (double& v : q) v = u(rng);
    const Vec p = project_clipped_simplex_kl(q, cs);
    double s = 0.0;
    for (double v : p) {
      CHECK(v >= cs.floor() - 1e-12);
      s += v;
    }
    CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
    const Vec again = project_clipped_simplex_kl(p, cs);
    for (std::size_t k = 0; k < d; ++k) CHECK(again[k] == doctest::Approx(p[k]).epsilon(1e-12));
    double qs = 0.0;
    for (double v : q) qs += v;
    Vec qn(q);
    for (double& v : qn) v /= qs;
    const double best = kl_divergence(p, qn);
    for (int i = 0; i < 1000; ++i) {
      const Vec z = random_clipped_member(rng, d, cs.floor());
      CHECK(best <= kl_divergence(z, qn) + 1e-12);
    }
    if (d <= 3) {
      const Vec o = oracle::clipped_kl_projection(q, cs.floor());
      for (std::size_t k = 0; k < d; ++k) CHECK(p[k] == doctest::Approx(o[k]).epsilon(1e-6));
    }
  }
}

TEST_CASE("hedge step examples") {
  const ClippedSimplex cs(2, 0.5);
  const Vec w{0.5, 0.5};
  CHECK(hedge_step(w, Vec{0.0, 0.0}, 1.0, cs) == w);
  const Vec a = hedge_step(w, Vec{1.0, 0.0}, std::log(2.0), cs);
  CHECK(a[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(a[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  const Vec b = hedge_step(w, Vec{10.0, 0.0}, 1.0, cs);
  CHECK(b[0] == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(b[1] == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("hedge step is invariant to loss shifts") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 500; ++i) {
    const std::size_t d = 2 + static_cast<std::size_t>(i % 3);
    const ClippedSimplex cs(d, 0.2);
    const Vec w = random_clipped_member(rng, d, cs.floor());
    Vec loss(d), shifted(d);
    const double c = 5.0 * u(rng);
    for (std::size_t k = 0; k < d; ++k) {
      loss[k] = u(rng);
      shifted[k] = loss[k] + c;
    }
    const Vec a = hedge_step(w, loss, 0.7, cs);
    const Vec b = hedge_step(w, shifted, 0.7, cs);
    for (std::size_t k = 0; k < d; ++k) CHECK(a[k] == doctest::Approx(b[k]).epsilon(1e-12));
  }
}
