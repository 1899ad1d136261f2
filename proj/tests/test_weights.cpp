#include <doctest.h>

#include "oracles.hpp"
#include "potts/errors.hpp"
#include "potts/rng.hpp"
#include "potts/weights.hpp"

using namespace potts;

TEST_CASE("three-state weights at special points") {
  CHECK(std::abs(potts3_a(0.0) - 1.0) < 1e-15);
  CHECK(std::abs(potts3_b(0.0)) < 1e-15);
  CHECK(std::abs(potts3_a(kPi / 6)) < 1e-15);
  CHECK(std::abs(potts3_b(kPi / 6) - 1.0) < 1e-15);
  CHECK(std::abs(potts3_a(kPi / 12) - 0.36602540378443865) < 1e-15);
  CHECK(std::abs(potts3_g(0.2) - std::sin(kPi / 6 + 0.2)) < 1e-15);
  CHECK(std::abs(potts3_g1(0.2) - std::sin(kPi / 3 - 0.2)) < 1e-15);
}

TEST_CASE("three-state family layout") {
  const WeightFamily w = potts3_weights();
  CHECK(w.n == 3);
  REQUIRE(w.denominator_zeros.size() == 2);
  CHECK(std::abs(w.denominator_zeros[0] + kPi / 6) < 1e-15);
  CHECK(std::abs(w.denominator_zeros[1] - kPi / 3) < 1e-15);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      CHECK(std::abs(w.wh(a, b, 0.1) - oracle::potts_wh()(a, b, 0.1)) < 1e-15);
      CHECK(std::abs(w.wv(a, b, 0.1) - oracle::potts_wv()(a, b, 0.1)) < 1e-15);
    }
}

TEST_CASE("fz(3) coincides with the three-state weights") {
  const WeightFamily fz = fz_weights(3), p = potts3_weights();
  for (double x : {0.05, 0.11, 0.21})
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        CHECK(std::abs(fz.wh(a, b, x) - p.wh(a, b, x)) < 1e-12);
        CHECK(std::abs(fz.wv(a, b, x) - p.wv(a, b, x)) < 1e-12);
      }
}

TEST_CASE("fz product formula") {
  for (int n = 2; n <= 6; ++n) {
    const WeightFamily w = fz_weights(n);
    for (int a = 0; a < n; ++a) CHECK(w.wh(a, a, 0.123) == cplx(1.0));
  }
  const WeightFamily w4 = fz_weights(4);
  const double x = kPi / 8;
  const double expected = (std::sin(x) / std::sin(kPi / 4 - x)) * (std::sin(kPi / 4 + x) / std::sin(kPi / 2 - x));
  CHECK(std::abs(w4.wv(0, 2, x) - expected) < 1e-14);
  CHECK(std::abs(w4.wv(0, 2, x) - 1.0) < 1e-14);
  const double y = 0.07;
  const double wh3 = std::sin(kPi / 8 - y) / std::sin(kPi / 8 + y) * std::sin(3 * kPi / 8 - y) /
                     std::sin(3 * kPi / 8 + y) * std::sin(5 * kPi / 8 - y) / std::sin(5 * kPi / 8 + y);
  CHECK(std::abs(w4.wh(3, 0, y) - wh3) < 1e-14);
}

TEST_CASE("initial conditions") {
  CHECK(check_initial_conditions(potts3_weights()).max_deviation < 1e-14);
  CHECK(check_initial_conditions(potts3_weights()).passed);
  for (int n = 2; n <= 6; ++n) CHECK(check_initial_conditions(fz_weights(n)).passed);
  CHECK(check_initial_conditions(fz_weights(5)).max_deviation < 1e-14);
  const InitialConditionReport bad = check_initial_conditions(perturb_horizontal(potts3_weights(), 0, 1, 1e-4));
  CHECK_FALSE(bad.passed);
  CHECK(bad.max_deviation == doctest::Approx(1e-4).epsilon(1e-9));
}

TEST_CASE("Z(n) invariance and reflection symmetry") {
  CounterRng rng(11);
  for (int n = 3; n <= 5; ++n) {
    const WeightFamily w = fz_weights(n);
    for (int t = 0; t < 5; ++t) {
      const double x = rng.uniform(0.02, 0.3);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          CHECK(w.wh((a + 1) % n, (b + 1) % n, x) == w.wh(a, b, x));
          CHECK(w.wv((a + 1) % n, (b + 1) % n, x) == w.wv(a, b, x));
          CHECK(std::abs(w.wh(a, b, x) - w.wh(b, a, x)) < 1e-13);
          CHECK(std::abs(w.wv(a, b, x) - w.wv(b, a, x)) < 1e-13);
        }
    }
  }
}

TEST_CASE("singularity guard") {
  const WeightFamily w = potts3_weights();
  CHECK_THROWS_AS(w.wh(0, 1, -kPi / 6 + 1e-8), DomainError);
  CHECK_THROWS_AS(w.wv(0, 1, kPi / 3 - 1e-7), DomainError);
  CHECK_THROWS_AS(w.wv(0, 1, kPi / 3 + kPi), DomainError);
  CHECK_NOTHROW(w.wh(0, 1, -kPi / 6 + 1e-4));
  CHECK(w.distance_to_singularity(0.0) == doctest::Approx(kPi / 6));
  CHECK(w.distance_to_singularity(kPi / 3 + 0.01) == doctest::Approx(0.01));
}

TEST_CASE("complex spectral parameters are accepted") {
  const WeightFamily w = potts3_weights();
  const cplx x(0.1, 2.0);
  CHECK(std::abs(w.wh(0, 1, x) - oracle::a3(x)) < 1e-14);
  CHECK(std::abs(w.wv(0, 2, x) - oracle::b3(x)) < 1e-14);
}

TEST_CASE("analytic derivatives agree with finite differences") {
  for (const WeightFamily& w : {potts3_weights(), fz_weights(4), fz_weights(5)}) {
    for (double x : {0.0, 0.09, 0.2}) {
      for (int a = 0; a < w.n; ++a)
        for (int b = 0; b < w.n; ++b) {
          const double h = 1e-4;
          const cplx fh = (-w.wh(a, b, x + 2 * h) + 8.0 * w.wh(a, b, x + h) - 8.0 * w.wh(a, b, x - h) +
                           w.wh(a, b, x - 2 * h)) / (12 * h);
          const cplx fv = (-w.wv(a, b, x + 2 * h) + 8.0 * w.wv(a, b, x + h) - 8.0 * w.wv(a, b, x - h) +
                           w.wv(a, b, x - 2 * h)) / (12 * h);
          CHECK(std::abs(w.dwh(a, b, x) - fh) < 1e-9);
          CHECK(std::abs(w.dwv(a, b, x) - fv) < 1e-9);
        }
    }
  }
}
