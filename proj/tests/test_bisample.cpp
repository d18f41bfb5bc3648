#include "erm2s/bisample.hpp"

#include <cmath>

#include "doctest.h"
#include "testutil.hpp"

using namespace erm2s;

namespace {
RevenueCurve affine_down() { return RevenueCurve::validate({0, 1}, {1, 0}); }
RevenueCurve constant_one() { return RevenueCurve::validate({0, 1}, {1, 1}); }
RevenueCurve tent() { return RevenueCurve::validate({0, 0.5, 1}, {0, 1, 0}); }
RevenueCurve ramp() { return RevenueCurve::validate({0, 1}, {0, 1}); }

// Exact value of the bisample integral for R(q)=q, by hand:
//   2*Int_0^1 [x^2/(2-x) + x^2/2 - x^2/(2(2-x)^2)] dx = 12 ln 2 - 23/3.
const double kRampExact = 12.0 * std::log(2.0) - 23.0 / 3.0;
}  // namespace

TEST_CASE("classify_pair spec cases") {
  // unit point mass: price inverse is constant 1, so the lower sample wins
  auto c = affine_down();
  CHECK(classify_pair(c, 0.9, 0.1) == PairClass::LowerSample);
  CHECK(classify_pair(c, 0.5, 0.5) == PairClass::LowerSample);
  CHECK(classify_pair(c, 0.99, 0.0) == PairClass::LowerSample);

  auto one = constant_one();
  CHECK(classify_pair(one, 0.9, 0.5) == PairClass::HigherSample);  // .5 > .2
  CHECK(classify_pair(one, 0.6, 0.2) == PairClass::Tie);           // .8 == .8
  // x=1 with R(1)>0: cleared comparison is R(1)*(1-y) vs 0
  CHECK(classify_pair(one, 1.0, 0.5) == PairClass::HigherSample);
}

TEST_CASE("phi matches the posted price's revenue") {
  auto c = affine_down();
  // symmetric extension; the lower-sample branch pays the smaller quantile's
  // revenue (this is what makes the affine curve integrate to 2/3)
  CHECK(phi(c, 0.2, 0.7) == doctest::Approx(0.8));
  CHECK(phi(c, 0.7, 0.2) == doctest::Approx(0.8));
  auto one = constant_one();
  CHECK(phi(one, 0.33, 0.85) == doctest::Approx(1.0));
  CHECK(phi(tent(), 0.3, 0.3) == doctest::Approx(0.6));
}

TEST_CASE("phi is symmetric and bounded by the curve max") {
  for (int s = 0; s < 40; ++s) {
    auto c = testutil::random_hull_curve(4242, s);
    std::uint64_t ctr = 0;
    for (int i = 0; i < 200; ++i) {
      const double x = uniform01(555 + s, ctr++);
      const double y = uniform01(555 + s, ctr++);
      const double v = phi(c, x, y);
      CHECK(v == phi(c, y, x));
      CHECK(v >= 0.0);
      CHECK(v <= c.max_value() + 1e-12);
    }
  }
}

TEST_CASE("classification is invariant under positive scaling") {
  for (int s = 0; s < 30; ++s) {
    auto c = testutil::random_hull_curve(31337, s);
    std::vector<double> scaled = c.values();
    const double f = 0.125 + 7.0 * uniform01(90, s);
    for (double& v : scaled) v *= f;
    auto cs = RevenueCurve::validate(c.knots(), scaled);
    std::uint64_t ctr = 0;
    for (int i = 0; i < 300; ++i) {
      double x = uniform01(556 + s, ctr++), y = uniform01(556 + s, ctr++);
      if (x < y) std::swap(x, y);
      CHECK(classify_pair(c, x, y) == classify_pair(cs, x, y));
    }
  }
}

TEST_CASE("monotone classification in both arguments") {
  for (int s = 0; s < 50; ++s) {
    auto c = testutil::random_hull_curve(60601, s);
    std::uint64_t ctr = 0;
    for (int i = 0; i < 500; ++i) {
      double x = uniform01(777 + s, ctr++), y = uniform01(777 + s, ctr++);
      if (x < y) std::swap(x, y);
      const double xp = x + (1.0 - x) * uniform01(777 + s, ctr++);
      if (classify_pair(c, x, y) == PairClass::HigherSample)
        CHECK(classify_pair(c, xp, y) == PairClass::HigherSample);
      if (x > y) {
        const double yup = y + (x - y) * uniform01(777 + s, ctr++);
        if (classify_pair(c, x, y) == PairClass::LowerSample)
          CHECK(classify_pair(c, x, yup) == PairClass::LowerSample);
      }
    }
  }
}

TEST_CASE("enclosure: affine curve integrates to exactly 2/3") {
  auto r = erm_revenue_enclosure(affine_down(), 1e-6);
  CHECK(r.tolerance_reached);
  CHECK(r.value.width() <= 1e-6);
  CHECK(r.value.contains(2.0 / 3.0));
}

TEST_CASE("enclosure: constant curve integrates to exactly 1") {
  auto r = erm_revenue_enclosure(constant_one(), 1e-6);
  CHECK(r.value.contains(1.0));
  CHECK(r.value.width() <= 1e-6);
}

TEST_CASE("enclosure: ramp curve against the analytic value") {
  auto r = erm_revenue_enclosure(ramp(), 1e-6);
  CHECK(r.tolerance_reached);
  CHECK(r.value.contains(kRampExact));
  CHECK(r.value.width() <= 1e-6);
}

TEST_CASE("enclosure: uniform-[1,1+eps] style curve sits just above 2/3") {
  auto c = piecewise_approximation(
      [](double q) { return (1 - q) * (1 + 0.01 * q); }, 64);
  auto r = erm_revenue_enclosure(c, 1e-6);
  CHECK(r.value.lower > 2.0 / 3.0);
  CHECK(r.value.upper < 2.0 / 3.0 + 0.02);
}

TEST_CASE("enclosure halving tolerance never widens") {
  for (int s = 0; s < 10; ++s) {
    auto c = testutil::random_hull_curve(808, s);
    auto wide = erm_revenue_enclosure(c, 1e-3);
    auto tight = erm_revenue_enclosure(c, 5e-4);
    CHECK(tight.value.lower >= wide.value.lower - 1e-15);
    CHECK(tight.value.upper <= wide.value.upper + 1e-15);
  }
}

TEST_CASE("MC oracle: deterministic, exact on constants, agrees with enclosure") {
  auto one = constant_one();
  auto m = erm_revenue_mc(one, 1000, 7);
  CHECK(m.estimate == 1.0);
  CHECK(m.std_error == 0.0);

  auto m1 = erm_revenue_mc(affine_down(), 200000, 42);
  auto m2 = erm_revenue_mc(affine_down(), 200000, 42);
  CHECK(m1.estimate == m2.estimate);
  CHECK(std::abs(m1.estimate - 2.0 / 3.0) <= 4 * m1.std_error);

  for (int s = 0; s < 12; ++s) {
    auto c = testutil::random_hull_curve(919, s);
    auto enc = erm_revenue_enclosure(c, 1e-6);
    auto mc = erm_revenue_mc(c, 100000, 1000 + s);
    CHECK(mc.estimate >= enc.value.lower - 4 * mc.std_error);
    CHECK(mc.estimate <= enc.value.upper + 4 * mc.std_error);
  }
}

TEST_CASE("ratio divides by the maximum") {
  CHECK(ratio(affine_down(), 1e-6).value.contains(2.0 / 3.0));
  CHECK(ratio(constant_one(), 1e-6).value.contains(1.0));
  // scale invariance of the ratio
  auto c = testutil::random_hull_curve(2718, 3);
  std::vector<double> scaled = c.values();
  for (double& v : scaled) v *= 0.35;
  auto cs = RevenueCurve::validate(c.knots(), scaled);
  auto r1 = ratio(c, 1e-7), r2 = ratio(cs, 1e-7);
  CHECK(r1.value.lower == doctest::Approx(r2.value.lower).epsilon(1e-9));
  CHECK(r1.value.upper == doctest::Approx(r2.value.upper).epsilon(1e-9));
  CHECK_THROWS_AS(ratio(RevenueCurve::validate({0, 1}, {0, 0}), 1e-6), ZeroCurve);
}

TEST_CASE("min_affine_integral closed forms") {
  // min(x, 1) over the unit square is E[x] = 1/2
  CHECK(min_affine_integral(0, 1, 0, 1, 0, 1, 1, 1) == doctest::Approx(0.5));
  // constant c on both axes
  CHECK(min_affine_integral(0, 1, 0.3, 0.3, 0, 1, 0.3, 0.3) == doctest::Approx(0.3));
  // disjoint ranges: min is always the smaller function
  CHECK(min_affine_integral(0, 1, 0.1, 0.2, 0, 1, 0.5, 0.9) ==
        doctest::Approx(0.15));
  // crossing case against a Monte Carlo quadrature oracle
  std::uint64_t ctr = 0;
  double acc = 0;
  const int N = 400000;
  for (int i = 0; i < N; ++i) {
    const double x = uniform01(5150, ctr++);
    const double y = uniform01(5150, ctr++);
    const double a = 0.2 + 0.8 * x;   // a on [0.2,1.0]
    const double b = 0.9 - 0.5 * y;   // b on [0.9,0.4]
    acc += std::min(a, b);
  }
  const double mc = acc / N;
  const double exact = min_affine_integral(0, 1, 0.2, 1.0, 0, 1, 0.9, 0.4);
  CHECK(exact == doctest::Approx(mc).epsilon(5e-3));
}
