#include "erm2s/curve.hpp"

#include <cmath>

#include "doctest.h"
#include "testutil.hpp"

using namespace erm2s;

namespace {
RevenueCurve tent() { return RevenueCurve::validate({0, 0.5, 1}, {0, 1, 0}); }
RevenueCurve affine_down() { return RevenueCurve::validate({0, 1}, {1, 0}); }
}  // namespace

TEST_CASE("validate accepts zero curve and tent") {
  auto zero = RevenueCurve::validate({0, 1}, {0, 0});
  CHECK(zero.max_value() == 0.0);
  CHECK(tent().max_value() == 1.0);
}

TEST_CASE("validate rejects a convex triple with the violating index") {
  // 0.2*1 >= 1*0.5 + 0*0.5 fails at the middle knot
  try {
    RevenueCurve::validate({0, 0.5, 1}, {0, 0.2, 1});
    FAIL("expected ConcavityViolation");
  } catch (const ConcavityViolation& e) {
    CHECK(e.index == 1);
  }
}

TEST_CASE("validate rejects malformed inputs") {
  CHECK_THROWS_AS(RevenueCurve::validate({0, 0.5}, {0, 0}), BadKnots);
  CHECK_THROWS_AS(RevenueCurve::validate({0, 0.5, 0.5, 1}, {0, 1, 1, 0}), BadKnots);
  CHECK_THROWS_AS(RevenueCurve::validate({0, 1}, {0, -0.5}), NegativeValue);
  CHECK_THROWS_AS(RevenueCurve::validate({0}, {0}), BadKnots);
  CHECK_THROWS_AS(RevenueCurve::validate({0, 1}, {0, NAN}), BadKnots);
}

TEST_CASE("interpolate is exact at knots and linear between") {
  CHECK(interpolate(tent(), 0.25) == doctest::Approx(0.5).epsilon(1e-15));
  auto c = RevenueCurve::validate({0, 0.5, 1}, {1, 0.5, 0});
  CHECK(interpolate(c, 0.75) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(interpolate(c, 0.5) == 0.5);
  CHECK(interpolate(c, 1.0) == 0.0);
}

TEST_CASE("price inverse: affine curve is a unit point mass") {
  auto c = affine_down();
  CHECK(price_inverse(c, 0.3) == doctest::Approx(1.0));
  CHECK(price_inverse(c, 0.0) == doctest::Approx(1.0));
  // q=1 takes the limit along the final piece, not 0/0
  CHECK(price_inverse(c, 1.0) == doctest::Approx(1.0));
}

TEST_CASE("price inverse: constant curve and positive endpoint") {
  auto c = RevenueCurve::validate({0, 1}, {1, 1});
  CHECK(price_inverse(c, 0.5) == doctest::Approx(2.0));
  CHECK(std::isinf(price_inverse(c, 1.0)));
}

TEST_CASE("price inverse is non-decreasing below 1, constant tail propagates") {
  for (int s = 0; s < 50; ++s) {
    auto c = testutil::random_hull_curve(7771, s);
    double prev = 0.0;
    for (int i = 0; i <= 200; ++i) {
      const double q = i / 200.0 * 0.999;
      const double f = price_inverse(c, q);
      CHECK(f >= prev - 1e-9 * std::max(1.0, prev));
      prev = f;
    }
  }
  // equal price inverse at y < x forces constancy on [y,1): exercised on a
  // curve whose final segment is affine toward (1,0)
  auto c = RevenueCurve::validate({0, 0.25, 1}, {0.5, 0.75, 0});
  const double f1 = price_inverse(c, 0.4), f2 = price_inverse(c, 0.7);
  CHECK(f1 == doctest::Approx(f2));
  CHECK(price_inverse(c, 0.9) == doctest::Approx(f1));
  CHECK(price_inverse(c, 1.0) == doctest::Approx(f1));
}

TEST_CASE("concave hull: tent, interior point kept iff above the chord") {
  auto h1 = concave_hull_curve({{0, 0}, {0.5, 1}, {1, 0}});
  CHECK(h1.curve == tent());
  CHECK_FALSE(h1.degenerate);

  auto kept = concave_hull_curve({{0, 0}, {0.5, 1}, {0.75, 0.9}, {1, 0}});
  CHECK(kept.curve.num_knots() == 4);  // 0.9 > chord value 0.5 at q=0.75
  auto dropped = concave_hull_curve({{0, 0}, {0.5, 1}, {0.75, 0.5}, {1, 0}});
  CHECK(dropped.curve == tent());  // exactly on the chord
  auto below = concave_hull_curve({{0, 0}, {0.5, 1}, {0.75, 0.2}, {1, 0}});
  CHECK(below.curve == tent());
}

TEST_CASE("concave hull: figure-shaped 4-point input keeps all knots") {
  auto h = concave_hull_curve({{0, 0}, {0.55, 1}, {0.975, 0.136}, {1, 0.0006}});
  CHECK(h.curve.num_knots() == 4);
  CHECK(h.curve.values()[1] == 1.0);
}

TEST_CASE("concave hull: degenerate all-zero input flags and yields zero curve") {
  auto h = concave_hull_curve({{0, 0}, {0.4, 0}, {1, 0}});
  CHECK(h.degenerate);
  CHECK(h.curve.max_value() == 0.0);
}

TEST_CASE("concave hull properties: valid, dominating, idempotent") {
  for (int s = 0; s < 200; ++s) {
    std::uint64_t ctr = 0;
    auto u = [&] { return uniform01(2024 + s, ctr++); };
    std::vector<std::pair<double, double>> pts{{0.0, u()}, {1.0, u()}};
    const int extra = 1 + static_cast<int>(u() * 8);
    for (int i = 0; i < extra; ++i) pts.emplace_back(u(), u());
    auto h = concave_hull_curve(pts);
    // dominates every input point
    for (auto [x, y] : pts) CHECK(interpolate(h.curve, x) >= y - 1e-12);
    // hull knots are input points
    for (int i = 0; i < h.curve.num_knots(); ++i) {
      bool found = false;
      for (auto [x, y] : pts)
        found = found || (x == h.curve.knots()[i] && y == h.curve.values()[i]);
      CHECK(found);
    }
    // idempotent
    std::vector<std::pair<double, double>> knot_pts;
    for (int i = 0; i < h.curve.num_knots(); ++i)
      knot_pts.emplace_back(h.curve.knots()[i], h.curve.values()[i]);
    auto h2 = concave_hull_curve(knot_pts);
    CHECK(h2.curve == h.curve);
  }
}

TEST_CASE("interpolate never exceeds the max knot value") {
  for (int s = 0; s < 50; ++s) {
    auto c = testutil::random_hull_curve(99, s);
    for (int i = 0; i <= 64; ++i)
      CHECK(interpolate(c, i / 64.0) <= c.max_value() + 1e-12);
  }
}

TEST_CASE("piecewise approximation hits the sampler at uniform knots") {
  auto para = piecewise_approximation([](double q) { return q * (1 - q); }, 2);
  CHECK(para.knots() == std::vector<double>{0, 0.5, 1});
  CHECK(para.values()[1] == doctest::Approx(0.25));

  auto aff = piecewise_approximation([](double q) { return 1 - q; }, 7);
  for (int i = 0; i <= 20; ++i)
    CHECK(interpolate(aff, i / 20.0) == doctest::Approx(1 - i / 20.0));

  auto mild = piecewise_approximation(
      [](double q) { return (1 - q) * (1 + 0.01 * q); }, 4);
  CHECK(mild.values()[1] == doctest::Approx(0.75 * 1.0025));

  CHECK_THROWS_AS(piecewise_approximation([](double q) { return q * q; }, 4),
                  ConcavityViolation);
}

TEST_CASE("strictify adds eps*q*(1-q)") {
  auto zero = RevenueCurve::validate({0, 1}, {0, 0});
  auto s = strictify(zero, 1.0);
  CHECK(s(0.3) == doctest::Approx(0.21));
  auto aff = affine_down();
  CHECK(strictify(aff, 0.1)(0.5) == doctest::Approx(0.525));
  // strictified sampler has strictly increasing price inverse at sampled knots
  auto c = piecewise_approximation(strictify(tent(), 0.05), 16);
  double prev = -1.0;
  for (int i = 0; i < 16; ++i) {
    const double q = i / 16.0;
    const double f = interpolate(c, q) / (1 - q);
    CHECK(f > prev);
    prev = f;
  }
}

TEST_CASE("renormalize divides by the max and reports it") {
  auto c = RevenueCurve::validate({0, 0.5, 1}, {0, 0.5, 0});
  auto r = renormalize(c);
  CHECK(r.scale == doctest::Approx(0.5));
  CHECK(r.curve.max_value() == doctest::Approx(1.0));
  auto r2 = renormalize(r.curve);
  CHECK(r2.scale == doctest::Approx(1.0));
  CHECK(r2.curve == r.curve);
  CHECK_THROWS_AS(renormalize(RevenueCurve::validate({0, 1}, {0, 0})), ZeroCurve);
  // sampling a curve whose peak falls between knots loses a little mass
  auto approx = piecewise_approximation(
      [t = tent()](double q) { return interpolate(t, q); }, 3);
  CHECK(renormalize(approx).scale < 1.0);
}

TEST_CASE("curve JSON round-trips and rejects junk") {
  auto c = testutil::random_hull_curve(5, 17);
  auto c2 = curve_from_json_text(curve_to_json_text(c));
  CHECK(c2 == c);
  CHECK_THROWS_AS(curve_from_json_text("{\"knots\":[0,1]}"), BadKnots);
  CHECK_THROWS_AS(curve_from_json_text("{\"knots\":[0,0.5],\"values\":[1,1]}"),
                  BadKnots);
  CHECK_THROWS_AS(
      curve_from_json_text("{\"knots\":[0,0.5,0.2,1],\"values\":[0,1,1,0]}"),
      BadKnots);
  CHECK_THROWS_AS(curve_from_json_text("not json"), BadKnots);
}
