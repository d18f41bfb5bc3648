#pragma once

#include <cstdint>

#include "erm2s/curve.hpp"

namespace erm2s {

// Outcome of comparing two sample quantiles x >= y under the empirical rule:
// the seller posts the higher sample (w=1), the lower sample (w=0), or is
// indifferent because both prices yield equal revenue (tie).
enum class PairClass { HigherSample, LowerSample, Tie };

// Classifies the pair by the cleared-denominator comparison
//   R(x)*(1-y)  vs  2*R(y)*(1-x),
// which stays finite at x=1 or y=1. Ties are detected relative to the larger
// side so classification is invariant under positive scaling of the curve.
// The diagonal x == y is always LowerSample (both prices coincide).
// Pre: x >= y, both in [0,1].
PairClass classify_pair(const RevenueCurve& curve, double x, double y);

// Bisample revenue: revenue of the price the empirical rule posts, extended
// symmetrically to unordered pairs. Ties pay min{R(x),R(y)} (the worst case
// for the seller).
double phi(const RevenueCurve& curve, double x, double y);

struct Enclosure {
  double lower = 0.0;
  double upper = 0.0;
  double width() const { return upper - lower; }
  double midpoint() const { return 0.5 * (lower + upper); }
  bool contains(double v) const { return lower <= v && v <= upper; }
};

struct IntegralResult {
  Enclosure value;
  bool tolerance_reached = true;  // false when the depth cap stopped refinement
  std::uint64_t cells = 0;        // number of cells examined
};

// Certified bracket of the expected bisample revenue
//   integral over [0,1]^2 of phi.
// The unit square is first cut along the curve knots in both coordinates, so
// every cell sees one affine piece per axis; the sign pattern of the
// cleared-denominator comparison at the cell corners then decides whether the
// cell integrates in closed form or gets bracketed and subdivided. Refinement
// always splits the widest bracket first and stops once the total width is
// at most `tol` or every remaining cell has reached the depth cap (40); in
// the latter case the achieved enclosure is returned with
// tolerance_reached=false.
IntegralResult erm_revenue_enclosure(const RevenueCurve& curve, double tol);

struct McEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
};

// Unbiased Monte Carlo estimate of the same integral from n i.i.d. uniform
// quantile pairs. Sampling uniform quantiles is inverse-transform sampling of
// the underlying valuation distribution, so this is also the price-space
// expected revenue for continuous distributions. The stream is a
// counter-based generator addressed by (seed, sample index): identical
// arguments reproduce the estimate bit-for-bit.
McEstimate erm_revenue_mc(const RevenueCurve& curve, std::uint64_t n_samples,
                          std::uint64_t seed);

// Enclosure of the expected-revenue ratio: erm_revenue_enclosure divided by
// the curve maximum (exact for piecewise-linear curves). Throws ZeroCurve.
IntegralResult ratio(const RevenueCurve& curve, double tol);

// Exact integral over [x0,x1] x [y0,y1] of min(a(x), b(y)) for affine a, b
// given by their endpoint values. The rectangle is cut along the line
// a(x) = b(y); each side integrates an affine function (area times value at
// the centroid).
double min_affine_integral(double x0, double x1, double a0, double a1,
                           double y0, double y1, double b0, double b1);

// Uniform double in [0,1) addressed by (seed, index); the generator behind
// erm_revenue_mc, exposed for reuse by tests and sweeps.
double uniform01(std::uint64_t seed, std::uint64_t index);

}  // namespace erm2s
