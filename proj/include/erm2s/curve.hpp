#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "erm2s/errors.hpp"

namespace erm2s {

// Single tolerance shared by every curve predicate (discrete concavity, tie
// detection, zero tests). Loose enough to absorb MILP solver noise.
inline constexpr double kCurveTol = 1e-12;

// Concave, non-negative, piecewise-linear revenue curve on [0,1], given by
// strictly increasing knots (first 0, last 1) and per-knot values.
//
// Curves are immutable after validation; every transformation returns a new
// curve, so instances can be shared freely across threads.
class RevenueCurve {
 public:
  // Validates knot ordering, non-negativity and discrete concavity:
  //   v[i]*(k[i+1]-k[i-1]) >= v[i+1]*(k[i]-k[i-1]) + v[i-1]*(k[i+1]-k[i])
  // for every interior knot, up to kCurveTol.
  // Throws BadKnots, NegativeValue or ConcavityViolation.
  static RevenueCurve validate(std::vector<double> knots,
                               std::vector<double> values);

  const std::vector<double>& knots() const { return knots_; }
  const std::vector<double>& values() const { return values_; }
  int num_knots() const { return static_cast<int>(knots_.size()); }
  int num_pieces() const { return num_knots() - 1; }

  // Largest knot value. For a piecewise-linear concave curve this is the
  // global maximum.
  double max_value() const;

  // Index p of the piece [knots[p], knots[p+1]] containing q (right-closed at
  // q=1). Pre: 0 <= q <= 1.
  int piece_index(double q) const;

  double operator()(double q) const;

  bool operator==(const RevenueCurve& o) const {
    return knots_ == o.knots_ && values_ == o.values_;
  }

 private:
  RevenueCurve(std::vector<double> knots, std::vector<double> values)
      : knots_(std::move(knots)), values_(std::move(values)) {}
  std::vector<double> knots_;
  std::vector<double> values_;
};

// Linear interpolation between the bracketing knots; exact at knots.
// Pre: q in [0,1].
double interpolate(const RevenueCurve& curve, double q);

// Price inverse F^-1(q) = R(q)/(1-q) for q < 1. At q = 1 returns the left
// limit along the final linear piece: finite when R(1) = 0, +infinity
// otherwise. Never divides at q = 1.
double price_inverse(const RevenueCurve& curve, double q);

struct HullResult {
  RevenueCurve curve;
  // Set when the input was degenerate (all values zero, or colliding points
  // at the same quantile); the hull is still well defined.
  bool degenerate = false;
};

// Upper concave hull of a point set in [0,1] x [0,inf). The hull dominates
// every input point, every hull knot is an input point, and knots on the
// interior of a hull edge are dropped. Pre: the set covers quantiles 0 and 1.
HullResult concave_hull_curve(const std::vector<std::pair<double, double>>& points);

// Curve with uniform knots i/n agreeing with `sampler` at the knots. Throws
// ConcavityViolation if the sampled values are not discretely concave.
RevenueCurve piecewise_approximation(const std::function<double(double)>& sampler,
                                     int n);

// Sampler for interpolate(curve, q) + eps*q*(1-q); strictly concave for
// eps > 0.
std::function<double(double)> strictify(const RevenueCurve& curve, double eps);

struct Renormalized {
  RevenueCurve curve;
  double scale = 1.0;  // the max value that was divided out
};

// Divides all values by the maximum value. Throws ZeroCurve when the maximum
// is not positive.
Renormalized renormalize(const RevenueCurve& curve);

// JSON interchange: {"knots":[...],"values":[...]} with plain decimal
// doubles. The reader rejects NaN/Inf and unsorted knots.
RevenueCurve curve_from_json_text(const std::string& text);
std::string curve_to_json_text(const RevenueCurve& curve);
RevenueCurve load_curve(const std::string& path);
void save_curve(const RevenueCurve& curve, const std::string& path);

}  // namespace erm2s
