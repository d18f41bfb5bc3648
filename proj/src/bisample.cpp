#include "erm2s/bisample.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <queue>
#include <vector>

namespace erm2s {

PairClass classify_pair(const RevenueCurve& curve, double x, double y) {
  assert(x >= y && y >= 0.0 && x <= 1.0);
  if (x == y) return PairClass::LowerSample;
  const double lhs = interpolate(curve, x) * (1.0 - y);
  const double rhs = 2.0 * interpolate(curve, y) * (1.0 - x);
  const double scale = std::max(lhs, rhs);  // both non-negative
  if (std::abs(lhs - rhs) <= kCurveTol * scale) return PairClass::Tie;
  return lhs > rhs ? PairClass::HigherSample : PairClass::LowerSample;
}

double phi(const RevenueCurve& curve, double x, double y) {
  if (x < y) std::swap(x, y);
  switch (classify_pair(curve, x, y)) {
    case PairClass::HigherSample:
      return interpolate(curve, x);
    case PairClass::LowerSample:
      return interpolate(curve, y);
    case PairClass::Tie:
      return std::min(interpolate(curve, x), interpolate(curve, y));
  }
  return 0.0;  // unreachable
}

namespace {

// Cleared-denominator comparison a(x)*(1-y) - 2*b(y)*(1-x) at a point where
// the affine values are already known.
inline double gval(double x, double a, double y, double b) {
  return a * (1.0 - y) - 2.0 * b * (1.0 - x);
}

// A square cell [x0,x1]x[y0,y1] with y1 <= x0 (entirely in the ordered half
// x >= y), carrying the affine endpoint values of R on both edges, or a
// diagonal triangle {x0 <= y < x <= x1} when diag is set (then the y-edge
// fields mirror the x-edge).
struct Cell {
  double x0, x1, a0, a1;
  double y0, y1, b0, b1;
  int depth;
  bool diag;
  double lo, hi;  // bracket of the cell's phi integral
};

// Bracket (exact where possible) of the phi integral over an ordered cell.
// The comparison g is bilinear on the cell, so its extremes sit at the four
// corners: a uniform corner sign fixes phi almost everywhere. All four
// corners exactly zero means g vanishes identically and phi is the pointwise
// min of the two affine restrictions, which integrates in closed form.
void cell_bracket(Cell& c) {
  const double g00 = gval(c.x0, c.a0, c.y0, c.b0);
  const double g10 = gval(c.x1, c.a1, c.y0, c.b0);
  const double g01 = gval(c.x0, c.a0, c.y1, c.b1);
  const double g11 = gval(c.x1, c.a1, c.y1, c.b1);
  const double area = (c.x1 - c.x0) * (c.y1 - c.y0);
  if (g00 == 0.0 && g10 == 0.0 && g01 == 0.0 && g11 == 0.0) {
    const double v = min_affine_integral(c.x0, c.x1, c.a0, c.a1, c.y0, c.y1, c.b0, c.b1);
    c.lo = c.hi = v;
    return;
  }
  if (g00 >= 0.0 && g10 >= 0.0 && g01 >= 0.0 && g11 >= 0.0) {
    c.lo = c.hi = area * 0.5 * (c.a0 + c.a1);
    return;
  }
  if (g00 <= 0.0 && g10 <= 0.0 && g01 <= 0.0 && g11 <= 0.0) {
    c.lo = c.hi = area * 0.5 * (c.b0 + c.b1);
    return;
  }
  c.lo = area * std::min({c.a0, c.a1, c.b0, c.b1});
  c.hi = area * std::max({c.a0, c.a1, c.b0, c.b1});
}

// Bracket of the phi integral over the triangle {c0 <= y < x <= c1} with R
// affine on [c0,c1]. Along the diagonal g(x,x) = -a(x)(1-x) <= 0, so only the
// far corner can force refinement; when it is also <= 0 the whole triangle
// posts the lower sample and integrates exactly.
void tri_bracket(Cell& c) {
  const double g_far = gval(c.x1, c.a1, c.x0, c.a0);
  const double h = c.x1 - c.x0;
  if (g_far <= 0.0) {
    c.lo = c.hi = h * h * (2.0 * c.a0 + c.a1) / 6.0;
    return;
  }
  const double tri_area = 0.5 * h * h;
  c.lo = tri_area * std::min(c.a0, c.a1);
  c.hi = tri_area * std::max(c.a0, c.a1);
}

struct HeapEntry {
  double width;
  std::uint64_t seq;  // insertion order; FIFO among equal widths
  Cell cell;
};

struct WiderFirst {
  bool operator()(const HeapEntry& a, const HeapEntry& b) const {
    if (a.width != b.width) return a.width < b.width;
    return a.seq > b.seq;
  }
};

constexpr int kMaxDepth = 40;

}  // namespace

IntegralResult erm_revenue_enclosure(const RevenueCurve& curve, double tol) {
  assert(tol > 0.0);
  const auto& ks = curve.knots();
  const auto& vs = curve.values();
  const int n = curve.num_pieces();

  std::priority_queue<HeapEntry, std::vector<HeapEntry>, WiderFirst> open;
  double exact_sum = 0.0;  // cells with a closed-form value
  double open_lo = 0.0;    // bracket sums over the open set
  double open_width = 0.0;
  std::uint64_t examined = 0, seq = 0;

  auto submit = [&](Cell c) {
    (c.diag ? tri_bracket : cell_bracket)(c);
    ++examined;
    if (c.hi - c.lo <= 0.0) {
      exact_sum += c.lo;
      return;
    }
    open.push({c.hi - c.lo, seq++, c});
    open_lo += c.lo;
    open_width += c.hi - c.lo;
  };

  for (int i = 0; i < n; ++i) {
    submit({ks[i], ks[i + 1], vs[i], vs[i + 1], ks[i], ks[i + 1], vs[i], vs[i + 1],
            0, true, 0, 0});
    for (int j = 0; j < i; ++j)
      submit({ks[i], ks[i + 1], vs[i], vs[i + 1], ks[j], ks[j + 1], vs[j], vs[j + 1],
              0, false, 0, 0});
  }

  // The ordered half is doubled at the end, so the half-plane budget is tol/2.
  double frozen_lo = 0.0, frozen_width = 0.0;  // depth-capped cells
  while (!open.empty() && 2.0 * (open_width + frozen_width) > tol) {
    const Cell c = open.top().cell;
    open.pop();
    open_lo -= c.lo;
    open_width -= c.hi - c.lo;
    if (c.depth >= kMaxDepth) {
      frozen_lo += c.lo;
      frozen_width += c.hi - c.lo;
      continue;
    }
    const int d = c.depth + 1;
    if (c.diag) {
      const double m = 0.5 * (c.x0 + c.x1), vm = 0.5 * (c.a0 + c.a1);
      submit({c.x0, m, c.a0, vm, c.x0, m, c.a0, vm, d, true, 0, 0});
      submit({m, c.x1, vm, c.a1, m, c.x1, vm, c.a1, d, true, 0, 0});
      submit({m, c.x1, vm, c.a1, c.x0, m, c.a0, vm, d, false, 0, 0});
    } else {
      const double xm = 0.5 * (c.x0 + c.x1), am = 0.5 * (c.a0 + c.a1);
      const double ym = 0.5 * (c.y0 + c.y1), bm = 0.5 * (c.b0 + c.b1);
      submit({c.x0, xm, c.a0, am, c.y0, ym, c.b0, bm, d, false, 0, 0});
      submit({xm, c.x1, am, c.a1, c.y0, ym, c.b0, bm, d, false, 0, 0});
      submit({c.x0, xm, c.a0, am, ym, c.y1, bm, c.b1, d, false, 0, 0});
      submit({xm, c.x1, am, c.a1, ym, c.y1, bm, c.b1, d, false, 0, 0});
    }
  }

  const double lo = 2.0 * (exact_sum + open_lo + frozen_lo);
  const double width = 2.0 * (open_width + frozen_width);
  IntegralResult r;
  r.value = {lo, lo + width};
  r.tolerance_reached = width <= tol;
  r.cells = examined;
  return r;
}

namespace {
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}
}  // namespace

double uniform01(std::uint64_t seed, std::uint64_t index) {
  const std::uint64_t z =
      mix64(seed + 0x9e3779b97f4a7c15ULL * (index + 1) + 0x700bc95b0a1a6c21ULL);
  return static_cast<double>(z >> 11) * 0x1.0p-53;
}

McEstimate erm_revenue_mc(const RevenueCurve& curve, std::uint64_t n_samples,
                          std::uint64_t seed) {
  assert(n_samples >= 1);
  double mean = 0.0, m2 = 0.0;
  for (std::uint64_t i = 0; i < n_samples; ++i) {
    const double x = uniform01(seed, 2 * i);
    const double y = uniform01(seed, 2 * i + 1);
    const double v = phi(curve, x, y);
    const double delta = v - mean;
    mean += delta / static_cast<double>(i + 1);
    m2 += delta * (v - mean);
  }
  McEstimate e;
  e.estimate = mean;
  if (n_samples >= 2) {
    const double var = m2 / static_cast<double>(n_samples - 1);
    e.std_error = std::sqrt(std::max(var, 0.0) / static_cast<double>(n_samples));
  }
  return e;
}

IntegralResult ratio(const RevenueCurve& curve, double tol) {
  const double m = curve.max_value();
  if (m <= kCurveTol) throw ZeroCurve("ratio of a zero curve");
  IntegralResult r = erm_revenue_enclosure(curve, tol * m);
  r.value.lower /= m;
  r.value.upper /= m;
  return r;
}

namespace {

// Convex polygon helpers for the min-of-affines integral.
struct Poly {
  double xs[8];
  double ys[8];
  int n = 0;
  void push(double x, double y) {
    xs[n] = x;
    ys[n] = y;
    ++n;
  }
};

// Clip poly against the half-plane {f(x,y) <= 0}, f affine.
Poly clip(const Poly& p, double fx, double fy, double f0) {
  Poly out;
  for (int i = 0; i < p.n; ++i) {
    const int j = (i + 1) % p.n;
    const double fi = fx * p.xs[i] + fy * p.ys[i] + f0;
    const double fj = fx * p.xs[j] + fy * p.ys[j] + f0;
    if (fi <= 0.0) out.push(p.xs[i], p.ys[i]);
    if ((fi < 0.0 && fj > 0.0) || (fi > 0.0 && fj < 0.0)) {
      const double t = fi / (fi - fj);
      out.push(p.xs[i] + t * (p.xs[j] - p.xs[i]), p.ys[i] + t * (p.ys[j] - p.ys[i]));
    }
  }
  return out;
}

// Signed area and centroid; the affine integrand is then area * value at the
// centroid, which is exact.
void area_centroid(const Poly& p, double& area, double& cx, double& cy) {
  area = 0.0;
  cx = cy = 0.0;
  for (int i = 0; i < p.n; ++i) {
    const int j = (i + 1) % p.n;
    const double w = p.xs[i] * p.ys[j] - p.xs[j] * p.ys[i];
    area += w;
    cx += (p.xs[i] + p.xs[j]) * w;
    cy += (p.ys[i] + p.ys[j]) * w;
  }
  area *= 0.5;
  if (std::abs(area) < 1e-300) {
    area = 0.0;
    return;
  }
  cx /= 6.0 * area;
  cy /= 6.0 * area;
}

}  // namespace

double min_affine_integral(double x0, double x1, double a0, double a1,
                           double y0, double y1, double b0, double b1) {
  assert(x1 >= x0 && y1 >= y0);
  if (x1 == x0 || y1 == y0) return 0.0;
  const double sa = (a1 - a0) / (x1 - x0);
  const double sb = (b1 - b0) / (y1 - y0);
  // d(x,y) = a(x) - b(y); min is a where d <= 0, b where d >= 0.
  const double dx = sa, dy = -sb;
  const double d0 = (a0 - sa * x0) - (b0 - sb * y0);
  if (dx == 0.0 && dy == 0.0) {
    // constant difference: one side covers the whole rectangle
    const double area = (x1 - x0) * (y1 - y0);
    return d0 <= 0.0 ? area * 0.5 * (a0 + a1) : area * 0.5 * (b0 + b1);
  }
  Poly rect;
  rect.push(x0, y0);
  rect.push(x1, y0);
  rect.push(x1, y1);
  rect.push(x0, y1);

  double total = 0.0;
  {
    const Poly below = clip(rect, dx, dy, d0);  // a <= b
    double area, cx, cy;
    area_centroid(below, area, cx, cy);
    if (area != 0.0) total += area * (a0 + sa * (cx - x0));
  }
  {
    const Poly above = clip(rect, -dx, -dy, -d0);  // b <= a
    double area, cx, cy;
    area_centroid(above, area, cx, cy);
    if (area != 0.0) total += area * (b0 + sb * (cy - y0));
  }
  return total;
}

}  // namespace erm2s
