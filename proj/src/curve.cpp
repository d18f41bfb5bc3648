#include "erm2s/curve.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace erm2s {

RevenueCurve RevenueCurve::validate(std::vector<double> knots,
                                    std::vector<double> values) {
  if (knots.size() != values.size())
    throw BadKnots("knots and values differ in length");
  if (knots.size() < 2) throw BadKnots("need at least two knots");
  for (double k : knots)
    if (!std::isfinite(k)) throw BadKnots("non-finite knot");
  for (double v : values)
    if (!std::isfinite(v)) throw BadKnots("non-finite value");
  if (knots.front() != 0.0 || knots.back() != 1.0)
    throw BadKnots("knots must start at 0 and end at 1");
  for (size_t i = 1; i < knots.size(); ++i)
    if (!(knots[i] > knots[i - 1])) throw BadKnots("knots must strictly increase");
  for (double& v : values) {
    if (v < -kCurveTol) throw NegativeValue("negative curve value");
    if (v < 0.0) v = 0.0;  // absorb sub-tolerance noise
  }
  const int m = static_cast<int>(knots.size());
  for (int i = 1; i + 1 < m; ++i) {
    const double lhs = values[i] * (knots[i + 1] - knots[i - 1]);
    const double rhs = values[i + 1] * (knots[i] - knots[i - 1]) +
                       values[i - 1] * (knots[i + 1] - knots[i]);
    if (lhs < rhs - kCurveTol) {
      std::ostringstream os;
      os << "concavity violated at knot index " << i << " (" << lhs << " < "
         << rhs << ")";
      throw ConcavityViolation(os.str(), i);
    }
  }
  return RevenueCurve(std::move(knots), std::move(values));
}

double RevenueCurve::max_value() const {
  return *std::max_element(values_.begin(), values_.end());
}

int RevenueCurve::piece_index(double q) const {
  assert(q >= 0.0 && q <= 1.0);
  // First knot strictly greater than q, minus one; q=1 lands on the last piece.
  auto it = std::upper_bound(knots_.begin(), knots_.end(), q);
  int idx = static_cast<int>(it - knots_.begin()) - 1;
  return std::min(std::max(idx, 0), num_pieces() - 1);
}

double RevenueCurve::operator()(double q) const { return interpolate(*this, q); }

double interpolate(const RevenueCurve& curve, double q) {
  assert(q >= 0.0 && q <= 1.0);
  const int p = curve.piece_index(q);
  const double k0 = curve.knots()[p], k1 = curve.knots()[p + 1];
  const double v0 = curve.values()[p], v1 = curve.values()[p + 1];
  if (q == k0) return v0;
  if (q == k1) return v1;
  const double t = (q - k0) / (k1 - k0);
  return v0 + (v1 - v0) * t;
}

double price_inverse(const RevenueCurve& curve, double q) {
  assert(q >= 0.0 && q <= 1.0);
  if (q < 1.0) return interpolate(curve, q) / (1.0 - q);
  // Left limit along the final piece, never 0/0: with R(1)=0 the quotient
  // R(q')/(1-q') is constant on the piece, otherwise it diverges.
  const int m = curve.num_knots();
  const double v_last = curve.values()[m - 1];
  if (v_last > 0.0) return std::numeric_limits<double>::infinity();
  const double k_prev = curve.knots()[m - 2];
  const double v_prev = curve.values()[m - 2];
  return v_prev / (1.0 - k_prev);
}

namespace {
// Orientation of p1->p2->p3; negative means a right turn (concave chain).
double cross(const std::pair<double, double>& p1,
             const std::pair<double, double>& p2,
             const std::pair<double, double>& p3) {
  return (p2.first - p1.first) * (p3.second - p1.second) -
         (p3.first - p1.first) * (p2.second - p1.second);
}
}  // namespace

HullResult concave_hull_curve(const std::vector<std::pair<double, double>>& points) {
  if (points.empty()) throw BadKnots("empty point set");
  bool degenerate = false;
  std::vector<std::pair<double, double>> pts;
  pts.reserve(points.size());
  for (auto [x, y] : points) {
    if (!std::isfinite(x) || !std::isfinite(y)) throw BadKnots("non-finite point");
    if (x < -kCurveTol || x > 1.0 + kCurveTol) throw BadKnots("quantile outside [0,1]");
    if (y < -kCurveTol) throw NegativeValue("negative point value");
    pts.emplace_back(std::clamp(x, 0.0, 1.0), std::max(y, 0.0));
  }
  std::sort(pts.begin(), pts.end());
  if (pts.front().first != 0.0 || pts.back().first != 1.0)
    throw BadKnots("point set must cover quantiles 0 and 1");

  // Collapse duplicate quantiles onto the highest value.
  std::vector<std::pair<double, double>> uniq;
  for (const auto& p : pts) {
    if (!uniq.empty() && uniq.back().first == p.first) {
      if (uniq.back().second != p.second) degenerate = true;
      uniq.back().second = std::max(uniq.back().second, p.second);
    } else {
      uniq.push_back(p);
    }
  }

  bool all_zero = true;
  for (const auto& p : uniq) all_zero = all_zero && p.second == 0.0;
  if (all_zero) {
    return {RevenueCurve::validate({0.0, 1.0}, {0.0, 0.0}), true};
  }

  // Monotone chain, upper hull only. Collinear middle points are dropped.
  std::vector<std::pair<double, double>> hull;
  for (const auto& p : uniq) {
    while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), p) >= 0.0)
      hull.pop_back();
    hull.push_back(p);
  }

  std::vector<double> knots, values;
  knots.reserve(hull.size());
  values.reserve(hull.size());
  for (const auto& p : hull) {
    knots.push_back(p.first);
    values.push_back(p.second);
  }
  return {RevenueCurve::validate(std::move(knots), std::move(values)), degenerate};
}

RevenueCurve piecewise_approximation(const std::function<double(double)>& sampler,
                                     int n) {
  if (n < 1) throw BadIndex("piecewise_approximation needs n >= 1");
  std::vector<double> knots(n + 1), values(n + 1);
  for (int k = 0; k <= n; ++k) {
    knots[k] = static_cast<double>(k) / n;
    values[k] = sampler(knots[k]);
  }
  knots.front() = 0.0;
  knots.back() = 1.0;
  return RevenueCurve::validate(std::move(knots), std::move(values));
}

std::function<double(double)> strictify(const RevenueCurve& curve, double eps) {
  assert(eps > 0.0);
  return [curve, eps](double q) { return interpolate(curve, q) + eps * q * (1.0 - q); };
}

Renormalized renormalize(const RevenueCurve& curve) {
  const double m = curve.max_value();
  if (m <= kCurveTol) throw ZeroCurve("cannot renormalize a zero curve");
  std::vector<double> values = curve.values();
  for (double& v : values) v /= m;
  return {RevenueCurve::validate(curve.knots(), std::move(values)), m};
}

RevenueCurve curve_from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw BadKnots(std::string("bad curve JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("knots") || !j.contains("values"))
    throw BadKnots("curve JSON must be {\"knots\":[...],\"values\":[...]}");
  std::vector<double> knots, values;
  for (const auto& v : j["knots"]) {
    if (!v.is_number()) throw BadKnots("knots must be numbers");
    knots.push_back(v.get<double>());
  }
  for (const auto& v : j["values"]) {
    if (!v.is_number()) throw BadKnots("values must be numbers");
    values.push_back(v.get<double>());
  }
  return RevenueCurve::validate(std::move(knots), std::move(values));
}

std::string curve_to_json_text(const RevenueCurve& curve) {
  nlohmann::json j;
  j["knots"] = curve.knots();
  j["values"] = curve.values();
  return j.dump();
}

RevenueCurve load_curve(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw BadKnots("cannot open curve file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return curve_from_json_text(ss.str());
}

void save_curve(const RevenueCurve& curve, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw BadKnots("cannot write curve file: " + path);
  out << curve_to_json_text(curve) << "\n";
}

}  // namespace erm2s
