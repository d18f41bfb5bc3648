#include "erm2s/gauge.hpp"

#include <cstdint>
#include <numeric>

namespace erm2s {

const char* to_string(Weighting w) {
  switch (w) {
    case Weighting::Uniform: return "uniform";
    case Weighting::ApproxUniform: return "approx_uniform";
    case Weighting::SquareWeighted: return "square_weighted";
  }
  return "?";
}

Weighting weighting_from_string(const std::string& s) {
  if (s == "uniform") return Weighting::Uniform;
  if (s == "approx_uniform" || s == "approx") return Weighting::ApproxUniform;
  if (s == "square_weighted" || s == "square") return Weighting::SquareWeighted;
  throw BadGauge("unknown weighting: " + s);
}

namespace {

// Exact fraction with a small denominator; breakpoints are reduced and
// rounded to double exactly once.
struct Frac {
  std::int64_t num = 0;
  std::int64_t den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

Frac frac(std::int64_t num, std::int64_t den) {
  const std::int64_t g = std::gcd(num, den);
  return {num / (g ? g : 1), den / (g ? g : 1)};
}

// |A/w1 - B/w2| compared across candidate splits without leaving integers:
// the argmin comparison cross-multiplies |A*w2 - B*w1| * (other denominator).
__int128 abs128(__int128 v) { return v < 0 ? -v : v; }

}  // namespace

int split_index(int n, int N, int k, Weighting weighting) {
  if (!(1 < k && k < N)) throw BadIndex("split_index expects an interior k");
  const bool square = weighting == Weighting::SquareWeighted && 2 * k < N;
  // open range 1 < mu < n-1; for n <= 3 that range is empty and the only
  // geometrically valid splits 1 <= mu <= n-2 are used instead
  int lo = 2, hi = n - 2;
  if (lo > hi) {
    lo = 1;
    hi = n - 2;
    if (lo > hi) throw BadGauge("no feasible split: n too small for interior k");
  }
  const std::int64_t A = k - 1, B = N - k;
  int best = lo;
  __int128 best_num = 0, best_den = 1;
  for (int mu = lo; mu <= hi; ++mu) {
    const std::int64_t left = mu, right = n - mu - 1;
    __int128 w1, w2;
    if (square) {
      w1 = static_cast<__int128>(left) * left;
      w2 = static_cast<__int128>(right) * right;
    } else {
      w1 = left;
      w2 = right;
    }
    const __int128 num = abs128(static_cast<__int128>(A) * w2 -
                                static_cast<__int128>(B) * w1);
    const __int128 den = w1 * w2;
    if (mu == lo || num * best_den < best_num * den) {
      best = mu;
      best_num = num;
      best_den = den;
    }
  }
  return best;
}

Gauge uniform_gauge(int n, int k) {
  if (n < 1) throw BadIndex("uniform_gauge needs n >= 1");
  if (k < 1 || k > n + 1) throw BadIndex("uniform_gauge needs 1 <= k <= n+1");
  Gauge g;
  g.breakpoints.resize(n + 1);
  for (int i = 0; i <= n; ++i) g.breakpoints[i] = frac(i, n).value();
  g.opt_index = std::min(k, n);
  return g;
}

Gauge lower_gauge(int n, int N, int k, Weighting weighting) {
  if (n < 2) throw BadIndex("lower_gauge needs n >= 2");
  if (N < 1 || k < 1 || k > N) throw BadIndex("lower_gauge needs 1 <= k <= N");
  Gauge g;
  if (k == 1) {
    // [1/N, 1] in n-1 equal parts
    g.breakpoints.push_back(0.0);
    for (int j = 0; j <= n - 1; ++j)
      g.breakpoints.push_back(
          frac((n - 1) + static_cast<std::int64_t>(j) * (N - 1),
               static_cast<std::int64_t>(n - 1) * N)
              .value());
    g.opt_index = 1;
  } else if (k == N) {
    // [0, 1-1/N] in n-1 equal parts
    for (int j = 0; j <= n - 1; ++j)
      g.breakpoints.push_back(frac(static_cast<std::int64_t>(j) * (N - 1),
                                   static_cast<std::int64_t>(n - 1) * N)
                                  .value());
    g.breakpoints.push_back(1.0);
    g.opt_index = n;
  } else {
    const int m = split_index(n, N, k, weighting);
    const int p = n - m - 1;
    for (int j = 0; j < m; ++j)
      g.breakpoints.push_back(frac(static_cast<std::int64_t>(j) * (k - 1),
                                   static_cast<std::int64_t>(m) * N)
                                  .value());
    g.breakpoints.push_back(frac(k - 1, N).value());
    g.breakpoints.push_back(frac(k, N).value());
    for (int j = 1; j <= p; ++j)
      g.breakpoints.push_back(
          frac(static_cast<std::int64_t>(k) * p + static_cast<std::int64_t>(j) * (N - k),
               static_cast<std::int64_t>(p) * N)
              .value());
    g.opt_index = m + 1;
  }
  g.breakpoints.front() = 0.0;
  g.breakpoints.back() = 1.0;
  for (size_t i = 1; i < g.breakpoints.size(); ++i)
    if (!(g.breakpoints[i] > g.breakpoints[i - 1]))
      throw BadGauge("degenerate gauge breakpoints");
  return g;
}

double cell_area(const Gauge& gauge, int i, int j) {
  const int n = gauge.intervals();
  if (j < 1 || i < j || i > n) throw BadIndex("cell_area needs 1 <= j <= i <= n");
  return gauge.length(i) * gauge.length(j);
}

}  // namespace erm2s
