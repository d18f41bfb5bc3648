#pragma once

#include <string>
#include <vector>

#include "erm2s/errors.hpp"

namespace erm2s {

// Split rule used by the lower-bound gauges; Uniform names the equispaced
// gauge of the upper-bound search.
enum class Weighting { Uniform, ApproxUniform, SquareWeighted };

const char* to_string(Weighting w);
Weighting weighting_from_string(const std::string& s);

// Partition 0 = q_1 < ... < q_{n+1} = 1 with a designated optimal interval
// [q_OPT, q_OPT+1]. Knot accessors are 1-based to match the interval
// numbering used throughout the model builders.
struct Gauge {
  std::vector<double> breakpoints;  // size n+1
  int opt_index = 1;                // OPT in [1, n]

  int intervals() const { return static_cast<int>(breakpoints.size()) - 1; }
  double knot(int i) const { return breakpoints[i - 1]; }  // i in 1..n+1
  double length(int i) const { return knot(i + 1) - knot(i); }
};

// Equispaced gauge q_i = (i-1)/n. `k` indexes the knot pinned to R=1 by the
// upper-bound search (1..n+1); the optimal interval is k clamped to [1,n].
Gauge uniform_gauge(int n, int k);

// Gauge whose optimal interval is exactly [(k-1)/N, k/N]. For interior k the
// remaining mass is split into m intervals on the left and n-m-1 on the
// right, where m minimizes
//   ApproxUniform:   | (k-1)/(N mu)   - (N-k)/(N (n-mu-1))   |
//   SquareWeighted:  | (k-1)/(N mu^2) - (N-k)/(N (n-mu-1)^2) |  for k < N/2
// over 1 < mu < n-1 (ties toward smaller mu). The square rule falls back to
// ApproxUniform for k >= N/2. k=1 and k=N split the complement into n-1 equal
// parts. Breakpoints are built in exact rational arithmetic and rounded once.
Gauge lower_gauge(int n, int N, int k, Weighting weighting);

// The split index m chosen for an interior k; exposed for reproducibility
// checks. Pre: 1 < k < N.
int split_index(int n, int N, int k, Weighting weighting);

// Area (q_{i+1}-q_i)(q_{j+1}-q_j) of the product cell, 1 <= j <= i <= n.
double cell_area(const Gauge& gauge, int i, int j);

}  // namespace erm2s
