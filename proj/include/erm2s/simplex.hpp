#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

#include "erm2s/model.hpp"

namespace erm2s::lp {

using Rational = boost::multiprecision::cpp_rational;

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpRow {
  std::vector<std::pair<int, Rational>> terms;
  Rel rel = Rel::Le;
  Rational rhs = 0;
};

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Rational value = 0;
  std::vector<Rational> x;
};

// Minimizes objective . x subject to rows and x >= 0, in exact rational
// arithmetic (two-phase dense simplex with Bland's rule, so it terminates and
// the optimum is exact for the given coefficients). Sized for the tiny
// restriction problems of the reference solver, not for large LPs.
LpResult solve_lp(int num_vars, const std::vector<LpRow>& rows,
                  const std::vector<std::pair<int, Rational>>& objective);

}  // namespace erm2s::lp
