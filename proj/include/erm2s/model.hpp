#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "erm2s/curve.hpp"
#include "erm2s/gauge.hpp"

namespace erm2s {

enum class VarKind { Continuous, Binary };

struct Variable {
  std::string name;
  VarKind kind = VarKind::Continuous;
  double lb = 0.0;
  double ub = 1.0;
};

enum class Rel { Le, Ge, Eq };

struct LinTerm {
  int var = 0;
  double coef = 0.0;
};

struct Constraint {
  std::string name;
  std::vector<LinTerm> terms;
  Rel rel = Rel::Le;
  double rhs = 0.0;
};

// Role of a variable inside the formulation. Indices are 1-based knot /
// interval indices; products are keyed by the knot whose revenue value they
// multiply (l) and the pair the binary was evaluated at (i,j).
struct VarRole {
  enum class Kind { R, W, W2, Rw, Rw2 };
  Kind kind = Kind::R;
  int l = 0, i = 0, j = 0;
};

// Minimization MILP over revenue-curve knot values, pair indicators and their
// Sherali-Adams product lifts. Immutable after build; safe to share.
struct MilpModel {
  enum class Family { UpperSearch, LowerBound };
  Family family = Family::UpperSearch;
  int k = 0;      // pinned knot (UpperSearch) / optimal-interval index context
  Gauge gauge;    // breakpoints q_1..q_{n+1} and OPT

  std::vector<Variable> vars;
  std::vector<VarRole> roles;
  std::vector<Constraint> cons;
  std::vector<LinTerm> objective;  // minimize; plus constant below
  double objective_constant = 0.0;

  // role lookups (1-based indices as in VarRole)
  std::vector<int> r_id;                           // [i-1] -> var, i=1..n+1
  std::map<std::pair<int, int>, int> w_id;         // (s,t), t<s
  std::map<std::pair<int, int>, int> w2_id;        // (i,j) cells
  std::map<std::tuple<int, int, int>, int> rw_id;  // (l,s,t)
  std::map<std::tuple<int, int, int>, int> rw2_id; // (l,i,j)

  int n() const { return gauge.intervals(); }
  int num_binaries() const;
  const Constraint* find_constraint(const std::string& name) const;
};

// Search program for approximately minimal curves on the uniform n-gauge with
// R(q_k) pinned to 1 (1 <= k <= n+1). Pair indicators live at interval
// midpoints; midpoint revenue values are knot averages. Carries the exact
// linearization of the indicator-defining products plus the redundant
// monotonicity rows.
MilpModel build_upper_model(int n, int k);

// Lower-bounding program on an arbitrary gauge with prescribed optimal
// interval: relaxed peak constraints, indicators at knot corners (diagonal
// corners fixed to 0 and folded away), degree-3 product lifts, and the
// per-cell conditional lower-bound objective.
MilpModel build_lower_model(const Gauge& gauge);

// Sparse linear form over knot values R(q_i), i 1-based, plus a constant.
struct LinForm {
  std::vector<std::pair<int, double>> terms;  // (knot index, coefficient)
  double constant = 0.0;
  double evaluate(const std::vector<double>& knot_values) const;  // 0-based vector
};

// Lower bound for the diagonal cell (i,i): the expected minimum of two
// uniform draws of the interpolated curve on the interval, which is
// (2 R(q_i) + R(q_{i+1}))/3 before the optimal interval, 0 on it, and
// (R(q_i) + 2 R(q_{i+1}))/3 after it.
LinForm diag_coeffs(const Gauge& gauge, int i);

struct ConditionalBounds {
  LinForm f1;      // cell pays the higher sample throughout
  LinForm f0;      // cell pays the lower sample throughout
  LinForm f_iota;  // indefinite cell; constant form when the cell straddles OPT
};

// Conditional per-cell bounds for the off-diagonal cell (i,j), j < i.
ConditionalBounds offdiag_bounds(const Gauge& gauge, int i, int j);

// Expected min of the two affine restrictions of the minimal feasible curve
// (the hull through (0,0), (q_OPT, q_OPT/q_OPT+1),
// (q_OPT+1, (1-q_OPT+1)/(1-q_OPT)), (1,0)) over the cell (i,j).
// Pre: j <= OPT <= i.
double case_e_constant(const Gauge& gauge, int i, int j);

double evaluate_objective(const MilpModel& model, const std::vector<double>& x);

struct FeasibilityReport {
  bool feasible = true;
  std::string worst_constraint;
  double worst_violation = 0.0;
};

FeasibilityReport check_feasibility(const MilpModel& model,
                                    const std::vector<double>& x, double tol);

// Primal recovery: the minimal concave curve through the R knot values.
// Throws InfeasibleAssignment when the assignment violates a constraint by
// more than feas_tol.
RevenueCurve extract_curve(const MilpModel& model, const std::vector<double>& x,
                           double feas_tol = 1e-6);

// Feasible point induced by a revenue curve: knot values sampled from the
// curve, indicators classified at the model's evaluation points (exact sign
// comparisons; ties post the lower sample), lifted products set to the actual
// products. For LowerBound models the curve's maximum must lie in the
// gauge's optimal interval.
std::vector<double> assignment_from_curve(const MilpModel& model,
                                          const RevenueCurve& curve);

}  // namespace erm2s
