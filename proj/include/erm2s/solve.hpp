#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "erm2s/model.hpp"

namespace erm2s {

struct SolveOptions {
  // targeted relative optimality gap; 0.002 matches the headline runs, 0.01
  // is used for the slow square-weighted early-k models
  double relative_gap = 0.002;
  double time_limit_sec = 0.0;  // 0 = no limit
  int threads = 1;
  // "reference" for the built-in exact solver; anything else is an external
  // command invoked as  <backend> <model.mps> <out.json> <gap> <time> <threads>
  std::string backend = "reference";
  std::string work_dir;      // where model/solution files go; empty = temp dir
  bool keep_files = false;   // keep the exchange files for audit
  std::ostream* log = nullptr;
};

enum class SolveStatus { Optimal, GapReached, TimeLimit, Infeasible };

const char* to_string(SolveStatus s);

struct SolveResult {
  SolveStatus status = SolveStatus::Infeasible;
  double incumbent_value = 0.0;
  std::vector<double> incumbent;  // by variable id; empty when infeasible
  double dual_bound = 0.0;        // proven lower bound (minimization)
  double gap = 0.0;               // (incumbent - dual)/max(|incumbent|, eps)
  double runtime_sec = 0.0;
};

// Dispatch on options.backend. Results always carry a proven dual bound
// unless infeasible. Throws BackendUnavailable / SolverError.
SolveResult solve(const MilpModel& model, const SolveOptions& options);

// Exact optimum for small models (<= 36 binaries): enumerates only the
// monotone staircase indicator patterns, which are the only patterns the
// monotonicity rows leave feasible, and solves the exact rational LP that
// remains once the indicators are fixed and the product lifts collapse.
SolveResult reference_solve(const MilpModel& model);

// The certified value of a solve: the proven dual bound, never the
// incumbent. Throws NoBound for infeasible results.
double certified_bound(const SolveResult& result);

struct FixedPatternResult {
  bool feasible = false;
  double value = 0.0;
  std::vector<double> assignment;  // full-length, lifted vars reconstructed
};

// Fixes every binary to the given 0/1 values (ordered by variable id) and
// solves the remaining LP exactly. Lifted product variables are substituted
// out; rows that become constant are checked directly.
FixedPatternResult solve_with_fixed_binaries(const MilpModel& model,
                                             const std::vector<int>& w_values);

// Enumerates every monotone staircase 0/1 pattern for the model's indicator
// grid (non-decreasing in the first index, non-increasing in the second).
void for_each_monotone_pattern(const MilpModel& model,
                               const std::function<void(const std::vector<int>&)>& fn);

}  // namespace erm2s
