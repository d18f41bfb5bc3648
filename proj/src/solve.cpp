#include "erm2s/solve.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "erm2s/mps.hpp"
#include "erm2s/simplex.hpp"
#include "json.hpp"

namespace erm2s {

namespace fs = std::filesystem;

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::GapReached: return "gap_reached";
    case SolveStatus::TimeLimit: return "time_limit";
    case SolveStatus::Infeasible: return "infeasible";
  }
  return "?";
}

namespace {

double relative_gap_of(double incumbent, double dual) {
  return (incumbent - dual) / std::max(std::abs(incumbent), 1e-10);
}

// Substituted form of a variable once the binaries are fixed: an affine
// function of the R variables.
struct Subst {
  double constant = 0.0;
  int r_var = -1;      // LP index of the single R variable, or -1
  double r_coef = 0.0;
  int r_var2 = -1;     // second R variable (midpoint products)
  double r_coef2 = 0.0;
};

}  // namespace

FixedPatternResult solve_with_fixed_binaries(const MilpModel& model,
                                             const std::vector<int>& w_values) {
  const int nr = static_cast<int>(model.r_id.size());
  // LP variable i-1 <-> R(q_i); model var id -> LP index
  std::vector<int> lp_index(model.vars.size(), -1);
  for (int i = 0; i < nr; ++i) lp_index[model.r_id[i]] = i;

  std::vector<Subst> subst(model.vars.size());
  {
    size_t wi = 0;
    std::vector<double> wval(model.vars.size(), 0.0);
    for (size_t v = 0; v < model.vars.size(); ++v) {
      if (model.vars[v].kind != VarKind::Binary) continue;
      if (wi >= w_values.size()) throw BadIndex("binary pattern too short");
      wval[v] = static_cast<double>(w_values[wi++]);
    }
    if (wi != w_values.size()) throw BadIndex("binary pattern too long");
    const bool upper = model.family == MilpModel::Family::UpperSearch;
    for (size_t v = 0; v < model.vars.size(); ++v) {
      const VarRole& role = model.roles[v];
      Subst& s = subst[v];
      switch (role.kind) {
        case VarRole::Kind::R:
          s.r_var = lp_index[v];
          s.r_coef = 1.0;
          break;
        case VarRole::Kind::W:
          s.constant = wval[v];
          break;
        case VarRole::Kind::W2: {
          const double a = wval[model.w_id.at({role.i + 1, role.j})];
          const double b = wval[model.w_id.at({role.i, role.j + 1})];
          s.constant = a * b;
          break;
        }
        case VarRole::Kind::Rw: {
          const double w = wval[model.w_id.at({role.i, role.j})];
          if (w != 0.0) {
            if (upper) {
              s.r_var = role.l - 1;
              s.r_coef = 0.5 * w;
              s.r_var2 = role.l;
              s.r_coef2 = 0.5 * w;
            } else {
              s.r_var = role.l - 1;
              s.r_coef = w;
            }
          }
          break;
        }
        case VarRole::Kind::Rw2: {
          const double a = wval[model.w_id.at({role.i + 1, role.j})];
          const double b = wval[model.w_id.at({role.i, role.j + 1})];
          if (a * b != 0.0) {
            s.r_var = role.l - 1;
            s.r_coef = a * b;
          }
          break;
        }
      }
    }
  }

  using lp::Rational;
  std::vector<lp::LpRow> rows;
  std::vector<double> dense(nr);
  auto substitute = [&](const std::vector<LinTerm>& terms, double& constant) {
    std::fill(dense.begin(), dense.end(), 0.0);
    constant = 0.0;
    for (auto [var, coef] : terms) {
      const Subst& s = subst[var];
      constant += coef * s.constant;
      if (s.r_var >= 0) dense[s.r_var] += coef * s.r_coef;
      if (s.r_var2 >= 0) dense[s.r_var2] += coef * s.r_coef2;
    }
  };

  FixedPatternResult out;
  for (const auto& c : model.cons) {
    double constant = 0.0;
    substitute(c.terms, constant);
    lp::LpRow row;
    for (int i = 0; i < nr; ++i)
      if (dense[i] != 0.0) row.terms.push_back({i, Rational(dense[i])});
    row.rel = c.rel;
    row.rhs = Rational(c.rhs) - Rational(constant);
    if (row.terms.empty()) {
      const bool ok = c.rel == Rel::Le   ? Rational(0) <= row.rhs
                      : c.rel == Rel::Ge ? Rational(0) >= row.rhs
                                         : row.rhs == 0;
      if (!ok) return out;  // pattern contradicts a constant row
      continue;
    }
    rows.push_back(std::move(row));
  }
  // R boxes (lb 0 is implicit in the LP)
  for (int i = 0; i < nr; ++i) {
    lp::LpRow ub;
    ub.terms = {{i, Rational(1)}};
    ub.rel = Rel::Le;
    ub.rhs = Rational(model.vars[model.r_id[i]].ub);
    rows.push_back(std::move(ub));
  }

  double obj_const = 0.0;
  substitute(model.objective, obj_const);
  std::vector<std::pair<int, Rational>> objective;
  for (int i = 0; i < nr; ++i)
    if (dense[i] != 0.0) objective.push_back({i, Rational(dense[i])});

  const auto lp_res = lp::solve_lp(nr, rows, objective);
  if (lp_res.status != lp::LpStatus::Optimal) return out;

  out.feasible = true;
  out.value = static_cast<double>(lp_res.value) + obj_const +
              model.objective_constant;
  out.assignment.assign(model.vars.size(), 0.0);
  for (size_t v = 0; v < model.vars.size(); ++v) {
    const Subst& s = subst[v];
    double val = s.constant;
    if (s.r_var >= 0) val += s.r_coef * static_cast<double>(lp_res.x[s.r_var]);
    if (s.r_var2 >= 0) val += s.r_coef2 * static_cast<double>(lp_res.x[s.r_var2]);
    out.assignment[v] = val;
  }
  return out;
}

void for_each_monotone_pattern(
    const MilpModel& model, const std::function<void(const std::vector<int>&)>& fn) {
  // group binaries by second index; within a column the ones form a suffix
  std::map<int, std::vector<std::pair<int, int>>> cols;  // t -> [(s, var id)]
  int max_s = 0;
  for (size_t v = 0; v < model.vars.size(); ++v)
    if (model.vars[v].kind == VarKind::Binary) {
      cols[model.roles[v].j].push_back({model.roles[v].i, static_cast<int>(v)});
      max_s = std::max(max_s, model.roles[v].i);
    }
  std::vector<int> bin_ids;
  for (size_t v = 0; v < model.vars.size(); ++v)
    if (model.vars[v].kind == VarKind::Binary) bin_ids.push_back(static_cast<int>(v));
  std::map<int, int> bin_pos;
  for (size_t p = 0; p < bin_ids.size(); ++p) bin_pos[bin_ids[p]] = static_cast<int>(p);

  std::vector<std::pair<int, std::vector<std::pair<int, int>>>> columns(
      cols.begin(), cols.end());
  for (auto& [t, entries] : columns) std::sort(entries.begin(), entries.end());

  std::vector<int> pattern(bin_ids.size(), 0);
  const int sentinel = max_s + 1;
  std::function<void(size_t, int)> rec = [&](size_t ci, int min_threshold) {
    if (ci == columns.size()) {
      fn(pattern);
      return;
    }
    const auto& entries = columns[ci].second;
    const int lo_s = entries.front().first;
    for (int thr = std::max(min_threshold, lo_s); thr <= sentinel; ++thr) {
      // thr is the smallest first index set to 1; skip values that do not
      // correspond to a distinct pattern for this column
      if (thr != sentinel) {
        bool present = false;
        for (const auto& e : entries) present = present || e.first == thr;
        if (!present) continue;
      }
      for (const auto& [s, id] : entries) pattern[bin_pos[id]] = s >= thr ? 1 : 0;
      rec(ci + 1, thr);
    }
  };
  rec(0, 0);
}

SolveResult reference_solve(const MilpModel& model) {
  if (model.num_binaries() > 36)
    throw TooLarge("reference_solve handles at most 36 binaries");
  const auto t0 = std::chrono::steady_clock::now();
  SolveResult best;
  best.status = SolveStatus::Infeasible;
  bool have = false;
  for_each_monotone_pattern(model, [&](const std::vector<int>& pattern) {
    auto r = solve_with_fixed_binaries(model, pattern);
    if (!r.feasible) return;
    if (!have || r.value < best.incumbent_value) {
      have = true;
      best.incumbent_value = r.value;
      best.incumbent = std::move(r.assignment);
    }
  });
  best.runtime_sec =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!have) return best;
  best.status = SolveStatus::Optimal;
  best.dual_bound = best.incumbent_value;
  best.gap = 0.0;
  return best;
}

namespace {

SolveResult solve_external(const MilpModel& model, const SolveOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  fs::path dir;
  const bool own_dir = opts.work_dir.empty();
  if (own_dir) {
    dir = fs::temp_directory_path() /
          ("erm2s-" + std::to_string(
                          std::chrono::steady_clock::now().time_since_epoch().count()));
  } else {
    dir = opts.work_dir;
  }
  fs::create_directories(dir);
  const fs::path mps = dir / "model.mps";
  const fs::path sol = dir / "solution.json";
  write_mps(model, mps.string());

  std::ostringstream cmd;
  cmd << opts.backend << " " << mps << " " << sol << " " << opts.relative_gap
      << " " << opts.time_limit_sec << " " << opts.threads;
  if (opts.log)
    *opts.log << "[solve] model=" << mps << " cmd=" << cmd.str()
              << " solution=" << sol << "\n";
  const int rc = std::system(cmd.str().c_str());
  if (!fs::exists(sol)) {
    if (own_dir && !opts.keep_files) fs::remove_all(dir);
    throw BackendUnavailable("backend produced no solution file (exit " +
                             std::to_string(rc) + "): " + cmd.str());
  }

  nlohmann::json j;
  {
    std::ifstream in(sol);
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw SolverError(std::string("unparseable solution file: ") + e.what());
    }
  }
  if (own_dir && !opts.keep_files) fs::remove_all(dir);

  const std::string status = j.value("status", "error");
  SolveResult res;
  res.runtime_sec =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (status == "infeasible") {
    res.status = SolveStatus::Infeasible;
    return res;
  }
  if (status != "optimal" && status != "gap_reached" && status != "time_limit")
    throw SolverError("backend error: " + j.value("message", status));

  res.incumbent_value = j.at("objective").get<double>();
  res.dual_bound = j.value("dual_bound", res.incumbent_value);
  res.gap = relative_gap_of(res.incumbent_value, res.dual_bound);
  if (res.dual_bound > res.incumbent_value + 1e-9)
    throw SolverError("backend reported dual bound above incumbent");
  res.status = status == "optimal"       ? SolveStatus::Optimal
               : status == "gap_reached" ? SolveStatus::GapReached
                                         : SolveStatus::TimeLimit;
  res.incumbent.assign(model.vars.size(), 0.0);
  const auto& assign = j.at("assignment");
  std::map<std::string, int> by_name;
  for (size_t v = 0; v < model.vars.size(); ++v)
    by_name[model.vars[v].name] = static_cast<int>(v);
  for (auto it = assign.begin(); it != assign.end(); ++it) {
    auto found = by_name.find(it.key());
    if (found != by_name.end())
      res.incumbent[found->second] = it.value().get<double>();
  }
  return res;
}

}  // namespace

SolveResult solve(const MilpModel& model, const SolveOptions& options) {
  if (options.backend == "reference" || options.backend.empty())
    return reference_solve(model);
  return solve_external(model, options);
}

double certified_bound(const SolveResult& result) {
  if (result.status == SolveStatus::Infeasible)
    throw NoBound("infeasible solve carries no bound");
  if (!std::isfinite(result.dual_bound))
    throw NoBound("missing dual bound");
  return result.dual_bound;
}

}  // namespace erm2s
