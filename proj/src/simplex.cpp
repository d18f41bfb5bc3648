#include "erm2s/simplex.hpp"

namespace erm2s::lp {

namespace {

// Dense two-phase tableau. Columns: structural vars, then slacks/surpluses,
// then artificials, then the rhs. Bland's rule on both the entering and the
// leaving choice rules out cycling.
class Tableau {
 public:
  Tableau(int num_vars, const std::vector<LpRow>& rows) : n_(num_vars) {
    const int m = static_cast<int>(rows.size());
    int num_slack = 0;
    for (const auto& r : rows)
      if (r.rel != Rel::Eq) ++num_slack;
    slack0_ = n_;
    art0_ = n_ + num_slack;
    cols_ = art0_ + m;  // at most one artificial per row
    rhs_ = cols_;
    t_.assign(m, std::vector<Rational>(cols_ + 1, 0));
    basis_.assign(m, -1);

    int slack = slack0_, art = art0_;
    for (int i = 0; i < m; ++i) {
      Rational rhs = rows[i].rhs;
      Rel rel = rows[i].rel;
      int sgn = 1;
      if (rhs < 0) {  // normalize to a non-negative rhs
        sgn = -1;
        rhs = -rhs;
        rel = rel == Rel::Le ? Rel::Ge : rel == Rel::Ge ? Rel::Le : Rel::Eq;
      }
      for (auto [v, c] : rows[i].terms) t_[i][v] += sgn * c;
      t_[i][rhs_] = rhs;
      if (rel == Rel::Le) {
        t_[i][slack] = 1;
        basis_[i] = slack++;
      } else if (rel == Rel::Ge) {
        t_[i][slack++] = -1;
        t_[i][art] = 1;
        basis_[i] = art++;
      } else {
        t_[i][art] = 1;
        basis_[i] = art++;
      }
    }
    num_art_ = art - art0_;
  }

  LpStatus run(const std::vector<std::pair<int, Rational>>& objective,
               std::vector<Rational>& x, Rational& value) {
    // phase 1: minimize the artificial sum
    std::vector<Rational> cost(cols_, 0);
    for (int a = art0_; a < art0_ + num_art_; ++a) cost[a] = 1;
    if (num_art_ > 0) {
      if (optimize(cost, /*forbid_art=*/false) == LpStatus::Unbounded)
        return LpStatus::Infeasible;  // cannot happen: phase 1 is bounded below
      Rational art_sum = 0;
      for (size_t i = 0; i < basis_.size(); ++i)
        if (basis_[i] >= art0_) art_sum += t_[i][rhs_];
      if (art_sum != 0) return LpStatus::Infeasible;
      pivot_out_artificials();
    }
    // phase 2
    std::vector<Rational> cost2(cols_, 0);
    for (auto [v, c] : objective) cost2[v] += c;
    const LpStatus st = optimize(cost2, /*forbid_art=*/true);
    if (st != LpStatus::Optimal) return st;
    x.assign(n_, 0);
    value = 0;
    for (size_t i = 0; i < basis_.size(); ++i)
      if (basis_[i] < n_) x[basis_[i]] = t_[i][rhs_];
    for (auto [v, c] : objective) value += c * x[v];
    return LpStatus::Optimal;
  }

 private:
  void pivot(int row, int col) {
    const Rational p = t_[row][col];
    for (int c = 0; c <= rhs_; ++c) t_[row][c] /= p;
    for (size_t r = 0; r < t_.size(); ++r) {
      if (static_cast<int>(r) == row) continue;
      const Rational f = t_[r][col];
      if (f == 0) continue;
      for (int c = 0; c <= rhs_; ++c) t_[r][c] -= f * t_[row][c];
    }
    basis_[row] = col;
  }

  LpStatus optimize(const std::vector<Rational>& cost, bool forbid_art) {
    const int m = static_cast<int>(t_.size());
    while (true) {
      // reduced costs: cost - cost_B . B^-1 A, computed directly
      std::vector<Rational> y(m);
      for (int i = 0; i < m; ++i) y[i] = cost[basis_[i]];
      int enter = -1;
      const int limit = forbid_art ? art0_ : cols_;
      for (int c = 0; c < limit && enter < 0; ++c) {
        bool basic = false;
        for (int i = 0; i < m; ++i) basic = basic || basis_[i] == c;
        if (basic) continue;
        Rational red = cost[c];
        for (int i = 0; i < m; ++i)
          if (y[i] != 0 && t_[i][c] != 0) red -= y[i] * t_[i][c];
        if (red < 0) enter = c;  // Bland: lowest index
      }
      if (enter < 0) return LpStatus::Optimal;
      int leave = -1;
      Rational best;
      for (int i = 0; i < m; ++i) {
        if (t_[i][enter] <= 0) continue;
        const Rational ratio = t_[i][rhs_] / t_[i][enter];
        if (leave < 0 || ratio < best ||
            (ratio == best && basis_[i] < basis_[leave]))
          leave = i, best = ratio;
      }
      if (leave < 0) return LpStatus::Unbounded;
      pivot(leave, enter);
    }
  }

  void pivot_out_artificials() {
    const int m = static_cast<int>(t_.size());
    for (int i = 0; i < m; ++i) {
      if (basis_[i] < art0_) continue;
      int col = -1;
      for (int c = 0; c < art0_ && col < 0; ++c)
        if (t_[i][c] != 0) col = c;
      if (col >= 0) pivot(i, col);
      // a fully zero row is redundant; its artificial stays basic at zero
    }
  }

  int n_, slack0_, art0_, num_art_ = 0, cols_, rhs_;
  std::vector<std::vector<Rational>> t_;
  std::vector<int> basis_;
};

}  // namespace

LpResult solve_lp(int num_vars, const std::vector<LpRow>& rows,
                  const std::vector<std::pair<int, Rational>>& objective) {
  Tableau tab(num_vars, rows);
  LpResult res;
  res.x.clear();
  res.status = tab.run(objective, res.x, res.value);
  return res;
}

}  // namespace erm2s::lp
