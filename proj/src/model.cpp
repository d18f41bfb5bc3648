#include "erm2s/model.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <set>
#include <sstream>

#include "erm2s/bisample.hpp"

namespace erm2s {

int MilpModel::num_binaries() const {
  int c = 0;
  for (const auto& v : vars) c += v.kind == VarKind::Binary;
  return c;
}

const Constraint* MilpModel::find_constraint(const std::string& name) const {
  for (const auto& c : cons)
    if (c.name == name) return &c;
  return nullptr;
}

double LinForm::evaluate(const std::vector<double>& knot_values) const {
  double v = constant;
  for (auto [i, c] : terms) v += c * knot_values[i - 1];
  return v;
}

namespace {

std::string fmt(const char* head, int a, int b = -1, int c = -1) {
  std::ostringstream os;
  os << head << "_" << a;
  if (b >= 0) os << "_" << b;
  if (c >= 0) os << "_" << c;
  return os.str();
}

class Builder {
 public:
  explicit Builder(MilpModel& m) : m_(m) {}

  int var(std::string name, VarKind kind, double lb, double ub, VarRole role) {
    m_.vars.push_back({std::move(name), kind, lb, ub});
    m_.roles.push_back(role);
    return static_cast<int>(m_.vars.size()) - 1;
  }

  Constraint& con(std::string name, Rel rel, double rhs) {
    m_.cons.push_back({std::move(name), {}, rel, rhs});
    return m_.cons.back();
  }

  static void term(Constraint& c, int var, double coef) {
    if (coef != 0.0) c.terms.push_back({var, coef});
  }

  void obj(int var, double coef) { obj_acc_[var] += coef; }

  void finish_objective() {
    for (auto [var, coef] : obj_acc_)
      if (coef != 0.0) m_.objective.push_back({var, coef});
  }

 private:
  MilpModel& m_;
  std::map<int, double> obj_acc_;
};

// Shared constraint families ------------------------------------------------

void add_concavity(Builder& b, MilpModel& m) {
  const int n = m.n();
  for (int i = 2; i <= n; ++i) {
    auto& c = b.con(fmt("conc", i), Rel::Ge, 0.0);
    const double qm = m.gauge.knot(i - 1), q0 = m.gauge.knot(i),
                 qp = m.gauge.knot(i + 1);
    Builder::term(c, m.r_id[i - 1], qp - qm);
    Builder::term(c, m.r_id[i], -(q0 - qm));
    Builder::term(c, m.r_id[i - 2], -(qp - q0));
  }
}

// Rw(l,s,t) box rows; exact at integral indicators.
void add_rw_lift(Builder& b, MilpModel& m, int l, int s, int t, int rw,
                 const std::vector<LinTerm>& r_expr) {
  const int w = m.w_id.at({s, t});
  auto& ub1 = b.con(fmt("rw_ub1", l, s, t), Rel::Le, 0.0);
  Builder::term(ub1, rw, 1.0);
  Builder::term(ub1, w, -1.0);
  auto& ub2 = b.con(fmt("rw_ub2", l, s, t), Rel::Le, 0.0);
  Builder::term(ub2, rw, 1.0);
  for (auto [v, c] : r_expr) Builder::term(ub2, v, -c);
  auto& lb = b.con(fmt("rw_lb", l, s, t), Rel::Le, 1.0);
  for (auto [v, c] : r_expr) Builder::term(lb, v, c);
  Builder::term(lb, w, 1.0);
  Builder::term(lb, rw, -1.0);
}

}  // namespace

MilpModel build_upper_model(int n, int k) {
  if (n < 1) throw BadIndex("build_upper_model needs n >= 1");
  if (k < 1 || k > n + 1) throw BadIndex("build_upper_model needs 1 <= k <= n+1");
  MilpModel m;
  m.family = MilpModel::Family::UpperSearch;
  m.k = k;
  m.gauge = uniform_gauge(n, k);
  Builder b(m);

  for (int i = 1; i <= n + 1; ++i)
    m.r_id.push_back(b.var(fmt("R", i), VarKind::Continuous, 0.0, 1.0,
                           {VarRole::Kind::R, 0, i, 0}));
  for (int j = 1; j < n; ++j)
    for (int i = j + 1; i <= n; ++i)
      m.w_id[{i, j}] = b.var(fmt("w", i, j), VarKind::Binary, 0.0, 1.0,
                             {VarRole::Kind::W, 0, i, j});
  for (auto& [ij, w] : m.w_id) {
    (void)w;
    for (int l : {ij.second, ij.first})
      m.rw_id[{l, ij.first, ij.second}] =
          b.var(fmt("Rw", l, ij.first, ij.second), VarKind::Continuous, 0.0, 1.0,
                {VarRole::Kind::Rw, l, ij.first, ij.second});
  }

  add_concavity(b, m);
  auto& pin = b.con("pin", Rel::Eq, 1.0);
  Builder::term(pin, m.r_id[k - 1], 1.0);

  auto mid = [&](int i) { return 0.5 * (m.gauge.knot(i) + m.gauge.knot(i + 1)); };

  for (auto& [ij, w] : m.w_id) {
    (void)w;
    const auto [i, j] = ij;
    const double ci = 1.0 - mid(j);         // multiplies the higher-sample side
    const double cj = 2.0 * (1.0 - mid(i)); // multiplies the lower-sample side
    const int rwi = m.rw_id.at({i, i, j});
    const int rwj = m.rw_id.at({j, i, j});
    // w * [R(mid_i)(1-mid_j) - 2 R(mid_j)(1-mid_i)] >= 0, products lifted
    auto& wp = b.con(fmt("wdefp", i, j), Rel::Ge, 0.0);
    Builder::term(wp, rwi, ci);
    Builder::term(wp, rwj, -cj);
    // (1-w) * [same bracket] <= 0
    auto& wn = b.con(fmt("wdefn", i, j), Rel::Le, 0.0);
    Builder::term(wn, m.r_id[i - 1], ci / 2);
    Builder::term(wn, m.r_id[i], ci / 2);
    Builder::term(wn, m.r_id[j - 1], -cj / 2);
    Builder::term(wn, m.r_id[j], -cj / 2);
    Builder::term(wn, rwi, -ci);
    Builder::term(wn, rwj, cj);
    for (int l : {i, j}) {
      std::vector<LinTerm> r_expr{{m.r_id[l - 1], 0.5}, {m.r_id[l], 0.5}};
      add_rw_lift(b, m, l, i, j, m.rw_id.at({l, i, j}), r_expr);
    }
  }

  // redundant but solver-friendly monotonicity
  for (auto& [ij, w] : m.w_id) {
    const auto [i, j] = ij;
    if (i + 1 <= n) {
      auto& c = b.con(fmt("wmi", i, j), Rel::Le, 0.0);
      Builder::term(c, w, 1.0);
      Builder::term(c, m.w_id.at({i + 1, j}), -1.0);
    }
    if (j + 1 < i) {
      auto& c = b.con(fmt("wmj", i, j), Rel::Le, 0.0);
      Builder::term(c, m.w_id.at({i, j + 1}), 1.0);
      Builder::term(c, w, -1.0);
    }
  }

  const double cell = 1.0 / (static_cast<double>(n) * n);
  for (int i = 1; i <= n; ++i) {
    b.obj(m.r_id[i - 1], cell / 2);
    b.obj(m.r_id[i], cell / 2);
  }
  for (auto& [ij, w] : m.w_id) {
    (void)w;
    const auto [i, j] = ij;
    b.obj(m.rw_id.at({i, i, j}), 2 * cell);
    b.obj(m.r_id[j - 1], cell);
    b.obj(m.r_id[j], cell);
    b.obj(m.rw_id.at({j, i, j}), -2 * cell);
  }
  b.finish_objective();
  return m;
}

LinForm diag_coeffs(const Gauge& gauge, int i) {
  if (i < 1 || i > gauge.intervals()) throw BadIndex("diag_coeffs index");
  LinForm f;
  if (i < gauge.opt_index) {
    f.terms = {{i, 2.0 / 3.0}, {i + 1, 1.0 / 3.0}};
  } else if (i > gauge.opt_index) {
    f.terms = {{i, 1.0 / 3.0}, {i + 1, 2.0 / 3.0}};
  }
  return f;
}

double case_e_constant(const Gauge& gauge, int i, int j) {
  const int n = gauge.intervals(), opt = gauge.opt_index;
  if (!(1 <= j && j <= opt && opt <= i && i <= n && j < i))
    throw BadIndex("case_e_constant needs j <= OPT <= i, j < i");
  const double q_opt = gauge.knot(opt), q_opt1 = gauge.knot(opt + 1);
  const double v1 = q_opt / q_opt1;
  const double v2 = (1.0 - q_opt1) / (1.0 - q_opt);
  auto hull = concave_hull_curve({{0.0, 0.0}, {q_opt, v1}, {q_opt1, v2}, {1.0, 0.0}});
  const RevenueCurve& u = hull.curve;

  auto cuts = [&](double lo, double hi) {
    std::vector<double> c{lo};
    for (double kq : u.knots())
      if (kq > lo && kq < hi) c.push_back(kq);
    c.push_back(hi);
    return c;
  };
  const std::vector<double> xs = cuts(gauge.knot(i), gauge.knot(i + 1));
  const std::vector<double> ys = cuts(gauge.knot(j), gauge.knot(j + 1));
  double total = 0.0;
  for (size_t a = 0; a + 1 < xs.size(); ++a)
    for (size_t c = 0; c + 1 < ys.size(); ++c)
      total += min_affine_integral(xs[a], xs[a + 1], interpolate(u, xs[a]),
                                   interpolate(u, xs[a + 1]), ys[c], ys[c + 1],
                                   interpolate(u, ys[c]), interpolate(u, ys[c + 1]));
  return total / cell_area(gauge, i, j);
}

ConditionalBounds offdiag_bounds(const Gauge& gauge, int i, int j) {
  const int n = gauge.intervals();
  if (!(1 <= j && j < i && i <= n)) throw BadIndex("offdiag_bounds needs j < i <= n");
  ConditionalBounds cb;
  cb.f1.terms = {{i, 0.5}, {i + 1, 0.5}};
  cb.f0.terms = {{j, 0.5}, {j + 1, 0.5}};
  if (i < gauge.opt_index) {
    cb.f_iota = cb.f0;
  } else if (j > gauge.opt_index) {
    cb.f_iota = cb.f1;
  } else {
    cb.f_iota.constant = case_e_constant(gauge, i, j);
  }
  return cb;
}

MilpModel build_lower_model(const Gauge& gauge) {
  const int n = gauge.intervals();
  if (n < 2) throw BadGauge("build_lower_model needs at least 2 intervals");
  if (gauge.opt_index < 1 || gauge.opt_index > n)
    throw BadGauge("gauge optimal interval out of range");
  const int opt = gauge.opt_index;
  MilpModel m;
  m.family = MilpModel::Family::LowerBound;
  m.gauge = gauge;
  Builder b(m);

  for (int i = 1; i <= n + 1; ++i)
    m.r_id.push_back(b.var(fmt("R", i), VarKind::Continuous, 0.0, 1.0,
                           {VarRole::Kind::R, 0, i, 0}));
  // indicators at strict knot pairs; diagonal w(q_i,q_i)=0 is folded into the
  // rows rather than materialized
  for (int t = 1; t <= n; ++t)
    for (int s = t + 1; s <= n + 1; ++s)
      m.w_id[{s, t}] = b.var(fmt("w", s, t), VarKind::Binary, 0.0, 1.0,
                             {VarRole::Kind::W, 0, s, t});
  for (int j = 1; j <= n; ++j)
    for (int i = j + 2; i <= n; ++i)
      m.w2_id[{i, j}] = b.var(fmt("w2", i, j), VarKind::Continuous, 0.0, 1.0,
                              {VarRole::Kind::W2, 0, i, j});

  std::set<std::tuple<int, int, int>> rw_keys;
  for (auto& [st, w] : m.w_id) {
    (void)w;
    rw_keys.insert({st.first, st.first, st.second});
    rw_keys.insert({st.second, st.first, st.second});
  }
  for (int j = 1; j < n; ++j)
    for (int i = j + 1; i <= n; ++i)
      for (int l : {i, i + 1, j, j + 1}) {
        rw_keys.insert({l, i + 1, j});
        if (j + 1 < i) rw_keys.insert({l, i, j + 1});
      }
  for (auto [l, s, t] : rw_keys)
    m.rw_id[{l, s, t}] = b.var(fmt("Rw", l, s, t), VarKind::Continuous, 0.0, 1.0,
                               {VarRole::Kind::Rw, l, s, t});
  for (int j = 1; j < n; ++j)
    for (int i = j + 2; i <= n; ++i)
      for (int l : {i, i + 1, j, j + 1})
        m.rw2_id[{l, i, j}] = b.var(fmt("Rw2", l, i, j), VarKind::Continuous, 0.0,
                                    1.0, {VarRole::Kind::Rw2, l, i, j});

  add_concavity(b, m);

  auto& opt_lo = b.con("opt_lo", Rel::Ge, gauge.knot(opt) / gauge.knot(opt + 1));
  Builder::term(opt_lo, m.r_id[opt - 1], 1.0);
  auto& opt_hi = b.con("opt_hi", Rel::Ge,
                       (1.0 - gauge.knot(opt + 1)) / (1.0 - gauge.knot(opt)));
  Builder::term(opt_hi, m.r_id[opt], 1.0);
  // weakly increasing before the optimal interval, weakly decreasing after it
  for (int i = 1; i < opt; ++i) {
    auto& c = b.con(fmt("mono_up", i), Rel::Ge, 0.0);
    Builder::term(c, m.r_id[i], 1.0);
    Builder::term(c, m.r_id[i - 1], -1.0);
  }
  for (int i = opt + 1; i <= n; ++i) {
    auto& c = b.con(fmt("mono_dn", i), Rel::Ge, 0.0);
    Builder::term(c, m.r_id[i - 1], 1.0);
    Builder::term(c, m.r_id[i], -1.0);
  }

  for (auto& [st, w] : m.w_id) {
    (void)w;
    const auto [s, t] = st;
    const double cs = 1.0 - gauge.knot(t);
    const double ct = 2.0 * (1.0 - gauge.knot(s));  // zero at s = n+1
    const int rws = m.rw_id.at({s, s, t});
    const int rwt = m.rw_id.at({t, s, t});
    auto& wp = b.con(fmt("wdefp", s, t), Rel::Ge, 0.0);
    Builder::term(wp, rws, cs);
    Builder::term(wp, rwt, -ct);
    auto& wn = b.con(fmt("wdefn", s, t), Rel::Le, 0.0);
    Builder::term(wn, m.r_id[s - 1], cs);
    Builder::term(wn, m.r_id[t - 1], -ct);
    Builder::term(wn, rws, -cs);
    Builder::term(wn, rwt, ct);
  }

  for (auto& [key, rw] : m.rw_id) {
    const auto [l, s, t] = key;
    std::vector<LinTerm> r_expr{{m.r_id[l - 1], 1.0}};
    add_rw_lift(b, m, l, s, t, rw, r_expr);
  }

  for (auto& [ij, w2] : m.w2_id) {
    const auto [i, j] = ij;
    const int wa = m.w_id.at({i + 1, j});
    const int wb = m.w_id.at({i, j + 1});
    auto& u1 = b.con(fmt("w2_ub1", i, j), Rel::Le, 0.0);
    Builder::term(u1, w2, 1.0);
    Builder::term(u1, wa, -1.0);
    auto& u2 = b.con(fmt("w2_ub2", i, j), Rel::Le, 0.0);
    Builder::term(u2, w2, 1.0);
    Builder::term(u2, wb, -1.0);
    auto& lb = b.con(fmt("w2_lb", i, j), Rel::Le, 1.0);
    Builder::term(lb, wa, 1.0);
    Builder::term(lb, wb, 1.0);
    Builder::term(lb, w2, -1.0);
  }

  for (auto& [key, rw2] : m.rw2_id) {
    const auto [l, i, j] = key;
    const int w2 = m.w2_id.at({i, j});
    const int wa = m.w_id.at({i + 1, j});
    const int wb = m.w_id.at({i, j + 1});
    const int rwa = m.rw_id.at({l, i + 1, j});
    const int rwb = m.rw_id.at({l, i, j + 1});
    const int rl = m.r_id[l - 1];
    auto& u1 = b.con(fmt("rw2_ub1", l, i, j), Rel::Le, 0.0);
    Builder::term(u1, rw2, 1.0);
    Builder::term(u1, w2, -1.0);
    auto& u2 = b.con(fmt("rw2_ub2", l, i, j), Rel::Le, 0.0);
    Builder::term(u2, rw2, 1.0);
    Builder::term(u2, rwa, -1.0);
    auto& u3 = b.con(fmt("rw2_ub3", l, i, j), Rel::Le, 0.0);
    Builder::term(u3, rw2, 1.0);
    Builder::term(u3, rwb, -1.0);
    auto& l1 = b.con(fmt("rw2_lb1", l, i, j), Rel::Le, 0.0);
    Builder::term(l1, wa, -1.0);
    Builder::term(l1, w2, 1.0);
    Builder::term(l1, rwa, 1.0);
    Builder::term(l1, rw2, -1.0);
    auto& l2 = b.con(fmt("rw2_lb2", l, i, j), Rel::Le, 0.0);
    Builder::term(l2, wb, -1.0);
    Builder::term(l2, w2, 1.0);
    Builder::term(l2, rwb, 1.0);
    Builder::term(l2, rw2, -1.0);
    auto& l3 = b.con(fmt("rw2_lb3", l, i, j), Rel::Le, 0.0);
    Builder::term(l3, rl, -1.0);
    Builder::term(l3, rwa, 1.0);
    Builder::term(l3, rwb, 1.0);
    Builder::term(l3, rw2, -1.0);
    auto& l4 = b.con(fmt("rw2_lb4", l, i, j), Rel::Le, 1.0);
    Builder::term(l4, rl, 1.0);
    Builder::term(l4, wa, 1.0);
    Builder::term(l4, wb, 1.0);
    Builder::term(l4, rwa, -1.0);
    Builder::term(l4, rwb, -1.0);
    Builder::term(l4, w2, -1.0);
    Builder::term(l4, rw2, 1.0);
  }

  for (auto& [st, w] : m.w_id) {
    const auto [s, t] = st;
    if (s + 1 <= n + 1) {
      auto& c = b.con(fmt("wmi", s, t), Rel::Le, 0.0);
      Builder::term(c, w, 1.0);
      Builder::term(c, m.w_id.at({s + 1, t}), -1.0);
    }
    if (t + 1 < s) {
      auto& c = b.con(fmt("wmj", s, t), Rel::Le, 0.0);
      Builder::term(c, m.w_id.at({s, t + 1}), 1.0);
      Builder::term(c, w, -1.0);
    }
  }

  // objective: diagonal conditional bounds plus the expanded four-term
  // product form on every off-diagonal cell
  for (int i = 1; i <= n; ++i) {
    const LinForm d = diag_coeffs(gauge, i);
    const double a = cell_area(gauge, i, i);
    for (auto [knot, coef] : d.terms) b.obj(m.r_id[knot - 1], a * coef);
  }
  for (int j = 1; j < n; ++j) {
    for (int i = j + 1; i <= n; ++i) {
      const double a2 = 2.0 * cell_area(gauge, i, j);
      const bool before = i < opt, after = j > opt;
      const double ce = (!before && !after) ? case_e_constant(gauge, i, j) : 0.0;
      const int wa = m.w_id.at({i + 1, j});
      if (j + 1 < i) {
        const int wb = m.w_id.at({i, j + 1});
        const int w2 = m.w2_id.at({i, j});
        for (int l : {i, i + 1})  // higher-sample form on the product ab
          b.obj(m.rw2_id.at({l, i, j}), a2 * 0.5);
        for (int l : {j, j + 1}) {  // lower-sample form on (1-a)(1-b)
          b.obj(m.r_id[l - 1], a2 * 0.5);
          b.obj(m.rw_id.at({l, i + 1, j}), -a2 * 0.5);
          b.obj(m.rw_id.at({l, i, j + 1}), -a2 * 0.5);
          b.obj(m.rw2_id.at({l, i, j}), a2 * 0.5);
        }
        if (before || after) {  // indefinite form on a(1-b) + (1-a)b
          for (int l : before ? std::initializer_list<int>{j, j + 1}
                              : std::initializer_list<int>{i, i + 1}) {
            b.obj(m.rw_id.at({l, i + 1, j}), a2 * 0.5);
            b.obj(m.rw_id.at({l, i, j + 1}), a2 * 0.5);
            b.obj(m.rw2_id.at({l, i, j}), -a2);
          }
        } else {
          b.obj(wa, a2 * ce);
          b.obj(wb, a2 * ce);
          b.obj(w2, -2.0 * a2 * ce);
        }
      } else {
        // adjacent-diagonal cell: the second corner is the fixed w(q_i,q_i)=0
        for (int l : {j, j + 1}) {
          b.obj(m.r_id[l - 1], a2 * 0.5);
          b.obj(m.rw_id.at({l, i + 1, j}), -a2 * 0.5);
        }
        if (before) {
          for (int l : {j, j + 1}) b.obj(m.rw_id.at({l, i + 1, j}), a2 * 0.5);
        } else if (after) {
          for (int l : {i, i + 1}) b.obj(m.rw_id.at({l, i + 1, j}), a2 * 0.5);
        } else {
          b.obj(wa, a2 * ce);
        }
      }
    }
  }
  b.finish_objective();
  return m;
}

double evaluate_objective(const MilpModel& model, const std::vector<double>& x) {
  double v = model.objective_constant;
  for (auto [var, coef] : model.objective) v += coef * x[var];
  return v;
}

FeasibilityReport check_feasibility(const MilpModel& model,
                                    const std::vector<double>& x, double tol) {
  FeasibilityReport rep;
  auto consider = [&](const std::string& name, double viol) {
    if (viol > rep.worst_violation) {
      rep.worst_violation = viol;
      rep.worst_constraint = name;
    }
  };
  for (size_t v = 0; v < model.vars.size(); ++v) {
    consider(model.vars[v].name + ":lb", model.vars[v].lb - x[v]);
    consider(model.vars[v].name + ":ub", x[v] - model.vars[v].ub);
  }
  for (const auto& c : model.cons) {
    double lhs = 0.0;
    for (auto [var, coef] : c.terms) lhs += coef * x[var];
    double viol = 0.0;
    switch (c.rel) {
      case Rel::Le: viol = lhs - c.rhs; break;
      case Rel::Ge: viol = c.rhs - lhs; break;
      case Rel::Eq: viol = std::abs(lhs - c.rhs); break;
    }
    consider(c.name, viol);
  }
  rep.feasible = rep.worst_violation <= tol;
  return rep;
}

RevenueCurve extract_curve(const MilpModel& model, const std::vector<double>& x,
                           double feas_tol) {
  if (x.size() != model.vars.size())
    throw InfeasibleAssignment("assignment size mismatch", "", 0.0);
  const auto rep = check_feasibility(model, x, feas_tol);
  if (!rep.feasible) {
    std::ostringstream os;
    os << "assignment violates " << rep.worst_constraint << " by "
       << rep.worst_violation;
    throw InfeasibleAssignment(os.str(), rep.worst_constraint, rep.worst_violation);
  }
  std::vector<std::pair<double, double>> pts;
  for (int i = 1; i <= model.n() + 1; ++i)
    pts.emplace_back(model.gauge.knot(i), std::max(0.0, x[model.r_id[i - 1]]));
  return concave_hull_curve(pts).curve;
}

std::vector<double> assignment_from_curve(const MilpModel& model,
                                          const RevenueCurve& curve) {
  const int n = model.n();
  std::vector<double> x(model.vars.size(), 0.0);
  std::vector<double> v(n + 2, 0.0);  // 1-based knot values
  for (int i = 1; i <= n + 1; ++i) {
    v[i] = interpolate(curve, model.gauge.knot(i));
    x[model.r_id[i - 1]] = v[i];
  }
  const bool upper = model.family == MilpModel::Family::UpperSearch;
  auto rmid = [&](int l) { return upper ? 0.5 * (v[l] + v[l + 1]) : v[l]; };
  auto qpos = [&](int l) {
    return upper ? 0.5 * (model.gauge.knot(l) + model.gauge.knot(l + 1))
                 : model.gauge.knot(l);
  };
  // indicators by exact sign of the cleared comparison; ties post the lower
  // sample, which keeps the pattern monotone and the defining rows feasible
  for (auto& [st, wid] : model.w_id) {
    const auto [s, t] = st;
    const double g = rmid(s) * (1.0 - qpos(t)) - 2.0 * rmid(t) * (1.0 - qpos(s));
    x[wid] = g > 0.0 ? 1.0 : 0.0;
  }
  for (auto& [key, rw] : model.rw_id) {
    const auto [l, s, t] = key;
    x[rw] = x[model.w_id.at({s, t})] * rmid(l);
  }
  for (auto& [ij, w2] : model.w2_id)
    x[w2] = x[model.w_id.at({ij.first + 1, ij.second})] *
            x[model.w_id.at({ij.first, ij.second + 1})];
  for (auto& [key, rw2] : model.rw2_id) {
    const auto [l, i, j] = key;
    x[rw2] = x[model.w2_id.at({i, j})] * v[l];
  }
  return x;
}

}  // namespace erm2s
