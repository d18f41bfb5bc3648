#include "erm2s/mps.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace erm2s {

namespace {

std::string num(double v) {
  char buf[32];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, p);
}

void field(std::ostream& os, const std::string& s, int width) {
  os << s;
  for (int i = static_cast<int>(s.size()); i < width; ++i) os << ' ';
}

}  // namespace

std::string to_mps(const MilpModel& model) {
  std::ostringstream os;
  os << "NAME          ERM2S\n";
  os << "OBJSENSE\n    MIN\n";
  os << "ROWS\n";
  os << " N  COST\n";
  for (const auto& c : model.cons) {
    const char r = c.rel == Rel::Le ? 'L' : c.rel == Rel::Ge ? 'G' : 'E';
    os << " " << r << "  " << c.name << "\n";
  }

  // entries grouped by column
  std::vector<std::vector<std::pair<const std::string*, double>>> col(
      model.vars.size());
  static const std::string kCost = "COST";
  for (auto [var, coef] : model.objective) col[var].push_back({&kCost, coef});
  for (const auto& c : model.cons)
    for (auto [var, coef] : c.terms) col[var].push_back({&c.name, coef});

  os << "COLUMNS\n";
  bool in_int = false;
  for (size_t v = 0; v < model.vars.size(); ++v) {
    const bool want_int = model.vars[v].kind == VarKind::Binary;
    if (want_int != in_int) {
      os << "    MARKER                 'MARKER'                 "
         << (want_int ? "'INTORG'" : "'INTEND'") << "\n";
      in_int = want_int;
    }
    for (size_t e = 0; e < col[v].size(); e += 2) {
      os << "    ";
      field(os, model.vars[v].name, 20);
      field(os, *col[v][e].first, 20);
      if (e + 1 < col[v].size()) {
        field(os, num(col[v][e].second), 24);
        field(os, *col[v][e + 1].first, 20);
        os << num(col[v][e + 1].second);
      } else {
        os << num(col[v][e].second);
      }
      os << "\n";
    }
  }
  if (in_int)
    os << "    MARKER                 'MARKER'                 'INTEND'\n";

  os << "RHS\n";
  if (model.objective_constant != 0.0) {
    os << "    ";
    field(os, "RHS", 20);
    field(os, "COST", 20);
    os << num(-model.objective_constant) << "\n";
  }
  for (const auto& c : model.cons) {
    if (c.rhs == 0.0) continue;
    os << "    ";
    field(os, "RHS", 20);
    field(os, c.name, 20);
    os << num(c.rhs) << "\n";
  }

  os << "BOUNDS\n";
  for (const auto& v : model.vars) {
    if (v.lb != 0.0) {
      os << " LO ";
      field(os, "BND", 16);
      field(os, v.name, 20);
      os << num(v.lb) << "\n";
    }
    os << " UP ";
    field(os, "BND", 16);
    field(os, v.name, 20);
    os << num(v.ub) << "\n";
  }
  os << "ENDATA\n";
  return os.str();
}

void write_mps(const MilpModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw SolverError("cannot write MPS file: " + path);
  out << to_mps(model);
}

}  // namespace erm2s
