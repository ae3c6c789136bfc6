#include "icregion/fm.hpp"

#include <algorithm>
#include <set>

#include "icregion/errors.hpp"
#include "icregion/lp.hpp"

namespace icr {

namespace {

using NameSet = std::set<std::string, SymbolLess>;

// Moves a constant on the lhs over to the rhs without rescaling.
LinearInequality constants_right(const LinearInequality& r) {
  LinearInequality out = r;
  if (out.lhs.constant() != 0) {
    out.rhs.set_constant(out.rhs.constant() - out.lhs.constant());
    out.lhs.set_constant(0);
  }
  return out;
}

bool has_positive_lhs(const LinearInequality& r) {
  return std::any_of(r.lhs.terms().begin(), r.lhs.terms().end(),
                     [](const auto& t) { return t.second > 0; });
}

LinExpr substitute(const LinExpr& e, const std::string& var, const LinExpr& value) {
  const Rational k = e.coeff(var);
  if (k == 0) return e;
  LinExpr out = e;
  out.erase(var);
  out += value * k;
  return out;
}

std::vector<LinearInequality> eliminate_one(const std::vector<LinearInequality>& rows,
                                            const std::string& var) {
  std::vector<const LinearInequality*> pos, neg;
  std::vector<LinearInequality> out;
  for (const auto& r : rows) {
    const Rational k = r.lhs.coeff(var);
    if (k > 0) {
      pos.push_back(&r);
    } else if (k < 0) {
      neg.push_back(&r);
    } else {
      out.push_back(r);
    }
  }
  for (const auto* p : pos) {
    const Rational kp = p->lhs.coeff(var);
    for (const auto* n : neg) {
      const Rational kn = -n->lhs.coeff(var);
      LinearInequality c{p->lhs * kn + n->lhs * kp, p->rhs * kn + n->rhs * kp};
      c.lhs.erase(var);
      out.push_back(c.normalized());
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.compare(b) < 0; });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

bool implied_nonnegative(const LinExpr& e, const InequalitySystem& side) {
  if (e.all_nonnegative()) return true;
  NameSet symbols;
  for (const auto& [n, k] : e.terms()) symbols.insert(n);
  std::vector<LinExpr> slacks;
  for (const auto& r : side.rows()) {
    slacks.push_back(r.slack());
    for (const auto& [n, k] : slacks.back().terms()) symbols.insert(n);
  }
  const std::vector<std::string> names(symbols.begin(), symbols.end());
  const std::size_t m = names.size() + 1;
  const std::size_t n = slacks.size() + names.size() + 1;
  RationalMatrix A(m, n);
  std::vector<Rational> b(m);
  for (std::size_t k = 0; k < slacks.size(); ++k) {
    for (std::size_t i = 0; i < names.size(); ++i) A(i, k) = slacks[k].coeff(names[i]);
    A(names.size(), k) = slacks[k].constant();
  }
  for (std::size_t i = 0; i < m; ++i) A(i, slacks.size() + i) = 1;
  for (std::size_t i = 0; i < names.size(); ++i) b[i] = e.coeff(names[i]);
  b[names.size()] = e.constant();
  return find_nonnegative_solution(A, b).has_value();
}

std::optional<Certificate> certificate(const LinearInequality& target,
                                       const InequalitySystem& generators,
                                       const InequalitySystem& side) {
  const LinearInequality t = constants_right(target);
  std::vector<LinearInequality> gens;
  for (const auto& g : generators.rows()) gens.push_back(constants_right(g));
  std::vector<LinExpr> slacks;
  for (const auto& r : side.rows()) slacks.push_back(r.slack());

  NameSet var_set, sym_set;
  auto collect = [&](const LinearInequality& r) {
    for (const auto& [n, k] : r.lhs.terms()) var_set.insert(n);
    for (const auto& [n, k] : r.rhs.terms()) sym_set.insert(n);
  };
  collect(t);
  for (const auto& g : gens) collect(g);
  for (const auto& s : slacks)
    for (const auto& [n, k] : s.terms()) sym_set.insert(n);
  const std::vector<std::string> vars(var_set.begin(), var_set.end());
  const std::vector<std::string> syms(sym_set.begin(), sym_set.end());

  const std::size_t ng = gens.size(), ns = slacks.size();
  const std::size_t m = vars.size() + syms.size() + 1;
  const std::size_t n = ng + ns + vars.size() + syms.size() + 1;
  RationalMatrix A(m, n);
  std::vector<Rational> b(m);
  const std::size_t const_row = vars.size() + syms.size();
  for (std::size_t g = 0; g < ng; ++g) {
    for (std::size_t i = 0; i < vars.size(); ++i) A(i, g) = gens[g].lhs.coeff(vars[i]);
    for (std::size_t i = 0; i < syms.size(); ++i) A(vars.size() + i, g) = gens[g].rhs.coeff(syms[i]);
    A(const_row, g) = gens[g].rhs.constant();
  }
  for (std::size_t k = 0; k < ns; ++k) {
    for (std::size_t i = 0; i < syms.size(); ++i) A(vars.size() + i, ng + k) = slacks[k].coeff(syms[i]);
    A(const_row, ng + k) = slacks[k].constant();
  }
  for (std::size_t i = 0; i < vars.size(); ++i) A(i, ng + ns + i) = -1;
  for (std::size_t i = 0; i < syms.size(); ++i) A(vars.size() + i, ng + ns + vars.size() + i) = 1;
  A(const_row, n - 1) = 1;
  for (std::size_t i = 0; i < vars.size(); ++i) b[i] = t.lhs.coeff(vars[i]);
  for (std::size_t i = 0; i < syms.size(); ++i) b[vars.size() + i] = t.rhs.coeff(syms[i]);
  b[const_row] = t.rhs.constant();

  auto x = find_nonnegative_solution(A, b);
  if (!x) return std::nullopt;
  Certificate c;
  c.generator_weights.assign(x->begin(), x->begin() + static_cast<std::ptrdiff_t>(ng));
  c.side_weights.assign(x->begin() + static_cast<std::ptrdiff_t>(ng),
                        x->begin() + static_cast<std::ptrdiff_t>(ng + ns));
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if ((*x)[ng + ns + i] != 0) c.rate_slack[vars[i]] = (*x)[ng + ns + i];
  }
  for (std::size_t i = 0; i < syms.size(); ++i) {
    const auto& v = (*x)[ng + ns + vars.size() + i];
    if (v != 0) c.symbol_slack[syms[i]] = v;
  }
  c.constant_slack = x->back();
  return c;
}

bool verify_certificate(const Certificate& cert, const LinearInequality& target,
                        const InequalitySystem& generators, const InequalitySystem& side) {
  if (cert.generator_weights.size() != generators.size() ||
      cert.side_weights.size() != side.size()) {
    return false;
  }
  auto negative = [](const Rational& r) { return r < 0; };
  if (std::any_of(cert.generator_weights.begin(), cert.generator_weights.end(), negative) ||
      std::any_of(cert.side_weights.begin(), cert.side_weights.end(), negative) ||
      cert.constant_slack < 0) {
    return false;
  }
  LinExpr lhs, rhs(cert.constant_slack);
  for (std::size_t g = 0; g < generators.size(); ++g) {
    const auto r = constants_right(generators.rows()[g]);
    lhs += r.lhs * cert.generator_weights[g];
    rhs += r.rhs * cert.generator_weights[g];
  }
  for (std::size_t k = 0; k < side.size(); ++k) rhs += side.rows()[k].slack() * cert.side_weights[k];
  for (const auto& [v, k] : cert.rate_slack) {
    if (k < 0) return false;
    lhs.add(v, -k);
  }
  for (const auto& [s, k] : cert.symbol_slack) {
    if (k < 0) return false;
    rhs.add(s, k);
  }
  const auto t = constants_right(target);
  return lhs == t.lhs && rhs == t.rhs;
}

std::vector<Substitution> rate_split() {
  return {{"R1", {"S1", "T1"}}, {"R2", {"S2", "T2"}}};
}

std::vector<std::string> split_variables() { return {"S1", "T1", "S2", "T2"}; }

ProjectionResult project(const InequalitySystem& sys, const std::vector<std::string>& eliminate,
                         const std::vector<Substitution>& subs, const ProjectOptions& opts) {
  ProjectionResult result;
  std::vector<LinearInequality> rows;
  for (const auto& r : sys.rows()) rows.push_back(constants_right(r));
  const auto present = sys.variables();
  for (const auto& v : present) rows.push_back({LinExpr::symbol(v, -1), LinExpr()});

  auto is_present = [&](const std::string& v) {
    return std::find(present.begin(), present.end(), v) != present.end();
  };
  auto wants = [&](const std::string& v) {
    return std::find(eliminate.begin(), eliminate.end(), v) != eliminate.end();
  };

  std::vector<std::string> solved;
  for (const auto& s : subs) {
    auto it = std::find_if(s.parts.begin(), s.parts.end(),
                           [&](const auto& p) { return wants(p) && is_present(p); });
    if (it == s.parts.end()) {
      result.warnings.push_back("substitution for " + s.target + " has no part to eliminate");
      continue;
    }
    LinExpr value = LinExpr::symbol(s.target);
    for (const auto& p : s.parts)
      if (p != *it) value.add(p, -1);
    for (auto& r : rows) r.lhs = substitute(r.lhs, *it, value);
    solved.push_back(*it);
  }

  for (auto& r : rows) r = r.normalized();
  for (const auto& v : eliminate) {
    if (std::find(solved.begin(), solved.end(), v) != solved.end()) continue;
    if (!is_present(v)) {
      result.warnings.push_back("variable " + v + " does not occur; elimination skipped");
      continue;
    }
    rows = eliminate_one(rows, v);
  }
  result.raw_rows = rows.size();

  std::vector<LinearInequality> kept;
  for (const auto& r : rows) {
    if (!has_positive_lhs(r) && implied_nonnegative(r.rhs, opts.side)) continue;
    kept.push_back(r);
  }
  kept = InequalitySystem(std::move(kept)).canonical().rows();

  if (opts.pruning != Pruning::None) {
    std::vector<bool> drop(kept.size(), false);
    for (std::size_t i = 0; i < kept.size(); ++i) {
      for (std::size_t j = 0; j < kept.size() && !drop[i]; ++j) {
        if (i == j || drop[j] || !(kept[i].lhs == kept[j].lhs)) continue;
        if (!implied_nonnegative(kept[i].rhs - kept[j].rhs, opts.side)) continue;
        // equivalent rows: keep the earlier one
        if (j > i && implied_nonnegative(kept[j].rhs - kept[i].rhs, opts.side)) continue;
        drop[i] = true;
      }
    }
    std::vector<LinearInequality> survivors;
    for (std::size_t i = 0; i < kept.size(); ++i)
      if (!drop[i]) survivors.push_back(kept[i]);
    kept = std::move(survivors);
  }

  if (opts.pruning == Pruning::Full) {
    std::vector<LinearInequality> current = kept;
    for (const auto& row : kept) {
      std::vector<LinearInequality> others;
      for (const auto& o : current)
        if (!(o == row)) others.push_back(o);
      if (certificate(row, InequalitySystem(others), opts.side)) current = std::move(others);
    }
    kept = std::move(current);
  }

  result.system = InequalitySystem(std::move(kept));
  return result;
}

namespace {

struct NamedText {
  const char* label;
  const char* text;
};

constexpr NamedText kSystems[] = {
    {"HK-quad",
     "S1 <= a1\nT1 <= b1\nT2 <= c1\nS1 + T1 <= d1\nS1 + T2 <= e1\nT1 + T2 <= f1\n"
     "S1 + T1 + T2 <= g1\n"
     "S2 <= a2\nT2 <= b2\nT1 <= c2\nS2 + T2 <= d2\nS2 + T1 <= e2\nT1 + T2 <= f2\n"
     "S2 + T1 + T2 <= g2\n"},
    {"HK-quad-modified",
     "S1 <= a1\nT1 <= b1\nS1 + T1 <= d1\nS1 + T2 <= e1\nT1 + T2 <= f1\nS1 + T1 + T2 <= g1\n"
     "S2 <= a2\nT2 <= b2\nS2 + T2 <= d2\nS2 + T1 <= e2\nT1 + T2 <= f2\nS2 + T1 + T2 <= g2\n"},
    {"CMG-quad",
     "S1 <= A1\nS1 + T1 <= D1\nS1 + T2 <= E1\nS1 + T1 + T2 <= G1\n"
     "S2 <= A2\nS2 + T2 <= D2\nS2 + T1 <= E2\nS2 + T1 + T2 <= G2\n"
     "T1 <= D1\nT2 <= D2\nT1 + T2 <= G1\nT1 + T2 <= G2\n"},
    {"HOD-quad",
     "S1 <= a1\nT1 <= B1\nT2 <= C1\nS1 + T1 <= d1\nS1 + T2 <= e1\nT1 + T2 <= F1\n"
     "S1 + T1 + T2 <= g1\n"
     "S2 <= a2\nT2 <= B2\nT1 <= C2\nS2 + T2 <= d2\nS2 + T1 <= e2\nT1 + T2 <= F2\n"
     "S2 + T1 + T2 <= g2\n"},
    {"HOD-quad-modified",
     "S1 <= a1\nT1 <= B1\nS1 + T1 <= d1\nS1 + T2 <= e1\nT1 + T2 <= F1\nS1 + T1 + T2 <= g1\n"
     "S2 <= a2\nT2 <= B2\nS2 + T2 <= d2\nS2 + T1 <= e2\nT1 + T2 <= F2\nS2 + T1 + T2 <= g2\n"},
    {"HK-R",
     "R1 <= d1\nR1 <= a1 + c2\nR2 <= d2\nR2 <= a2 + c1\nR1 + R2 <= a1 + g2\n"
     "R1 + R2 <= a2 + g1\nR1 + R2 <= e1 + e2\n2*R1 + R2 <= a1 + g1 + e2\n"
     "R1 + 2*R2 <= a2 + g2 + e1\n"},
    {"HK-R-13",
     "R1 <= d1\nR1 <= a1 + c2\nR2 <= d2\nR2 <= a2 + c1\nR1 + R2 <= a1 + g2\n"
     "R1 + R2 <= a2 + g1\nR1 + R2 <= e1 + e2\n2*R1 + R2 <= a1 + g1 + e2\n"
     "R1 + 2*R2 <= a2 + g2 + e1\n2*R1 + R2 <= 2*a1 + e2 + f2\nR1 + 2*R2 <= 2*a2 + e1 + f1\n"
     "R1 <= a1 + e2\nR2 <= a2 + e1\n"},
    {"HK-R-modified",
     "R1 <= d1\nR1 <= a1 + e2\nR1 <= a1 + f2\nR2 <= d2\nR2 <= a2 + e1\nR2 <= a2 + f1\n"
     "R1 + R2 <= a2 + g1\nR1 + R2 <= a1 + g2\nR1 + R2 <= e1 + e2\n"
     "2*R1 + R2 <= a1 + g1 + e2\n2*R1 + R2 <= 2*a1 + e2 + f2\n"
     "R1 + 2*R2 <= a2 + g2 + e1\nR1 + 2*R2 <= 2*a2 + e1 + f1\n"},
    {"CMG-R",
     "R1 <= D1\nR1 <= A1 + E2\nR2 <= D2\nR2 <= A2 + E1\nR1 + R2 <= A1 + G2\n"
     "R1 + R2 <= A2 + G1\nR1 + R2 <= E1 + E2\n2*R1 + R2 <= A1 + G1 + E2\n"
     "R1 + 2*R2 <= A2 + G2 + E1\n"},
    {"CMG-R-compact",
     "R1 <= D1\nR2 <= D2\nR1 + R2 <= A1 + G2\nR1 + R2 <= A2 + G1\nR1 + R2 <= E1 + E2\n"
     "2*R1 + R2 <= A1 + G1 + E2\nR1 + 2*R2 <= A2 + G2 + E1\n"},
    {"HOD-R",
     "R1 <= d1\nR1 <= a1 + C2\nR1 <= a1 + e2\nR2 <= d2\nR2 <= a2 + C1\nR2 <= a2 + e1\n"
     "R1 + R2 <= a2 + g1\nR1 + R2 <= a1 + g2\nR1 + R2 <= e1 + e2\n"
     "2*R1 + R2 <= a1 + g1 + e2\n2*R1 + R2 <= 2*a1 + e2 + F2\n"
     "R1 + 2*R2 <= a2 + g2 + e1\nR1 + 2*R2 <= 2*a2 + e1 + F1\n"},
};

std::string per_receiver(const char* pattern) {
  std::string out;
  for (const char* i : {"1", "2"}) {
    for (const char* p = pattern; *p; ++p) {
      if (*p == '#') {
        out += i;
      } else {
        out += *p;
      }
    }
  }
  return out;
}

}  // namespace

std::vector<std::string> system_labels() {
  std::vector<std::string> out;
  for (const auto& s : kSystems) out.emplace_back(s.label);
  return out;
}

InequalitySystem named_system(const std::string& label) {
  for (const auto& s : kSystems)
    if (label == s.label) return parse_system(s.text);
  std::string known;
  for (const auto& s : kSystems) known += std::string(known.empty() ? "" : ", ") + s.label;
  throw ArgumentError("unknown system '" + label + "' (known: " + known + ")");
}

InequalitySystem structural_relations(Family family) {
  switch (family) {
    case Family::HK:
      return parse_system(per_receiver(
          "a# <= d#\na# <= e#\nb# <= d#\nb# <= f#\nc# <= e#\nc# <= f#\n"
          "d# <= g#\ne# <= g#\nf# <= g#\n"
          "d# <= a# + b#\ne# <= a# + c#\nf# <= b# + c#\n"
          "g# + a# <= d# + e#\ng# + b# <= d# + f#\n"));
    case Family::HOD:
      return parse_system(per_receiver(
          "a# <= d#\na# <= e#\nd# <= g#\ne# <= g#\nB# <= F#\nC# <= F#\n"
          "d# <= a# + B#\ne# <= a# + C#\nF# <= B# + C#\n"
          "g# + a# <= d# + e#\ng# + B# <= d# + F#\n"));
    case Family::CMG:
      return parse_system(
          per_receiver("A# <= D#\nA# <= E#\nD# <= G#\nE# <= G#\nG# + A# <= D# + E#\n"));
  }
  throw ArgumentError("unknown family");
}

InequalitySystem exchange_relations() {
  return parse_system("c1 + g1 <= e1 + f1\nc2 + g2 <= e2 + f2\n");
}

Family family_of_system(const std::string& label) {
  named_system(label);  // validates the label
  if (label.rfind("CMG", 0) == 0) return Family::CMG;
  if (label.rfind("HOD", 0) == 0) return Family::HOD;
  return Family::HK;
}

}  // namespace icr
