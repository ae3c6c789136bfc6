#include "icregion/compare.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

#include "icregion/errors.hpp"
#include "icregion/fm.hpp"
#include "icregion/kernels.hpp"
#include "icregion/polygon.hpp"
#include "json.hpp"

namespace icr {

namespace {

class Recorder {
 public:
  Recorder(const CodingSpec& spec, std::size_t index) : spec_(spec), index_(index) {}

  void leq(const std::string& name, double lhs, double rhs, double tol = kCheckTolerance) {
    add(name, std::max(0.0, lhs - rhs), tol, fmt::format("{} vs {}", lhs, rhs));
  }
  void eq(const std::string& name, double lhs, double rhs, double tol = kCheckTolerance) {
    add(name, std::abs(lhs - rhs), tol, fmt::format("{} vs {}", lhs, rhs));
  }
  void add(const std::string& name, double residual, double tol, const std::string& detail) {
    CheckResult c;
    c.name = name;
    c.max_residual = residual;
    c.evaluated = 1;
    c.pass = residual <= tol;
    if (!c.pass) {
      c.failures = 1;
      c.witness = fmt::format("spec #{}: {} (residual {}); spec {}", index_, detail, residual,
                              spec_.to_json());
    }
    report_.checks.push_back(std::move(c));
  }

  // a inside b, measured at the vertices of a
  void contains(const std::string& name, const RatePolygon& b, const RatePolygon& a,
                double tol = kRegionEqualTolerance) {
    const auto s = subset(a, b, tol);
    std::string detail = "all vertices inside";
    if (s.witness) detail = fmt::format("vertex ({}, {}) outside", s.witness->r1, s.witness->r2);
    add(name, s.max_violation, tol, detail);
  }
  void equal(const std::string& name, const RatePolygon& a, const RatePolygon& b,
             double tol = kRegionEqualTolerance) {
    const auto ab = subset(a, b, tol);
    const auto ba = subset(b, a, tol);
    std::string detail = "regions match";
    if (ab.witness) {
      detail = fmt::format("vertex ({}, {}) of the first region outside the second",
                           ab.witness->r1, ab.witness->r2);
    } else if (ba.witness) {
      detail = fmt::format("vertex ({}, {}) of the second region outside the first",
                           ba.witness->r1, ba.witness->r2);
    }
    add(name, std::max(ab.max_violation, ba.max_violation), tol, detail);
  }

  ComparisonReport take() { return std::move(report_); }

 private:
  const CodingSpec& spec_;
  std::size_t index_;
  ComparisonReport report_;
};

RatePolygon region(const std::string& label, const SymbolValues& values) {
  return instantiate(named_system(label), values);
}

// b, c, f and rho per receiver straight from cmi, bypassing the bundles.
struct DirectTerms {
  double b[2], c[2], f[2], rho[2];
};

DirectTerms direct_terms(const JointPMF& pmf) {
  using V = Var;
  DirectTerms t{};
  t.b[0] = cmi(pmf, {V::Y1}, {V::W1}, {V::U1, V::W2, V::Q});
  t.c[0] = cmi(pmf, {V::Y1}, {V::W2}, {V::U1, V::W1, V::Q});
  t.f[0] = cmi(pmf, {V::Y1}, {V::W1, V::W2}, {V::U1, V::Q});
  t.rho[0] = cmi(pmf, {V::U1}, {V::W1}, {V::Q});
  t.b[1] = cmi(pmf, {V::Y2}, {V::W2}, {V::U2, V::W1, V::Q});
  t.c[1] = cmi(pmf, {V::Y2}, {V::W1}, {V::U2, V::W2, V::Q});
  t.f[1] = cmi(pmf, {V::Y2}, {V::W1, V::W2}, {V::U2, V::Q});
  t.rho[1] = cmi(pmf, {V::U2}, {V::W2}, {V::Q});
  return t;
}

void binning_identities(Recorder& rec, const HodtaniCoefficients& hod, const DirectTerms& d) {
  const double B[2] = {hod.B1, hod.B2}, C[2] = {hod.C1, hod.C2}, F[2] = {hod.F1, hod.F2};
  for (int i = 0; i < 2; ++i) {
    const int n = i + 1;
    rec.eq(fmt::format("binning-identity.B{0}=b{0}+rho{0}", n), B[i], d.b[i] + d.rho[i]);
    rec.eq(fmt::format("binning-identity.C{0}=c{0}+rho{0}", n), C[i], d.c[i] + d.rho[i]);
    rec.eq(fmt::format("binning-identity.F{0}=f{0}+rho{0}", n), F[i], d.f[i] + d.rho[i]);
  }
}

}  // namespace

bool ComparisonReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
}

const CheckResult* ComparisonReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

void ComparisonReport::merge(const ComparisonReport& other) {
  for (const auto& c : other.checks) {
    auto it = std::find_if(checks.begin(), checks.end(),
                           [&](const CheckResult& x) { return x.name == c.name; });
    if (it == checks.end()) {
      checks.push_back(c);
      continue;
    }
    it->pass = it->pass && c.pass;
    it->max_residual = std::max(it->max_residual, c.max_residual);
    it->evaluated += c.evaluated;
    it->failures += c.failures;
    if (it->witness.empty()) it->witness = c.witness;
  }
}

std::string ComparisonReport::to_json(const std::string& manifest_json) const {
  nlohmann::ordered_json j;
  if (!manifest_json.empty()) j["manifest"] = nlohmann::ordered_json::parse(manifest_json);
  j["pass"] = pass();
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json e;
    e["name"] = c.name;
    e["pass"] = c.pass;
    e["evaluated"] = c.evaluated;
    e["failures"] = c.failures;
    e["max_residual"] = c.max_residual;
    if (!c.witness.empty()) e["witness"] = c.witness;
    j["checks"].push_back(std::move(e));
  }
  return j.dump(2) + "\n";
}

std::string ComparisonReport::to_table() const {
  std::size_t width = 5;
  for (const auto& c : checks) width = std::max(width, c.name.size());
  std::string out = fmt::format("{:<{}}  {:>9}  {:>8}  {:>12}  {}\n", "check", width, "evaluated",
                                "failures", "max_residual", "status");
  for (const auto& c : checks) {
    out += fmt::format("{:<{}}  {:>9}  {:>8}  {:>12.3e}  {}\n", c.name, width, c.evaluated,
                       c.failures, c.max_residual, c.pass ? "PASS" : "FAIL");
  }
  for (const auto& c : checks)
    if (!c.pass) out += fmt::format("witness for {}: {}\n", c.name, c.witness);
  out += fmt::format("overall: {}\n", pass() ? "PASS" : "FAIL");
  return out;
}

ComparisonReport check_order_relations(const CodingSpec& spec, const DiscreteIC& ch,
                                       std::size_t index, const Tamper& tamper) {
  if (spec.family != Family::HK) throw ArgumentError("order relations need an HK spec");
  const auto joint = assemble_joint(spec, ch);
  HKCoefficients hk = eval_hk(joint);
  if (tamper) tamper(index, hk);
  const auto cmg = eval_cmg(assemble_joint(cmg_projection_of_hk(spec), ch));

  Recorder rec(spec, index);
  rec.leq("cross-term-bound.c1<=e1", hk.c1, hk.e1);
  rec.leq("cross-term-bound.c2<=e2", hk.c2, hk.e2);
  rec.leq("exchange.c1+g1<=e1+f1", hk.c1 + hk.g1, hk.e1 + hk.f1);
  rec.leq("exchange.c2+g2<=e2+f2", hk.c2 + hk.g2, hk.e2 + hk.f2);
  const std::pair<double, double> pairs[] = {{hk.a1, cmg.A1}, {hk.d1, cmg.D1}, {hk.e1, cmg.E1},
                                             {hk.g1, cmg.G1}, {hk.a2, cmg.A2}, {hk.d2, cmg.D2},
                                             {hk.e2, cmg.E2}, {hk.g2, cmg.G2}};
  const char* names[] = {"a1", "d1", "e1", "g1", "a2", "d2", "e2", "g2"};
  for (std::size_t k = 0; k < 8; ++k) {
    std::string upper = names[k];
    upper[0] = static_cast<char>(upper[0] - 'a' + 'A');
    rec.leq(fmt::format("superposition-order.{}>={}", names[k], upper), pairs[k].second,
            pairs[k].first);
  }
  for (std::size_t k = 0; k < 8; ++k) {
    std::string upper = names[k];
    upper[0] = static_cast<char>(upper[0] - 'a' + 'A');
    rec.eq(fmt::format("superposition-equality.{}={}", names[k], upper), pairs[k].first,
           pairs[k].second);
  }
  return rec.take();
}

ComparisonReport check_containments(const CodingSpec& spec, const DiscreteIC& ch,
                                    std::size_t index, const Tamper& tamper) {
  const auto joint = assemble_joint(spec, ch);
  Recorder rec(spec, index);

  if (spec.family == Family::CMG) {
    const auto values = eval_cmg(joint).symbols();
    rec.contains("region-contains.CMG-R-compact>=CMG-R", region("CMG-R-compact", values),
                 region("CMG-R", values));
    return rec.take();
  }

  HKCoefficients hk = eval_hk(joint);
  if (tamper) tamper(index, hk);
  const DirectTerms d = direct_terms(joint.pmf);
  const HodtaniCoefficients hod = add_correlation(hk, d.rho[0], d.rho[1]);
  binning_identities(rec, hod, d);
  const auto hk_values = hk.symbols();
  const auto hod_values = hod.symbols();

  if (spec.family == Family::HK) {
    rec.leq("independence.rho1=0", d.rho[0], 0.0);
    rec.leq("independence.rho2=0", d.rho[1], 0.0);
    const auto cmg_values = eval_cmg(assemble_joint(cmg_projection_of_hk(spec), ch)).symbols();
    const auto hk_r = region("HK-R", hk_values);
    const auto cmg_r = region("CMG-R", cmg_values);
    rec.equal("region-equal.HOD-R=HK-R", region("HOD-R", hod_values), hk_r);
    rec.equal("region-equal.HK-R-13=HK-R", region("HK-R-13", hk_values), hk_r);
    rec.contains("region-contains.CMG-R>=HK-R", cmg_r, hk_r);
    rec.contains("region-contains.CMG-R-compact>=CMG-R", region("CMG-R-compact", cmg_values),
                 cmg_r);
    return rec.take();
  }

  // HOD
  rec.leq("correlation-nonnegative.rho1>=0", 0.0, d.rho[0], 1e-10);
  rec.leq("correlation-nonnegative.rho2>=0", 0.0, d.rho[1], 1e-10);
  rec.leq("coef-order.B1>=b1", d.b[0], hod.B1);
  rec.leq("coef-order.C1>=c1", d.c[0], hod.C1);
  rec.leq("coef-order.F1>=f1", d.f[0], hod.F1);
  rec.leq("coef-order.B2>=b2", d.b[1], hod.B2);
  rec.leq("coef-order.C2>=c2", d.c[1], hod.C2);
  rec.leq("coef-order.F2>=f2", d.f[1], hod.F2);
  const auto appendix = appendix_consistency(joint);
  rec.add("appendix-consistency", appendix.max_residual, kCheckTolerance,
          "binning rows do not reproduce the bundle");
  rec.contains("region-contains.HOD-R>=HK-R", region("HOD-R", hod_values),
               region("HK-R", hk_values));
  return rec.take();
}

ComparisonReport spec_report(const CodingSpec& spec, const DiscreteIC& ch, std::size_t index,
                             const Tamper& tamper) {
  ComparisonReport r;
  try {
    if (spec.family == Family::HK) r.merge(check_order_relations(spec, ch, index, tamper));
    r.merge(check_containments(spec, ch, index, tamper));
  } catch (const std::exception& e) {
    CheckResult c;
    c.name = "evaluation";
    c.pass = false;
    c.evaluated = 1;
    c.failures = 1;
    c.witness = fmt::format("spec #{}: {}; spec {}", index, e.what(), spec.to_json());
    r.checks.push_back(std::move(c));
  }
  return r;
}

ComparisonReport run_suite(const std::vector<CodingSpec>& specs, const DiscreteIC& ch,
                           const Tamper& tamper) {
  ComparisonReport out;
  for (const auto& r : par::spec_reports(specs, ch, tamper)) out.merge(r);
  return out;
}

}  // namespace icr
