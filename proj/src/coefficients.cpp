#include "icregion/coefficients.hpp"

#include <algorithm>
#include <cmath>

#include "icregion/errors.hpp"
#include "json.hpp"

namespace icr {

namespace {

void require(const JointPMF& pmf, VarSet vars, const char* what) {
  if (!vars.subset_of(pmf.variables())) {
    throw ArgumentError(std::string(what) + " needs variables " + vars.to_string() +
                        ", joint has " + pmf.variables().to_string());
  }
}

constexpr VarSet kHKVars{Var::Q, Var::U1, Var::W1, Var::U2, Var::W2, Var::Y1, Var::Y2};
constexpr VarSet kCMGVars{Var::Q, Var::W1, Var::W2, Var::X1, Var::X2, Var::Y1, Var::Y2};

Provenance provenance_of(const AssembledJoint& j) {
  return {j.spec.hash(), fnv1a64(j.channel.to_json())};
}

}  // namespace

SymbolValues HKCoefficients::symbols() const {
  return {{"a1", a1}, {"b1", b1}, {"c1", c1}, {"d1", d1}, {"e1", e1}, {"f1", f1}, {"g1", g1},
          {"a2", a2}, {"b2", b2}, {"c2", c2}, {"d2", d2}, {"e2", e2}, {"f2", f2}, {"g2", g2}};
}

SymbolValues CMGCoefficients::symbols() const {
  return {{"A1", A1}, {"D1", D1}, {"E1", E1}, {"G1", G1},
          {"A2", A2}, {"D2", D2}, {"E2", E2}, {"G2", G2}};
}

SymbolValues HodtaniCoefficients::symbols() const {
  return {{"a1", a1}, {"B1", B1}, {"C1", C1}, {"d1", d1}, {"e1", e1}, {"F1", F1},
          {"g1", g1}, {"a2", a2}, {"B2", B2}, {"C2", C2}, {"d2", d2}, {"e2", e2},
          {"F2", F2}, {"g2", g2}, {"rho1", rho1}, {"rho2", rho2}};
}

HKCoefficients eval_hk(const JointPMF& pmf) {
  require(pmf, kHKVars, "eval_hk");
  InfoCalculator info(pmf);
  using V = Var;
  HKCoefficients c;
  c.a1 = info.cmi({V::Y1}, {V::U1}, {V::W1, V::W2, V::Q});
  c.b1 = info.cmi({V::Y1}, {V::W1}, {V::U1, V::W2, V::Q});
  c.c1 = info.cmi({V::Y1}, {V::W2}, {V::U1, V::W1, V::Q});
  c.d1 = info.cmi({V::Y1}, {V::U1, V::W1}, {V::W2, V::Q});
  c.e1 = info.cmi({V::Y1}, {V::U1, V::W2}, {V::W1, V::Q});
  c.f1 = info.cmi({V::Y1}, {V::W1, V::W2}, {V::U1, V::Q});
  c.g1 = info.cmi({V::Y1}, {V::U1, V::W1, V::W2}, {V::Q});
  c.a2 = info.cmi({V::Y2}, {V::U2}, {V::W1, V::W2, V::Q});
  c.b2 = info.cmi({V::Y2}, {V::W2}, {V::U2, V::W1, V::Q});
  c.c2 = info.cmi({V::Y2}, {V::W1}, {V::U2, V::W2, V::Q});
  c.d2 = info.cmi({V::Y2}, {V::U2, V::W2}, {V::W1, V::Q});
  c.e2 = info.cmi({V::Y2}, {V::U2, V::W1}, {V::W2, V::Q});
  c.f2 = info.cmi({V::Y2}, {V::W1, V::W2}, {V::U2, V::Q});
  c.g2 = info.cmi({V::Y2}, {V::U2, V::W1, V::W2}, {V::Q});
  return c;
}

HKCoefficients eval_hk(const AssembledJoint& j) {
  auto c = eval_hk(j.pmf);
  c.provenance = provenance_of(j);
  return c;
}

CMGCoefficients eval_cmg(const JointPMF& pmf) {
  require(pmf, kCMGVars, "eval_cmg");
  InfoCalculator info(pmf);
  using V = Var;
  CMGCoefficients c;
  c.A1 = info.cmi({V::Y1}, {V::X1}, {V::W1, V::W2, V::Q});
  c.D1 = info.cmi({V::Y1}, {V::X1}, {V::W2, V::Q});
  c.E1 = info.cmi({V::Y1}, {V::X1, V::W2}, {V::W1, V::Q});
  c.G1 = info.cmi({V::Y1}, {V::X1, V::W2}, {V::Q});
  c.A2 = info.cmi({V::Y2}, {V::X2}, {V::W1, V::W2, V::Q});
  c.D2 = info.cmi({V::Y2}, {V::X2}, {V::W1, V::Q});
  c.E2 = info.cmi({V::Y2}, {V::X2, V::W1}, {V::W2, V::Q});
  c.G2 = info.cmi({V::Y2}, {V::X2, V::W1}, {V::Q});
  return c;
}

CMGCoefficients eval_cmg(const AssembledJoint& j) {
  auto c = eval_cmg(j.pmf);
  c.provenance = provenance_of(j);
  return c;
}

HodtaniCoefficients add_correlation(const HKCoefficients& hk, double rho1, double rho2) {
  HodtaniCoefficients h;
  h.a1 = hk.a1;
  h.B1 = hk.b1 + rho1;
  h.C1 = hk.c1 + rho1;
  h.d1 = hk.d1;
  h.e1 = hk.e1;
  h.F1 = hk.f1 + rho1;
  h.g1 = hk.g1;
  h.a2 = hk.a2;
  h.B2 = hk.b2 + rho2;
  h.C2 = hk.c2 + rho2;
  h.d2 = hk.d2;
  h.e2 = hk.e2;
  h.F2 = hk.f2 + rho2;
  h.g2 = hk.g2;
  h.rho1 = rho1;
  h.rho2 = rho2;
  h.provenance = hk.provenance;
  return h;
}

HodtaniCoefficients eval_hodtani(const JointPMF& pmf) {
  require(pmf, kHKVars, "eval_hodtani");
  const HKCoefficients hk = eval_hk(pmf);
  InfoCalculator info(pmf);
  const double rho1 = info.cmi({Var::U1}, {Var::W1}, {Var::Q});
  const double rho2 = info.cmi({Var::U2}, {Var::W2}, {Var::Q});
  return add_correlation(hk, rho1, rho2);
}

HodtaniCoefficients eval_hodtani(const AssembledJoint& j) {
  auto c = eval_hodtani(j.pmf);
  c.provenance = provenance_of(j);
  return c;
}

BinningBudget tight_binning(double S, double rho) { return {S + rho, S, rho}; }

std::array<double, 7> binning_decoding_bounds(const JointPMF& pmf, int receiver) {
  require(pmf, kHKVars, "binning_decoding_bounds");
  if (receiver != 1 && receiver != 2) throw ArgumentError("receiver must be 1 or 2");
  // Conditioning sets listed with Q first, mirroring the error-event analysis.
  const Var y = receiver == 1 ? Var::Y1 : Var::Y2;
  const Var u = receiver == 1 ? Var::U1 : Var::U2;
  const Var w = receiver == 1 ? Var::W1 : Var::W2;
  const Var v = receiver == 1 ? Var::W2 : Var::W1;
  const double rho = cmi(pmf, {u}, {w}, {Var::Q});
  return {
      rho + cmi(pmf, {y}, {u}, {Var::Q, w, v}),
      cmi(pmf, {y}, {w}, {v, u, Var::Q}) + rho,
      rho + cmi(pmf, {y}, {v}, {Var::Q, w, u}),
      cmi(pmf, {y}, {u, w}, {Var::Q, v}) + rho,
      cmi(pmf, {y}, {u, v}, {Var::Q, w}) + rho,
      cmi(pmf, {y}, {w, v}, {Var::Q, u}) + rho,
      cmi(pmf, {y}, {u, w, v}, {Var::Q}) + rho,
  };
}

namespace {

// Rows whose left side carries the pre-binning rate s_i.
constexpr std::array<bool, 7> kHasPrivate = {true, false, false, true, true, false, true};

}  // namespace

AppendixReport appendix_consistency(const JointPMF& pmf, double tol) {
  const HodtaniCoefficients h = eval_hodtani(pmf);
  AppendixReport r;
  r.rho1 = h.rho1;
  r.rho2 = h.rho2;
  const std::array<double, 7> want1 = {h.a1, h.B1, h.C1, h.d1, h.e1, h.F1, h.g1};
  const std::array<double, 7> want2 = {h.a2, h.B2, h.C2, h.d2, h.e2, h.F2, h.g2};
  const auto rows1 = binning_decoding_bounds(pmf, 1);
  const auto rows2 = binning_decoding_bounds(pmf, 2);
  for (std::size_t k = 0; k < 7; ++k) {
    const double shift1 = kHasPrivate[k] ? h.rho1 : 0.0;
    const double shift2 = kHasPrivate[k] ? h.rho2 : 0.0;
    r.residual1[k] = rows1[k] - shift1 - want1[k];
    r.residual2[k] = rows2[k] - shift2 - want2[k];
    r.max_residual =
        std::max({r.max_residual, std::abs(r.residual1[k]), std::abs(r.residual2[k])});
  }
  r.pass = r.max_residual <= tol;
  return r;
}

AppendixReport appendix_consistency(const AssembledJoint& j, double tol) {
  return appendix_consistency(j.pmf, tol);
}

namespace {

std::string dump_symbols(const SymbolValues& values, std::initializer_list<const char*> order,
                         const Provenance& p) {
  nlohmann::ordered_json j;
  for (const char* k : order) j[k] = values.at(k);
  j["spec_hash"] = p.spec_hash;
  j["channel_hash"] = p.channel_hash;
  return j.dump();
}

}  // namespace

std::string to_json(const HKCoefficients& c) {
  return dump_symbols(c.symbols(),
                      {"a1", "b1", "c1", "d1", "e1", "f1", "g1", "a2", "b2", "c2", "d2", "e2",
                       "f2", "g2"},
                      c.provenance);
}

std::string to_json(const CMGCoefficients& c) {
  return dump_symbols(c.symbols(), {"A1", "D1", "E1", "G1", "A2", "D2", "E2", "G2"},
                      c.provenance);
}

std::string to_json(const HodtaniCoefficients& c) {
  return dump_symbols(c.symbols(),
                      {"a1", "B1", "C1", "d1", "e1", "F1", "g1", "a2", "B2", "C2", "d2", "e2",
                       "F2", "g2", "rho1", "rho2"},
                      c.provenance);
}

}  // namespace icr
