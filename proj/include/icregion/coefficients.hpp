#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>

#include "icregion/coding.hpp"
#include "icregion/prob.hpp"

namespace icr {

// Numeric values for region symbols ("a1", "B2", "rho1", ...).
using SymbolValues = std::map<std::string, double>;

struct Provenance {
  std::uint64_t spec_hash = 0;
  std::uint64_t channel_hash = 0;
};

// Per-receiver mutual informations of the joint-decoding quadruple region.
struct HKCoefficients {
  double a1 = 0, b1 = 0, c1 = 0, d1 = 0, e1 = 0, f1 = 0, g1 = 0;
  double a2 = 0, b2 = 0, c2 = 0, d2 = 0, e2 = 0, f2 = 0, g2 = 0;
  Provenance provenance;

  SymbolValues symbols() const;
};

struct CMGCoefficients {
  double A1 = 0, D1 = 0, E1 = 0, G1 = 0;
  double A2 = 0, D2 = 0, E2 = 0, G2 = 0;
  Provenance provenance;

  SymbolValues symbols() const;
};

// HK terms with the correlation surplus rho_i = I(U_i;W_i|Q) added to the
// common-message terms.
struct HodtaniCoefficients {
  double a1 = 0, B1 = 0, C1 = 0, d1 = 0, e1 = 0, F1 = 0, g1 = 0;
  double a2 = 0, B2 = 0, C2 = 0, d2 = 0, e2 = 0, F2 = 0, g2 = 0;
  double rho1 = 0, rho2 = 0;
  Provenance provenance;

  SymbolValues symbols() const;
};

HKCoefficients eval_hk(const JointPMF& pmf);
HKCoefficients eval_hk(const AssembledJoint& j);
CMGCoefficients eval_cmg(const JointPMF& pmf);
CMGCoefficients eval_cmg(const AssembledJoint& j);
HodtaniCoefficients eval_hodtani(const JointPMF& pmf);
HodtaniCoefficients eval_hodtani(const AssembledJoint& j);

// Hodtani bundle from an HK bundle and the two correlation terms.
HodtaniCoefficients add_correlation(const HKCoefficients& hk, double rho1, double rho2);

// Rates of one sender's binned private codebook.
struct BinningBudget {
  double s_small = 0;  // rate of the pre-binning u-codebook
  double S = 0;        // bin (private message) rate
  double rho = 0;      // I(U_i;W_i|Q)

  bool satisfied(double tol = 1e-9) const { return rho <= s_small - S + tol; }
};

// Tight budget: s = S + rho.
BinningBudget tight_binning(double S, double rho);

// Right-hand sides of the seven per-receiver decoding constraints before the
// binning substitution, rows ordered (s), (T own), (T other), (s+T own),
// (s+T other), (T+T), (s+T+T).
std::array<double, 7> binning_decoding_bounds(const JointPMF& pmf, int receiver);

struct AppendixReport {
  std::array<double, 7> residual1{};
  std::array<double, 7> residual2{};
  double rho1 = 0, rho2 = 0;
  double max_residual = 0;
  bool pass = false;
};

// Substitutes S_i = s_i - rho_i into the binning decoding bounds and compares
// each row with the Hodtani bundle.
AppendixReport appendix_consistency(const JointPMF& pmf, double tol = 1e-9);
AppendixReport appendix_consistency(const AssembledJoint& j, double tol = 1e-9);

std::string to_json(const HKCoefficients& c);
std::string to_json(const CMGCoefficients& c);
std::string to_json(const HodtaniCoefficients& c);

}  // namespace icr
