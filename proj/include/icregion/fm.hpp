#pragma once

#include <optional>
#include <string>
#include <vector>

#include "icregion/coding.hpp"
#include "icregion/symbolic.hpp"

namespace icr {

// target = sum of parts, e.g. R1 = S1 + T1.
struct Substitution {
  std::string target;
  std::vector<std::string> parts;
};

enum class Pruning {
  None,       // duplicates only
  Dominance,  // plus rows beaten by another row with the same lhs
  Full,       // plus rows implied by a combination of the remaining rows
};

struct ProjectOptions {
  // Relations among rhs symbols that pruning may assume.
  InequalitySystem side;
  Pruning pruning = Pruning::Full;
};

struct ProjectionResult {
  InequalitySystem system;  // canonical order
  std::vector<std::string> warnings;
  std::size_t raw_rows = 0;  // rows produced by elimination before pruning
};

// Exact Fourier-Motzkin projection. Every variable of sys is taken to be
// nonnegative. Each substitution is solved for its first part that appears in
// `eliminate`, then the remaining eliminated variables are removed in order.
ProjectionResult project(const InequalitySystem& sys, const std::vector<std::string>& eliminate,
                         const std::vector<Substitution>& subs, const ProjectOptions& opts = {});

// Rate-splitting substitutions R1 = S1 + T1, R2 = S2 + T2.
std::vector<Substitution> rate_split();
std::vector<std::string> split_variables();  // S1, T1, S2, T2

// Multipliers proving target from generators and side relations:
//   lhs_t = sum_g w_g lhs_g - sum_v kappa_v v,  kappa >= 0
//   rhs_t = sum_g w_g rhs_g + sum_k mu_k slack_k + sum_s nu_s s + nu_0
// where rate variables and symbols are nonnegative.
struct Certificate {
  std::vector<Rational> generator_weights;
  std::vector<Rational> side_weights;
  std::map<std::string, Rational, SymbolLess> rate_slack;
  std::map<std::string, Rational, SymbolLess> symbol_slack;
  Rational constant_slack = 0;
};

std::optional<Certificate> certificate(const LinearInequality& target,
                                       const InequalitySystem& generators,
                                       const InequalitySystem& side);

// Recomputes the combination exactly; true iff the certificate proves target.
bool verify_certificate(const Certificate& cert, const LinearInequality& target,
                        const InequalitySystem& generators, const InequalitySystem& side);

// True iff side relations and symbol nonnegativity imply 0 <= e.
bool implied_nonnegative(const LinExpr& e, const InequalitySystem& side);

std::vector<std::string> system_labels();
// Rate systems exactly as published; unknown label -> ArgumentError.
InequalitySystem named_system(const std::string& label);

// Relations among the bundle symbols that hold for every joint of the family.
// The HK set leaves out the exchange relation c_i + g_i <= e_i + f_i.
InequalitySystem structural_relations(Family family);
// c_i + g_i <= e_i + f_i for i = 1, 2.
InequalitySystem exchange_relations();
// Family whose symbols a named system uses (HK-*, CMG-*, HOD-*).
Family family_of_system(const std::string& label);

}  // namespace icr
