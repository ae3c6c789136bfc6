#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "icregion/channel.hpp"
#include "icregion/prob.hpp"

namespace icr {

// HK: independent U_i, W_i given Q with deterministic encoders.
// CMG: X_i superimposed on (Q, W_i).
// HOD: U_i may depend on W_i given Q, deterministic encoders.
enum class Family { HK, CMG, HOD };

std::string_view family_name(Family f);
Family parse_family(std::string_view name);

struct Cardinalities {
  std::size_t q = 1;
  std::size_t u1 = 2, w1 = 2, u2 = 2, w2 = 2;
  std::size_t x1 = 2, x2 = 2;
};

// Component conditionals of one sender. Tables are flat and row-major with
// conditioning variables ordered (q, w); only the family's tables are used.
//   w_given_q  : [q][w]
//   u_given_q  : [q][u]      (HK)
//   u_given_qw : [q][w][u]   (HOD)
//   x_given_qw : [q][w][x]   (CMG)
//   encoder    : [q][u][w] -> x   (HK, HOD)
struct SenderSpec {
  std::vector<double> w_given_q;
  std::vector<double> u_given_q;
  std::vector<double> u_given_qw;
  std::vector<double> x_given_qw;
  std::vector<int> encoder;
};

struct CodingSpec {
  Family family = Family::HK;
  Cardinalities card;
  std::vector<double> q_dist;
  SenderSpec s1, s2;

  const SenderSpec& sender(int i) const { return i == 1 ? s1 : s2; }
  SenderSpec& sender(int i) { return i == 1 ? s1 : s2; }
  std::size_t nu(int i) const { return i == 1 ? card.u1 : card.u2; }
  std::size_t nw(int i) const { return i == 1 ? card.w1 : card.w2; }
  std::size_t nx(int i) const { return i == 1 ? card.x1 : card.x2; }

  // Throws ValidationError on any structural or normalization problem.
  void validate() const;

  std::string to_json() const;
  std::uint64_t hash() const;
};

CodingSpec load_spec(std::string_view document);

struct AssembledJoint {
  JointPMF pmf;
  CodingSpec spec;
  DiscreteIC channel;
};

AssembledJoint assemble_joint(const CodingSpec& spec, const DiscreteIC& ch);

struct FactorizationReport {
  double cross_residual = 0.0;   // max_q |p(u1w1u2w2|q) - p(u1w1|q) p(u2w2|q)|
  double within_residual = 0.0;  // max_{q,i} |p(u_i w_i|q) - p(u_i|q) p(w_i|q)|
  bool within_checked = false;   // HK only
  bool pass = false;
};

FactorizationReport validate_factorization(const JointPMF& pmf, Family family);
FactorizationReport validate_factorization(const AssembledJoint& j);

// CMG spec whose assembled joint equals the (Q,W1,W2,X1,X2,Y1,Y2) marginal
// of the HK joint.
CodingSpec cmg_projection_of_hk(const CodingSpec& hk);

// Rewrites an HK spec as a HOD spec with u|q,w = u|q.
CodingSpec hod_embedding_of_hk(const CodingSpec& hk);

std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace icr
