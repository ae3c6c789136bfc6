#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library's entropy, marginalize or assembly code.

#include <cmath>
#include <map>
#include <random>
#include <vector>

#include "icregion/channel.hpp"
#include "icregion/coding.hpp"
#include "icregion/coefficients.hpp"
#include "icregion/prob.hpp"

namespace oracle {

using icr::JointPMF;
using icr::Var;
using icr::VarSet;

inline std::vector<std::size_t> decode(const JointPMF& pmf, std::size_t flat) {
  const auto& axes = pmf.axes();
  std::vector<std::size_t> idx(axes.size());
  for (std::size_t k = axes.size(); k-- > 0;) {
    idx[k] = flat % axes[k].cardinality;
    flat /= axes[k].cardinality;
  }
  return idx;
}

inline std::vector<std::size_t> key(const JointPMF& pmf, const std::vector<std::size_t>& idx,
                                    VarSet s) {
  std::vector<std::size_t> k;
  for (std::size_t a = 0; a < pmf.axes().size(); ++a)
    if (s.contains(pmf.axes()[a].name)) k.push_back(idx[a]);
  return k;
}

// I(A;B|C) = sum p(abc) log2 p(abc) p(c) / (p(ac) p(bc)), summed literally.
inline double cmi(const JointPMF& pmf, VarSet a, VarSet b, VarSet c = {}) {
  std::map<std::vector<std::size_t>, double> pabc, pac, pbc, pc;
  for (std::size_t f = 0; f < pmf.size(); ++f) {
    const double p = pmf.probs()[f];
    const auto idx = decode(pmf, f);
    pabc[key(pmf, idx, a | b | c)] += p;
    pac[key(pmf, idx, a | c)] += p;
    pbc[key(pmf, idx, b | c)] += p;
    pc[key(pmf, idx, c)] += p;
  }
  double sum = 0;
  for (std::size_t f = 0; f < pmf.size(); ++f) {
    const auto idx = decode(pmf, f);
    const auto kabc = key(pmf, idx, a | b | c);
    auto it = pabc.find(kabc);
    if (it == pabc.end() || it->second <= 0) continue;
    const double p = it->second;
    sum += p * std::log2(p * pc[key(pmf, idx, c)] /
                         (pac[key(pmf, idx, a | c)] * pbc[key(pmf, idx, b | c)]));
    it->second = 0;  // each atom of the marginal once
  }
  return sum;
}

inline double entropy(const JointPMF& pmf, VarSet s) {
  std::map<std::vector<std::size_t>, double> m;
  for (std::size_t f = 0; f < pmf.size(); ++f) m[key(pmf, decode(pmf, f), s)] += pmf.probs()[f];
  double h = 0;
  for (const auto& [k, p] : m)
    if (p > 0) h -= p * std::log2(p);
  return h;
}

// Random pmf over the first n canonical variables, each of the given size.
inline JointPMF random_joint(std::mt19937_64& rng, std::size_t n, std::size_t card = 2,
                             double zero_fraction = 0.0) {
  std::vector<icr::VariableId> axes;
  std::size_t total = 1;
  for (std::size_t k = 0; k < n; ++k) {
    axes.push_back({static_cast<Var>(k), card});
    total *= card;
  }
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> p(total);
  double s = 0;
  for (auto& x : p) {
    x = u(rng) < zero_fraction ? 0.0 : -std::log(1.0 - u(rng));
    s += x;
  }
  if (s == 0) {
    p[0] = 1;
    s = 1;
  }
  for (auto& x : p) x /= s;
  return JointPMF(axes, p);
}

// Literal nested-loop product of the factors of the spec's distribution.
inline JointPMF assemble(const icr::CodingSpec& sp, const icr::DiscreteIC& ch) {
  const auto& c = sp.card;
  const std::size_t ny1 = ch.ny1(), ny2 = ch.ny2();
  if (sp.family == icr::Family::CMG) {
    std::vector<double> p;
    for (std::size_t q = 0; q < c.q; ++q)
      for (std::size_t w1 = 0; w1 < c.w1; ++w1)
        for (std::size_t w2 = 0; w2 < c.w2; ++w2)
          for (std::size_t x1 = 0; x1 < c.x1; ++x1)
            for (std::size_t x2 = 0; x2 < c.x2; ++x2)
              for (std::size_t y1 = 0; y1 < ny1; ++y1)
                for (std::size_t y2 = 0; y2 < ny2; ++y2)
                  p.push_back(sp.q_dist[q] * sp.s1.w_given_q[q * c.w1 + w1] *
                              sp.s2.w_given_q[q * c.w2 + w2] *
                              sp.s1.x_given_qw[(q * c.w1 + w1) * c.x1 + x1] *
                              sp.s2.x_given_qw[(q * c.w2 + w2) * c.x2 + x2] *
                              ch(x1, x2, y1, y2));
    return JointPMF({{Var::Q, c.q}, {Var::W1, c.w1}, {Var::W2, c.w2}, {Var::X1, c.x1},
                     {Var::X2, c.x2}, {Var::Y1, ny1}, {Var::Y2, ny2}},
                    p);
  }
  const bool hod = sp.family == icr::Family::HOD;
  auto pu = [&](const icr::SenderSpec& s, std::size_t nu, std::size_t nw, std::size_t q,
                std::size_t u, std::size_t w) {
    return hod ? s.u_given_qw[(q * nw + w) * nu + u] : s.u_given_q[q * nu + u];
  };
  std::vector<double> p;
  for (std::size_t q = 0; q < c.q; ++q)
    for (std::size_t u1 = 0; u1 < c.u1; ++u1)
      for (std::size_t w1 = 0; w1 < c.w1; ++w1)
        for (std::size_t u2 = 0; u2 < c.u2; ++u2)
          for (std::size_t w2 = 0; w2 < c.w2; ++w2)
            for (std::size_t x1 = 0; x1 < c.x1; ++x1)
              for (std::size_t x2 = 0; x2 < c.x2; ++x2)
                for (std::size_t y1 = 0; y1 < ny1; ++y1)
                  for (std::size_t y2 = 0; y2 < ny2; ++y2) {
                    const int f1 = sp.s1.encoder[(q * c.u1 + u1) * c.w1 + w1];
                    const int f2 = sp.s2.encoder[(q * c.u2 + u2) * c.w2 + w2];
                    double v = sp.q_dist[q] * sp.s1.w_given_q[q * c.w1 + w1] *
                               pu(sp.s1, c.u1, c.w1, q, u1, w1) *
                               sp.s2.w_given_q[q * c.w2 + w2] * pu(sp.s2, c.u2, c.w2, q, u2, w2);
                    if (static_cast<std::size_t>(f1) != x1 || static_cast<std::size_t>(f2) != x2)
                      v = 0;
                    p.push_back(v * ch(x1, x2, y1, y2));
                  }
  return JointPMF({{Var::Q, c.q}, {Var::U1, c.u1}, {Var::W1, c.w1}, {Var::U2, c.u2},
                   {Var::W2, c.w2}, {Var::X1, c.x1}, {Var::X2, c.x2}, {Var::Y1, ny1},
                   {Var::Y2, ny2}},
                  p);
}

// Terms of the joint-decoding region written out from their definitions.
inline icr::HKCoefficients hk(const JointPMF& p) {
  using enum Var;
  icr::HKCoefficients k;
  k.a1 = oracle::cmi(p, {Y1}, {U1}, {W1, W2, Q});
  k.b1 = oracle::cmi(p, {Y1}, {W1}, {U1, W2, Q});
  k.c1 = oracle::cmi(p, {Y1}, {W2}, {U1, W1, Q});
  k.d1 = oracle::cmi(p, {Y1}, {U1, W1}, {W2, Q});
  k.e1 = oracle::cmi(p, {Y1}, {U1, W2}, {W1, Q});
  k.f1 = oracle::cmi(p, {Y1}, {W1, W2}, {U1, Q});
  k.g1 = oracle::cmi(p, {Y1}, {U1, W1, W2}, {Q});
  k.a2 = oracle::cmi(p, {Y2}, {U2}, {W1, W2, Q});
  k.b2 = oracle::cmi(p, {Y2}, {W2}, {U2, W1, Q});
  k.c2 = oracle::cmi(p, {Y2}, {W1}, {U2, W2, Q});
  k.d2 = oracle::cmi(p, {Y2}, {U2, W2}, {W1, Q});
  k.e2 = oracle::cmi(p, {Y2}, {U2, W1}, {W2, Q});
  k.f2 = oracle::cmi(p, {Y2}, {W1, W2}, {U2, Q});
  k.g2 = oracle::cmi(p, {Y2}, {U2, W1, W2}, {Q});
  return k;
}

inline icr::CMGCoefficients cmg(const JointPMF& p) {
  using enum Var;
  icr::CMGCoefficients k;
  k.A1 = oracle::cmi(p, {Y1}, {X1}, {W1, W2, Q});
  k.D1 = oracle::cmi(p, {Y1}, {X1}, {W2, Q});
  k.E1 = oracle::cmi(p, {Y1}, {X1, W2}, {W1, Q});
  k.G1 = oracle::cmi(p, {Y1}, {X1, W2}, {Q});
  k.A2 = oracle::cmi(p, {Y2}, {X2}, {W1, W2, Q});
  k.D2 = oracle::cmi(p, {Y2}, {X2}, {W1, Q});
  k.E2 = oracle::cmi(p, {Y2}, {X2, W1}, {W2, Q});
  k.G2 = oracle::cmi(p, {Y2}, {X2, W1}, {Q});
  return k;
}

inline double rho(const JointPMF& p, int i) {
  using enum Var;
  return i == 1 ? oracle::cmi(p, {U1}, {W1}, {Q}) : oracle::cmi(p, {U2}, {W2}, {Q});
}

}  // namespace oracle
