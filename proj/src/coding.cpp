#include "icregion/coding.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "icregion/errors.hpp"
#include "json.hpp"

namespace icr {

using nlohmann::json;
using nlohmann::ordered_json;

std::string_view family_name(Family f) {
  switch (f) {
    case Family::HK: return "HK";
    case Family::CMG: return "CMG";
    case Family::HOD: return "HOD";
  }
  return "?";
}

Family parse_family(std::string_view name) {
  if (name == "HK") return Family::HK;
  if (name == "CMG") return Family::CMG;
  if (name == "HOD") return Family::HOD;
  throw ArgumentError("unknown family '" + std::string(name) + "'");
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

namespace {

void check_stochastic(const std::vector<double>& table, std::size_t rows, std::size_t cols,
                      const std::string& name) {
  if (table.size() != rows * cols) {
    throw ValidationError("table \"" + name + "\" has " + std::to_string(table.size()) +
                          " entries, expected " + std::to_string(rows * cols));
  }
  for (std::size_t r = 0; r < rows; ++r) {
    double sum = 0.0;
    for (std::size_t c = 0; c < cols; ++c) {
      const double v = table[r * cols + c];
      if (!(v >= 0.0) || !std::isfinite(v)) {
        throw ValidationError("table \"" + name + "\" row " + std::to_string(r) +
                              " has a negative or non-finite entry");
      }
      sum += v;
    }
    if (std::abs(sum - 1.0) > kNormTolerance) {
      std::ostringstream msg;
      msg.precision(12);
      msg << "table \"" << name << "\" row " << r << " sums to " << sum;
      throw ValidationError(msg.str());
    }
  }
}

std::string key(const char* stem, int i, const char* suffix = "") {
  return std::string(stem) + std::to_string(i) + suffix;
}

}  // namespace

void CodingSpec::validate() const {
  for (std::size_t n : {card.q, card.u1, card.w1, card.u2, card.w2, card.x1, card.x2}) {
    if (n < 1 || n > kMaxCardinality) {
      throw ValidationError("cardinalities must lie in [1, 4]");
    }
  }
  check_stochastic(q_dist, 1, card.q, "q");
  for (int i : {1, 2}) {
    const SenderSpec& s = sender(i);
    check_stochastic(s.w_given_q, card.q, nw(i), key("w", i, "_given_q"));
    switch (family) {
      case Family::HK:
        check_stochastic(s.u_given_q, card.q, nu(i), key("u", i, "_given_q"));
        break;
      case Family::HOD:
        check_stochastic(s.u_given_qw, card.q * nw(i), nu(i), key("u", i, "_given_qw") +
                                                                  std::to_string(i));
        break;
      case Family::CMG:
        check_stochastic(s.x_given_qw, card.q * nw(i), nx(i), key("x", i, "_given_qw") +
                                                                  std::to_string(i));
        break;
    }
    if (family != Family::CMG) {
      const std::size_t want = card.q * nu(i) * nw(i);
      if (s.encoder.size() != want) {
        throw ValidationError("encoder \"f" + std::to_string(i) + "\" has " +
                              std::to_string(s.encoder.size()) + " entries, expected " +
                              std::to_string(want));
      }
      for (int x : s.encoder) {
        if (x < 0 || static_cast<std::size_t>(x) >= nx(i)) {
          throw ValidationError("encoder \"f" + std::to_string(i) + "\" maps outside X" +
                                std::to_string(i));
        }
      }
    }
  }
}

namespace {

ordered_json rows_of(const std::vector<double>& flat, std::size_t cols) {
  ordered_json out = ordered_json::array();
  for (std::size_t r = 0; r * cols < flat.size(); ++r) {
    out.push_back(std::vector<double>(flat.begin() + r * cols, flat.begin() + (r + 1) * cols));
  }
  return out;
}

void flatten(const json& j, std::vector<double>& out, const std::string& name) {
  if (j.is_number()) {
    out.push_back(j.get<double>());
  } else if (j.is_array()) {
    for (const auto& v : j) flatten(v, out, name);
  } else {
    throw ParseError("field \"" + name + "\" must be a (nested) array of numbers");
  }
}

std::vector<double> table(const json& j, const std::string& name) {
  if (!j.contains(name)) throw ParseError("spec is missing field \"" + name + "\"");
  std::vector<double> out;
  flatten(j[name], out, name);
  return out;
}

}  // namespace

std::string CodingSpec::to_json() const {
  ordered_json j;
  j["family"] = family_name(family);
  ordered_json c;
  c["q"] = card.q;
  if (family != Family::CMG) {
    c["u1"] = card.u1;
  }
  c["w1"] = card.w1;
  if (family != Family::CMG) c["u2"] = card.u2;
  c["w2"] = card.w2;
  c["x1"] = card.x1;
  c["x2"] = card.x2;
  j["card"] = c;
  j["q"] = q_dist;
  for (int i : {1, 2}) {
    const SenderSpec& s = sender(i);
    const std::string n = std::to_string(i);
    j["w" + n + "_given_q"] = rows_of(s.w_given_q, nw(i));
    switch (family) {
      case Family::HK: j["u" + n + "_given_q"] = rows_of(s.u_given_q, nu(i)); break;
      case Family::HOD: j["u" + n + "_given_qw" + n] = rows_of(s.u_given_qw, nu(i)); break;
      case Family::CMG: j["x" + n + "_given_qw" + n] = rows_of(s.x_given_qw, nx(i)); break;
    }
    if (family != Family::CMG) j["f" + n] = s.encoder;
  }
  return j.dump();
}

std::uint64_t CodingSpec::hash() const { return fnv1a64(to_json()); }

CodingSpec load_spec(std::string_view document) {
  json j;
  try {
    j = json::parse(document);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("spec document: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("spec document must be a JSON object");
  if (!j.contains("family") || !j["family"].is_string()) {
    throw ParseError("spec field \"family\" must be one of HK, CMG, HOD");
  }
  CodingSpec spec;
  try {
    spec.family = parse_family(j["family"].get<std::string>());
  } catch (const ArgumentError&) {
    throw ParseError("spec field \"family\" must be one of HK, CMG, HOD");
  }
  if (!j.contains("card") || !j["card"].is_object()) {
    throw ParseError("spec field \"card\" must be an object");
  }
  const json& c = j["card"];
  auto card = [&](const char* k, std::size_t dflt, bool required) -> std::size_t {
    if (!c.contains(k)) {
      if (required) throw ParseError(std::string("spec field \"card.") + k + "\" is missing");
      return dflt;
    }
    if (!c[k].is_number_integer() || c[k].get<long long>() < 1) {
      throw ParseError(std::string("spec field \"card.") + k + "\" must be a positive integer");
    }
    return c[k].get<std::size_t>();
  };
  const bool has_u = spec.family != Family::CMG;
  spec.card.q = card("q", 1, false);
  spec.card.u1 = card("u1", 1, has_u);
  spec.card.w1 = card("w1", 1, true);
  spec.card.u2 = card("u2", 1, has_u);
  spec.card.w2 = card("w2", 1, true);
  spec.card.x1 = card("x1", 2, true);
  spec.card.x2 = card("x2", 2, true);
  spec.q_dist = table(j, "q");
  for (int i : {1, 2}) {
    SenderSpec& s = spec.sender(i);
    const std::string n = std::to_string(i);
    s.w_given_q = table(j, "w" + n + "_given_q");
    switch (spec.family) {
      case Family::HK: s.u_given_q = table(j, "u" + n + "_given_q"); break;
      case Family::HOD: s.u_given_qw = table(j, "u" + n + "_given_qw" + n); break;
      case Family::CMG: s.x_given_qw = table(j, "x" + n + "_given_qw" + n); break;
    }
    if (has_u) {
      std::vector<double> f = table(j, "f" + n);
      for (double v : f) {
        if (v != std::floor(v)) throw ParseError("encoder \"f" + n + "\" must hold integers");
        s.encoder.push_back(static_cast<int>(v));
      }
    }
  }
  spec.validate();
  return spec;
}

AssembledJoint assemble_joint(const CodingSpec& spec, const DiscreteIC& ch) {
  spec.validate();
  if (spec.card.x1 != ch.nx1() || spec.card.x2 != ch.nx2()) {
    throw ArgumentError("spec input alphabets (" + std::to_string(spec.card.x1) + "," +
                        std::to_string(spec.card.x2) + ") do not match channel (" +
                        std::to_string(ch.nx1()) + "," + std::to_string(ch.nx2()) + ")");
  }
  const auto& c = spec.card;
  const std::size_t ny1 = ch.ny1(), ny2 = ch.ny2();
  const std::size_t ny = ny1 * ny2;

  if (spec.family == Family::CMG) {
    std::vector<VariableId> axes = {{Var::Q, c.q},   {Var::W1, c.w1}, {Var::W2, c.w2},
                                    {Var::X1, c.x1}, {Var::X2, c.x2}, {Var::Y1, ny1},
                                    {Var::Y2, ny2}};
    std::vector<double> p(c.q * c.w1 * c.w2 * c.x1 * c.x2 * ny, 0.0);
    std::size_t flat = 0;
    for (std::size_t q = 0; q < c.q; ++q)
      for (std::size_t w1 = 0; w1 < c.w1; ++w1)
        for (std::size_t w2 = 0; w2 < c.w2; ++w2)
          for (std::size_t x1 = 0; x1 < c.x1; ++x1)
            for (std::size_t x2 = 0; x2 < c.x2; ++x2) {
              const double pin = spec.q_dist[q] * spec.s1.w_given_q[q * c.w1 + w1] *
                                 spec.s2.w_given_q[q * c.w2 + w2] *
                                 spec.s1.x_given_qw[(q * c.w1 + w1) * c.x1 + x1] *
                                 spec.s2.x_given_qw[(q * c.w2 + w2) * c.x2 + x2];
              for (std::size_t y1 = 0; y1 < ny1; ++y1)
                for (std::size_t y2 = 0; y2 < ny2; ++y2) p[flat++] = pin * ch(x1, x2, y1, y2);
            }
    return {JointPMF(std::move(axes), std::move(p)), spec, ch};
  }

  std::vector<VariableId> axes = {{Var::Q, c.q},   {Var::U1, c.u1}, {Var::W1, c.w1},
                                  {Var::U2, c.u2}, {Var::W2, c.w2}, {Var::X1, c.x1},
                                  {Var::X2, c.x2}, {Var::Y1, ny1},  {Var::Y2, ny2}};
  const std::size_t block = c.x1 * c.x2 * ny;
  std::vector<double> p(c.q * c.u1 * c.w1 * c.u2 * c.w2 * block, 0.0);
  auto u_prob = [&](int i, std::size_t q, std::size_t w, std::size_t u) {
    const SenderSpec& s = spec.sender(i);
    return spec.family == Family::HK ? s.u_given_q[q * spec.nu(i) + u]
                                     : s.u_given_qw[(q * spec.nw(i) + w) * spec.nu(i) + u];
  };
  std::size_t base = 0;
  for (std::size_t q = 0; q < c.q; ++q)
    for (std::size_t u1 = 0; u1 < c.u1; ++u1)
      for (std::size_t w1 = 0; w1 < c.w1; ++w1)
        for (std::size_t u2 = 0; u2 < c.u2; ++u2)
          for (std::size_t w2 = 0; w2 < c.w2; ++w2, base += block) {
            const double pin = spec.q_dist[q] * spec.s1.w_given_q[q * c.w1 + w1] *
                               u_prob(1, q, w1, u1) * spec.s2.w_given_q[q * c.w2 + w2] *
                               u_prob(2, q, w2, u2);
            if (pin == 0.0) continue;
            const auto x1 = static_cast<std::size_t>(spec.s1.encoder[(q * c.u1 + u1) * c.w1 + w1]);
            const auto x2 = static_cast<std::size_t>(spec.s2.encoder[(q * c.u2 + u2) * c.w2 + w2]);
            const std::size_t off = base + (x1 * c.x2 + x2) * ny;
            for (std::size_t y1 = 0; y1 < ny1; ++y1)
              for (std::size_t y2 = 0; y2 < ny2; ++y2)
                p[off + y1 * ny2 + y2] = pin * ch(x1, x2, y1, y2);
          }
  return {JointPMF(std::move(axes), std::move(p)), spec, ch};
}

namespace {

// max over q with p(q) > 0 of |p(ab|q) - p(a|q) p(b|q)| for variable groups a, b.
double independence_residual(const JointPMF& pmf, VarSet a, VarSet b) {
  const JointPMF m = marginalize(pmf, VarSet{Var::Q} | a | b);
  const JointPMF ma = marginalize(pmf, VarSet{Var::Q} | a);
  const JointPMF mb = marginalize(pmf, VarSet{Var::Q} | b);
  const std::size_t nq = pmf.cardinality(Var::Q);
  const std::size_t na = ma.size() / nq, nb = mb.size() / nq;
  // Q is the leading axis in canonical order; a precedes b for every caller.
  double worst = 0.0;
  for (std::size_t q = 0; q < nq; ++q) {
    double pq = 0.0;
    for (std::size_t i = 0; i < na; ++i) pq += ma.probs()[q * na + i];
    if (pq <= kZeroProbability) continue;
    for (std::size_t i = 0; i < na; ++i)
      for (std::size_t k = 0; k < nb; ++k) {
        const double joint = m.probs()[(q * na + i) * nb + k] / pq;
        const double prod = (ma.probs()[q * na + i] / pq) * (mb.probs()[q * nb + k] / pq);
        worst = std::max(worst, std::abs(joint - prod));
      }
  }
  return worst;
}

}  // namespace

FactorizationReport validate_factorization(const JointPMF& pmf, Family family) {
  FactorizationReport r;
  if (family == Family::CMG) {
    r.cross_residual = independence_residual(pmf, {Var::W1}, {Var::W2});
  } else {
    r.cross_residual = independence_residual(pmf, {Var::U1, Var::W1}, {Var::U2, Var::W2});
    r.within_residual = std::max(independence_residual(pmf, {Var::U1}, {Var::W1}),
                                 independence_residual(pmf, {Var::U2}, {Var::W2}));
    r.within_checked = family == Family::HK;
  }
  r.pass = r.cross_residual <= kNormTolerance &&
           (!r.within_checked || r.within_residual <= kNormTolerance);
  return r;
}

FactorizationReport validate_factorization(const AssembledJoint& j) {
  return validate_factorization(j.pmf, j.spec.family);
}

CodingSpec cmg_projection_of_hk(const CodingSpec& hk) {
  if (hk.family != Family::HK) throw ArgumentError("cmg_projection_of_hk requires an HK spec");
  hk.validate();
  CodingSpec out;
  out.family = Family::CMG;
  out.card = hk.card;
  out.card.u1 = out.card.u2 = 1;
  out.q_dist = hk.q_dist;
  for (int i : {1, 2}) {
    const SenderSpec& s = hk.sender(i);
    SenderSpec& o = out.sender(i);
    o.w_given_q = s.w_given_q;
    const std::size_t nq = hk.card.q, nu = hk.nu(i), nw = hk.nw(i), nx = hk.nx(i);
    o.x_given_qw.assign(nq * nw * nx, 0.0);
    for (std::size_t q = 0; q < nq; ++q)
      for (std::size_t w = 0; w < nw; ++w)
        for (std::size_t u = 0; u < nu; ++u) {
          const auto x = static_cast<std::size_t>(s.encoder[(q * nu + u) * nw + w]);
          o.x_given_qw[(q * nw + w) * nx + x] += s.u_given_q[q * nu + u];
        }
  }
  return out;
}

CodingSpec hod_embedding_of_hk(const CodingSpec& hk) {
  if (hk.family != Family::HK) throw ArgumentError("hod_embedding_of_hk requires an HK spec");
  CodingSpec out = hk;
  out.family = Family::HOD;
  for (int i : {1, 2}) {
    SenderSpec& o = out.sender(i);
    const std::size_t nq = hk.card.q, nu = hk.nu(i), nw = hk.nw(i);
    o.u_given_qw.resize(nq * nw * nu);
    for (std::size_t q = 0; q < nq; ++q)
      for (std::size_t w = 0; w < nw; ++w)
        for (std::size_t u = 0; u < nu; ++u) o.u_given_qw[(q * nw + w) * nu + u] = o.u_given_q[q * nu + u];
    o.u_given_q.clear();
  }
  return out;
}

}  // namespace icr
