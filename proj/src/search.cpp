#include "icregion/search.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "icregion/coefficients.hpp"
#include "icregion/errors.hpp"
#include "icregion/fm.hpp"
#include "icregion/kernels.hpp"

namespace icr {

namespace {

std::string default_system(Family f) {
  switch (f) {
    case Family::HK:
      return "HK-R";
    case Family::CMG:
      return "CMG-R";
    case Family::HOD:
      return "HOD-R";
  }
  return "HK-R";
}

std::mt19937_64 stream_for(const SweepConfig& cfg, Family family, std::size_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                    static_cast<std::uint32_t>(family)};
  return std::mt19937_64(seq);
}

void dirichlet_rows(std::mt19937_64& rng, double alpha, std::size_t rows, std::size_t width,
                    std::vector<double>& out) {
  std::gamma_distribution<double> gamma(alpha, 1.0);
  out.assign(rows * width, 0.0);
  for (std::size_t r = 0; r < rows; ++r) {
    double sum = 0;
    for (std::size_t k = 0; k < width; ++k) sum += out[r * width + k] = gamma(rng);
    if (sum <= 0) {
      // all draws underflowed; fall back to a point mass
      out[r * width] = 1.0;
      continue;
    }
    for (std::size_t k = 0; k < width; ++k) out[r * width + k] /= sum;
  }
}

CodingSpec draw(const SweepConfig& cfg, Family family, std::size_t index) {
  auto rng = stream_for(cfg, family, index);
  CodingSpec s;
  s.family = family;
  s.card = cfg.card;
  const std::size_t nq = cfg.card.q;
  dirichlet_rows(rng, cfg.concentration, 1, nq, s.q_dist);
  for (int i : {1, 2}) {
    SenderSpec& o = s.sender(i);
    const std::size_t nu = s.nu(i), nw = s.nw(i), nx = s.nx(i);
    dirichlet_rows(rng, cfg.concentration, nq, nw, o.w_given_q);
    switch (family) {
      case Family::HK:
        dirichlet_rows(rng, cfg.concentration, nq, nu, o.u_given_q);
        break;
      case Family::HOD:
        dirichlet_rows(rng, cfg.concentration, nq * nw, nu, o.u_given_qw);
        break;
      case Family::CMG:
        dirichlet_rows(rng, cfg.concentration, nq * nw, nx, o.x_given_qw);
        break;
    }
    if (family != Family::CMG) {
      std::uniform_int_distribution<int> pick(0, static_cast<int>(nx) - 1);
      o.encoder.resize(nq * nu * nw);
      for (auto& x : o.encoder) x = pick(rng);
    }
  }
  return s;
}

double cross(Point o, Point a, Point b) {
  return (a.r1 - o.r1) * (b.r2 - o.r2) - (a.r2 - o.r2) * (b.r1 - o.r1);
}

struct Tagged {
  Point p;
  std::uint64_t hash;
};

}  // namespace

void SweepConfig::validate() const {
  if (samples < 1) throw ArgumentError("sample count must be at least 1");
  if (!(concentration > 0)) throw ArgumentError("concentration must be positive");
  if (embed_hk && family != Family::HOD) throw ArgumentError("embedding needs a HOD sweep");
  if (card.x1 != channel.nx1() || card.x2 != channel.nx2())
    throw ArgumentError("sweep input alphabets do not match the channel");
  family_of_system(region_label());
}

std::string SweepConfig::region_label() const {
  return system.empty() ? default_system(family) : system;
}

CodingSpec sample_spec(const SweepConfig& cfg, std::size_t index) {
  if (index >= cfg.samples) throw ArgumentError("sample index out of range");
  return draw(cfg, cfg.family, index);
}

SymbolValues region_symbols(const CodingSpec& spec, const DiscreteIC& ch) {
  const auto joint = assemble_joint(spec, ch);
  switch (spec.family) {
    case Family::HK:
      return eval_hk(joint).symbols();
    case Family::HOD:
      return eval_hodtani(joint).symbols();
    case Family::CMG:
      return eval_cmg(joint).symbols();
  }
  return {};
}

SamplePolygon sample_polygon(const SweepConfig& cfg, std::size_t slot) {
  CodingSpec spec = slot < cfg.samples ? draw(cfg, cfg.family, slot)
                                       : hod_embedding_of_hk(draw(cfg, Family::HK, slot - cfg.samples));
  const auto values = region_symbols(spec, cfg.channel);
  const auto poly = instantiate(named_system(cfg.region_label()), values);
  return {spec.hash(), vertices(poly)};
}

Frontier frontier_of(const std::vector<SamplePolygon>& polygons) {
  std::vector<Tagged> pts;
  for (const auto& sp : polygons)
    for (const auto& v : sp.vertices) pts.push_back({v, sp.spec_hash});
  Frontier f;
  if (pts.empty()) return f;

  std::stable_sort(pts.begin(), pts.end(), [](const Tagged& a, const Tagged& b) {
    return a.p.r1 < b.p.r1 || (a.p.r1 == b.p.r1 && a.p.r2 < b.p.r2);
  });
  // upper hull, left to right
  std::vector<Tagged> hull;
  for (const auto& t : pts) {
    if (!hull.empty() && std::abs(hull.back().p.r1 - t.p.r1) <= 1e-12 &&
        std::abs(hull.back().p.r2 - t.p.r2) <= 1e-12)
      continue;
    while (hull.size() >= 2 && cross(hull[hull.size() - 2].p, hull.back().p, t.p) >= -1e-12)
      hull.pop_back();
    hull.push_back(t);
  }
  // keep the part with nonnegative outward normals: from the highest point on
  auto top = std::max_element(hull.begin(), hull.end(), [](const Tagged& a, const Tagged& b) {
    return a.p.r2 < b.p.r2 || (a.p.r2 == b.p.r2 && a.p.r1 < b.p.r1);
  });
  std::vector<Tagged> chain(top, hull.end());
  auto add = [&f](Point p, std::uint64_t h) {
    f.vertices.push_back(p);
    f.spec_hash.push_back(h);
  };
  if (chain.front().p.r1 > 0) add({0.0, chain.front().p.r2}, chain.front().hash);
  for (const auto& t : chain) add(t.p, t.hash);
  if (chain.back().p.r2 > 0) add({chain.back().p.r1, 0.0}, chain.back().hash);
  return f;
}

Frontier union_frontier(const SweepConfig& cfg) {
  cfg.validate();
  return frontier_of(par::sample_polygons(cfg));
}

double Frontier::area() const {
  if (vertices.empty()) return 0.0;
  std::vector<Point> poly = {{0, 0}};
  for (auto it = vertices.rbegin(); it != vertices.rend(); ++it) poly.push_back(*it);
  return shoelace(poly);
}

RatePolygon Frontier::region() const {
  RatePolygon p;
  if (vertices.empty()) {
    p.halfplanes = {{1, 0, 0}, {0, 1, 0}};
    return p;
  }
  double max1 = 0, max2 = 0;
  for (const auto& v : vertices) {
    max1 = std::max(max1, v.r1);
    max2 = std::max(max2, v.r2);
  }
  p.halfplanes.push_back({1, 0, max1});
  p.halfplanes.push_back({0, 1, max2});
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
    const Point a = vertices[i], b = vertices[i + 1];
    // clockwise walk, outward normal points up and right
    const double nx = a.r2 - b.r2, ny = b.r1 - a.r1;
    const double n = std::hypot(nx, ny);
    if (n <= 1e-15 || nx < 0 || ny < 0) continue;
    p.halfplanes.push_back({nx / n, ny / n, (nx * a.r1 + ny * a.r2) / n});
  }
  return p;
}

std::string Frontier::to_csv(const std::string& header_comment) const {
  std::string out = header_comment + "R1,R2,spec_hash\n";
  for (std::size_t i = 0; i < vertices.size(); ++i)
    out += fmt::format("{},{},{:016x}\n", vertices[i].r1, vertices[i].r2, spec_hash[i]);
  return out;
}

UnionComparison compare_frontiers(const Frontier& a, const Frontier& b) {
  UnionComparison r;
  r.a = a;
  r.b = b;
  r.area_a = a.area();
  r.area_b = b.area();
  const RatePolygon ra = a.region(), rb = b.region();
  auto scan = [](const Frontier& f, const RatePolygon& other, double& excess, Point& at,
                 std::uint64_t& hash) {
    excess = 0;
    for (std::size_t i = 0; i < f.vertices.size(); ++i) {
      const double v = other.violation(f.vertices[i]);
      if (v > excess) {
        excess = v;
        at = f.vertices[i];
        hash = f.spec_hash[i];
      }
    }
  };
  Point pa, pb;
  std::uint64_t ha = 0, hb = 0;
  scan(a, rb, r.excess_a_over_b, pa, ha);
  scan(b, ra, r.excess_b_over_a, pb, hb);
  if (r.excess_a_over_b >= r.excess_b_over_a) {
    r.max_gap = r.excess_a_over_b;
    r.gap_point = pa;
    r.gap_spec_hash = ha;
  } else {
    r.max_gap = r.excess_b_over_a;
    r.gap_point = pb;
    r.gap_spec_hash = hb;
  }
  return r;
}

UnionComparison compare_unions(const SweepConfig& a, const SweepConfig& b) {
  if (a.channel.to_json() != b.channel.to_json())
    throw ArgumentError("compare_unions needs both sweeps on the same channel");
  return compare_frontiers(union_frontier(a), union_frontier(b));
}

}  // namespace icr
