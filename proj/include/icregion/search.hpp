#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "icregion/channel.hpp"
#include "icregion/coding.hpp"
#include "icregion/polygon.hpp"

namespace icr {

struct SweepConfig {
  Family family = Family::HK;
  Cardinalities card;
  std::size_t samples = 1;
  std::uint64_t seed = 0;
  double concentration = 1.0;  // symmetric Dirichlet parameter per conditional row
  DiscreteIC channel = builtin_channel("clean", {});
  std::string system;  // empty: the family's published rate region
  // HOD only: also sweep the HK specs of the same seed, rewritten as HOD.
  bool embed_hk = false;

  void validate() const;
  std::string region_label() const;
  // Number of polygons the sweep evaluates.
  std::size_t size() const { return embed_hk ? 2 * samples : samples; }
};

// Independent draw for (seed, index): conditional rows uniform on the simplex
// (Dirichlet), encoders uniform over all tables.
CodingSpec sample_spec(const SweepConfig& cfg, std::size_t index);

struct SamplePolygon {
  std::uint64_t spec_hash = 0;
  std::vector<Point> vertices;
};

// Polygon for sweep slot `slot` < cfg.size().
SamplePolygon sample_polygon(const SweepConfig& cfg, std::size_t slot);

// Coefficient values for the family's symbols on one spec.
SymbolValues region_symbols(const CodingSpec& spec, const DiscreteIC& ch);

struct Frontier {
  // From (0, max R2) to (max R1, 0), R2 non-increasing as R1 grows.
  std::vector<Point> vertices;
  std::vector<std::uint64_t> spec_hash;  // sample achieving each vertex

  double area() const;
  // Down-closed region under the frontier.
  RatePolygon region() const;
  std::string to_csv(const std::string& header_comment = "") const;
};

// Frontier of the convex hull of all polygons in order; deterministic.
Frontier frontier_of(const std::vector<SamplePolygon>& polygons);
Frontier union_frontier(const SweepConfig& cfg);

struct UnionComparison {
  Frontier a, b;
  double area_a = 0, area_b = 0;
  // Largest distance by which a vertex of one frontier lies outside the other.
  double excess_a_over_b = 0;
  double excess_b_over_a = 0;
  double max_gap = 0;  // the larger of the two
  Point gap_point;
  std::uint64_t gap_spec_hash = 0;
};

UnionComparison compare_unions(const SweepConfig& a, const SweepConfig& b);
UnionComparison compare_frontiers(const Frontier& a, const Frontier& b);

}  // namespace icr
