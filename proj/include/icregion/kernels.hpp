#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "icregion/compare.hpp"
#include "icregion/search.hpp"
#include "icregion/symbolic.hpp"

// Data-parallel loops. par:: runs them under OpenMP, ref:: is the plain serial
// loop kept for testing; both return identical results in identical order.

namespace icr {

// sum_k coef[k] * x[k] <= bound over at most four integer variables.
struct IntRow {
  std::array<std::int64_t, 4> coef{};
  std::int64_t bound = 0;
};

// Scales each row of sys to integers after binding symbols to integer values.
// `vars` names the variable of each coefficient slot.
std::vector<IntRow> integer_rows(const InequalitySystem& sys, const std::vector<std::string>& vars,
                                 const std::map<std::string, std::int64_t>& values);

struct GridOutcome {
  std::size_t points = 0;
  std::size_t feasible = 0;  // points inside the projected system
  std::size_t disagreements = 0;
  std::optional<std::array<std::int64_t, 2>> first_disagreement;
};

// For every (R1, R2) in {0..n}^2, compares membership in `projected` (over R1,
// R2) with the existence of S1, S2 such that (S1, R1-S1, S2, R2-S2) in
// {0..n}^4 satisfies `split` (over S1, T1, S2, T2).
namespace par {
std::vector<SamplePolygon> sample_polygons(const SweepConfig& cfg);
std::vector<ComparisonReport> spec_reports(const std::vector<CodingSpec>& specs,
                                           const DiscreteIC& ch, const Tamper& tamper = {});
GridOutcome grid_compare(const std::vector<IntRow>& split, const std::vector<IntRow>& projected,
                         std::int64_t n);
}  // namespace par

namespace ref {
std::vector<SamplePolygon> sample_polygons(const SweepConfig& cfg);
std::vector<ComparisonReport> spec_reports(const std::vector<CodingSpec>& specs,
                                           const DiscreteIC& ch, const Tamper& tamper = {});
GridOutcome grid_compare(const std::vector<IntRow>& split, const std::vector<IntRow>& projected,
                         std::int64_t n);
}  // namespace ref

}  // namespace icr
