#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "icregion/channel.hpp"
#include "icregion/coding.hpp"
#include "icregion/coefficients.hpp"

namespace icr {

inline constexpr double kCheckTolerance = 1e-9;

struct CheckResult {
  std::string name;
  bool pass = true;
  double max_residual = 0;  // violation for orders, |difference| for identities
  std::size_t evaluated = 0;
  std::size_t failures = 0;
  std::string witness;  // spec JSON and detail of the first failure
};

struct ComparisonReport {
  std::vector<CheckResult> checks;

  bool pass() const;
  // Folds `other` in: same-named checks merge, new names append in order.
  void merge(const ComparisonReport& other);
  const CheckResult* find(const std::string& name) const;

  std::string to_json(const std::string& manifest_json = "") const;
  std::string to_table() const;
};

// Test hook: rewrites the HK bundle of spec `index` before the checks use it.
using Tamper = std::function<void(std::size_t index, HKCoefficients&)>;

// HK specs only: cross-term bounds c_i <= e_i, the exchange relations, and
// the superposition order and equality a >= A, d >= D, e >= E, g >= G.
ComparisonReport check_order_relations(const CodingSpec& spec, const DiscreteIC& ch,
                                       std::size_t index = 0, const Tamper& tamper = {});

// Region equalities and containments for HK specs; correlation and
// coefficient-order checks for HOD specs; compact containment for CMG specs.
ComparisonReport check_containments(const CodingSpec& spec, const DiscreteIC& ch,
                                    std::size_t index = 0, const Tamper& tamper = {});

// Both checks on every spec (order relations on HK specs only), run in
// parallel and reduced in spec order.
ComparisonReport run_suite(const std::vector<CodingSpec>& specs, const DiscreteIC& ch,
                           const Tamper& tamper = {});

// Report of the checks on one spec, as used by run_suite.
ComparisonReport spec_report(const CodingSpec& spec, const DiscreteIC& ch, std::size_t index,
                             const Tamper& tamper);

}  // namespace icr
