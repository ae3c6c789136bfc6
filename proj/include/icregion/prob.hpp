#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace icr {

// Random variables of the modified interference channel, in canonical axis order.
enum class Var : std::uint8_t { Q, U1, W1, U2, W2, X1, X2, Y1, Y2 };

inline constexpr std::size_t kNumVars = 9;

std::string_view var_name(Var v);
Var parse_var(std::string_view name);  // throws IdentifierError

// Small set of variables stored as a bitmask over Var.
class VarSet {
 public:
  constexpr VarSet() = default;
  constexpr VarSet(std::initializer_list<Var> vars) {
    for (Var v : vars) bits_ |= bit(v);
  }
  static constexpr VarSet from_bits(std::uint16_t b) {
    VarSet s;
    s.bits_ = b;
    return s;
  }

  constexpr bool contains(Var v) const { return (bits_ & bit(v)) != 0; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::uint16_t bits() const { return bits_; }
  constexpr bool subset_of(VarSet o) const { return (bits_ & ~o.bits_) == 0; }
  constexpr bool disjoint(VarSet o) const { return (bits_ & o.bits_) == 0; }

  constexpr VarSet operator|(VarSet o) const { return from_bits(bits_ | o.bits_); }
  constexpr VarSet operator&(VarSet o) const { return from_bits(bits_ & o.bits_); }
  constexpr bool operator==(const VarSet&) const = default;

  std::string to_string() const;

 private:
  static constexpr std::uint16_t bit(Var v) {
    return static_cast<std::uint16_t>(1u << static_cast<unsigned>(v));
  }
  std::uint16_t bits_ = 0;
};

struct VariableId {
  Var name;
  std::size_t cardinality;
};

// Dense probability tensor, row-major over `axes` (last axis fastest).
class JointPMF {
 public:
  JointPMF(std::vector<VariableId> axes, std::vector<double> probs);

  const std::vector<VariableId>& axes() const { return axes_; }
  std::span<const double> probs() const { return probs_; }
  std::size_t size() const { return probs_.size(); }
  VarSet variables() const;
  bool has(Var v) const { return variables().contains(v); }
  std::size_t axis_of(Var v) const;  // throws IdentifierError
  std::size_t cardinality(Var v) const { return axes_[axis_of(v)].cardinality; }

  double at(std::span<const std::size_t> index) const;
  std::vector<std::size_t> strides() const;

 private:
  std::vector<VariableId> axes_;
  std::vector<double> probs_;
};

inline constexpr double kNormTolerance = 1e-9;
inline constexpr double kZeroProbability = 1e-15;
inline constexpr double kNegativeInfoTolerance = 1e-10;

JointPMF marginalize(const JointPMF& pmf, VarSet keep);

// Shannon entropy in bits of the marginal over `vars`.
double entropy(const JointPMF& pmf, VarSet vars);

// I(A;B|C) in bits. Overlapping sets raise ArgumentError; values in
// [-1e-10, 0) clamp to zero, anything lower raises NumericalIntegrityError.
double cmi(const JointPMF& pmf, VarSet a, VarSet b, VarSet c = {});

// Same quantity without the clamp or the integrity check.
double cmi_unclamped(const JointPMF& pmf, VarSet a, VarSet b, VarSet c = {});

// Entropy memo over one joint. Not thread-safe; use one per evaluation.
class InfoCalculator {
 public:
  explicit InfoCalculator(const JointPMF& pmf) : pmf_(pmf) {}

  double entropy(VarSet vars);
  double cmi(VarSet a, VarSet b, VarSet c = {});
  const JointPMF& pmf() const { return pmf_; }

 private:
  const JointPMF& pmf_;
  std::unordered_map<std::uint16_t, double> cache_;
};

}  // namespace icr
