#include "icregion/prob.hpp"

#include <array>
#include <cmath>
#include <numeric>
#include <sstream>

#include "icregion/errors.hpp"

namespace icr {

namespace {

constexpr std::array<std::string_view, kNumVars> kNames = {"Q",  "U1", "W1", "U2", "W2",
                                                           "X1", "X2", "Y1", "Y2"};

double entropy_of(std::span<const double> probs) {
  double h = 0.0;
  for (double p : probs) {
    if (p > kZeroProbability) h -= p * std::log2(p);
  }
  return h;
}

void check_subset(const JointPMF& pmf, VarSet vars) {
  if (!vars.subset_of(pmf.variables())) {
    throw IdentifierError("variables " + vars.to_string() + " not all present in joint over " +
                          pmf.variables().to_string());
  }
}

}  // namespace

std::string_view var_name(Var v) { return kNames[static_cast<std::size_t>(v)]; }

Var parse_var(std::string_view name) {
  for (std::size_t i = 0; i < kNumVars; ++i) {
    if (kNames[i] == name) return static_cast<Var>(i);
  }
  throw IdentifierError("unknown variable '" + std::string(name) + "'");
}

std::string VarSet::to_string() const {
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; i < kNumVars; ++i) {
    if (contains(static_cast<Var>(i))) {
      if (!first) out += ",";
      out += kNames[i];
      first = false;
    }
  }
  return out + "}";
}

JointPMF::JointPMF(std::vector<VariableId> axes, std::vector<double> probs)
    : axes_(std::move(axes)), probs_(std::move(probs)) {
  std::size_t expected = 1;
  VarSet seen;
  for (const auto& ax : axes_) {
    if (ax.cardinality < 1) throw ArgumentError("cardinality must be >= 1");
    if (seen.contains(ax.name)) {
      throw IdentifierError("duplicate variable " + std::string(var_name(ax.name)));
    }
    seen = seen | VarSet{ax.name};
    expected *= ax.cardinality;
  }
  if (expected != probs_.size()) {
    std::ostringstream msg;
    msg << "tensor length " << probs_.size() << " does not match product of cardinalities "
        << expected;
    throw ArgumentError(msg.str());
  }
  double total = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0)) throw ArgumentError("negative or NaN probability entry");
    total += p;
  }
  if (std::abs(total - 1.0) > kNormTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "probabilities sum to " << total;
    throw ArgumentError(msg.str());
  }
}

VarSet JointPMF::variables() const {
  VarSet s;
  for (const auto& ax : axes_) s = s | VarSet{ax.name};
  return s;
}

std::size_t JointPMF::axis_of(Var v) const {
  for (std::size_t i = 0; i < axes_.size(); ++i) {
    if (axes_[i].name == v) return i;
  }
  throw IdentifierError("variable " + std::string(var_name(v)) + " not in joint");
}

std::vector<std::size_t> JointPMF::strides() const {
  std::vector<std::size_t> s(axes_.size(), 1);
  for (std::size_t i = axes_.size(); i-- > 1;) s[i - 1] = s[i] * axes_[i].cardinality;
  return s;
}

double JointPMF::at(std::span<const std::size_t> index) const {
  if (index.size() != axes_.size()) throw ArgumentError("index rank mismatch");
  const auto st = strides();
  std::size_t flat = 0;
  for (std::size_t i = 0; i < index.size(); ++i) {
    if (index[i] >= axes_[i].cardinality) throw ArgumentError("index out of range");
    flat += index[i] * st[i];
  }
  return probs_[flat];
}

namespace {

// Marginal tensor over the axes of `pmf` contained in `keep`, in input order.
std::vector<double> marginal_probs(const JointPMF& pmf, VarSet keep,
                                   std::vector<VariableId>* kept_axes) {
  const auto& axes = pmf.axes();
  const std::size_t rank = axes.size();
  std::vector<std::size_t> out_stride(rank, 0);
  std::size_t out_size = 1;
  for (std::size_t i = rank; i-- > 0;) {
    if (keep.contains(axes[i].name)) {
      out_stride[i] = out_size;
      out_size *= axes[i].cardinality;
    }
  }
  if (kept_axes) {
    kept_axes->clear();
    for (const auto& ax : axes) {
      if (keep.contains(ax.name)) kept_axes->push_back(ax);
    }
  }
  std::vector<double> out(out_size, 0.0);
  std::vector<std::size_t> digit(rank, 0);
  std::size_t target = 0;
  const auto probs = pmf.probs();
  for (std::size_t flat = 0; flat < probs.size(); ++flat) {
    out[target] += probs[flat];
    // odometer increment, last axis fastest
    for (std::size_t i = rank; i-- > 0;) {
      ++digit[i];
      target += out_stride[i];
      if (digit[i] < axes[i].cardinality) break;
      target -= out_stride[i] * digit[i];
      digit[i] = 0;
    }
  }
  return out;
}

}  // namespace

JointPMF marginalize(const JointPMF& pmf, VarSet keep) {
  check_subset(pmf, keep);
  std::vector<VariableId> axes;
  auto probs = marginal_probs(pmf, keep, &axes);
  return JointPMF(std::move(axes), std::move(probs));
}

double entropy(const JointPMF& pmf, VarSet vars) {
  check_subset(pmf, vars);
  if (vars.empty()) return 0.0;
  return entropy_of(marginal_probs(pmf, vars, nullptr));
}

double cmi_unclamped(const JointPMF& pmf, VarSet a, VarSet b, VarSet c) {
  if (!a.disjoint(b) || !a.disjoint(c) || !b.disjoint(c)) {
    throw ArgumentError("cmi sets overlap: " + a.to_string() + " " + b.to_string() + " " +
                        c.to_string());
  }
  return entropy(pmf, a | c) + entropy(pmf, b | c) - entropy(pmf, a | b | c) - entropy(pmf, c);
}

namespace {

double clamp_info(double v, VarSet a, VarSet b, VarSet c) {
  if (v >= 0.0) return v;
  if (v >= -kNegativeInfoTolerance) return 0.0;
  std::ostringstream msg;
  msg.precision(17);
  msg << "I(" << a.to_string() << ";" << b.to_string() << "|" << c.to_string() << ") = " << v;
  throw NumericalIntegrityError(msg.str());
}

}  // namespace

double cmi(const JointPMF& pmf, VarSet a, VarSet b, VarSet c) {
  return clamp_info(cmi_unclamped(pmf, a, b, c), a, b, c);
}

double InfoCalculator::entropy(VarSet vars) {
  auto it = cache_.find(vars.bits());
  if (it != cache_.end()) return it->second;
  const double h = icr::entropy(pmf_, vars);
  cache_.emplace(vars.bits(), h);
  return h;
}

double InfoCalculator::cmi(VarSet a, VarSet b, VarSet c) {
  if (!a.disjoint(b) || !a.disjoint(c) || !b.disjoint(c)) {
    throw ArgumentError("cmi sets overlap: " + a.to_string() + " " + b.to_string() + " " +
                        c.to_string());
  }
  const double v = entropy(a | c) + entropy(b | c) - entropy(a | b | c) - entropy(c);
  return clamp_info(v, a, b, c);
}

}  // namespace icr
