#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace icr {

// Two-user discrete memoryless interference channel p(y1,y2|x1,x2).
// Transition entries are stored row-major in (x1, x2, y1, y2).
class DiscreteIC {
 public:
  DiscreteIC(std::size_t nx1, std::size_t nx2, std::size_t ny1, std::size_t ny2,
             std::vector<double> trans);

  std::size_t nx1() const { return nx1_; }
  std::size_t nx2() const { return nx2_; }
  std::size_t ny1() const { return ny1_; }
  std::size_t ny2() const { return ny2_; }

  double operator()(std::size_t x1, std::size_t x2, std::size_t y1, std::size_t y2) const {
    return trans_[((x1 * nx2_ + x2) * ny1_ + y1) * ny2_ + y2];
  }
  std::span<const double> transitions() const { return trans_; }

  std::string to_json() const;

 private:
  std::size_t nx1_, nx2_, ny1_, ny2_;
  std::vector<double> trans_;
};

inline constexpr std::size_t kMaxCardinality = 4;
inline constexpr double kRowSumTolerance = 1e-9;

// Parses and validates the channel JSON document. Malformed text raises
// ParseError; bad entries raise ValidationError naming the (x1,x2) row.
DiscreteIC load_channel(std::string_view document);

// "clean", "xor-interference", or "symmetric-flip" (params = {p}, p in [0, 0.5]).
DiscreteIC builtin_channel(std::string_view name, std::span<const double> params = {});

}  // namespace icr
