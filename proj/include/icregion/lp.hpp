#pragma once

#include <optional>
#include <vector>

#include "icregion/symbolic.hpp"

namespace icr {

// Dense row-major matrix of exact rationals.
struct RationalMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Rational> data;

  RationalMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}
  Rational& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

// Finds x >= 0 with A x = b, or nullopt when none exists.
// Phase-I simplex with Bland's rule over exact rationals, so it terminates and
// the answer is exact.
std::optional<std::vector<Rational>> find_nonnegative_solution(const RationalMatrix& A,
                                                               const std::vector<Rational>& b);

}  // namespace icr
