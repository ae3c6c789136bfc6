#include "icregion/lp.hpp"

#include "icregion/errors.hpp"

namespace icr {

std::optional<std::vector<Rational>> find_nonnegative_solution(const RationalMatrix& A,
                                                               const std::vector<Rational>& b) {
  if (b.size() != A.rows) throw ArgumentError("rhs length does not match matrix rows");
  const std::size_t m = A.rows;
  const std::size_t n = A.cols;
  const std::size_t width = n + m + 1;  // originals, artificials, rhs
  std::vector<Rational> t(m * width);
  std::vector<Rational> cost(width);
  std::vector<std::size_t> basis(m);

  for (std::size_t i = 0; i < m; ++i) {
    const bool flip = b[i] < 0;
    Rational* row = &t[i * width];
    for (std::size_t j = 0; j < n; ++j) row[j] = flip ? Rational(-A(i, j)) : A(i, j);
    row[n + i] = 1;
    row[width - 1] = flip ? Rational(-b[i]) : b[i];
    basis[i] = n + i;
    for (std::size_t j = 0; j < n; ++j) cost[j] -= row[j];
    cost[width - 1] -= row[width - 1];
  }

  Rational ratio, best;
  for (;;) {
    std::size_t enter = width;
    for (std::size_t j = 0; j + 1 < width; ++j) {
      if (cost[j] < 0) {
        enter = j;
        break;
      }
    }
    if (enter == width) break;

    std::size_t leave = m;
    for (std::size_t i = 0; i < m; ++i) {
      const Rational& a = t[i * width + enter];
      if (a <= 0) continue;
      ratio = t[i * width + width - 1] / a;
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    // The phase-I objective is bounded below by zero.
    if (leave == m) break;

    Rational* prow = &t[leave * width];
    const Rational pivot = prow[enter];
    for (std::size_t j = 0; j < width; ++j) {
      if (prow[j] != 0) prow[j] /= pivot;
    }
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave) continue;
      Rational* row = &t[i * width];
      if (row[enter] == 0) continue;
      const Rational f = row[enter];
      for (std::size_t j = 0; j < width; ++j) {
        if (prow[j] != 0) row[j] -= f * prow[j];
      }
    }
    if (cost[enter] != 0) {
      const Rational f = cost[enter];
      for (std::size_t j = 0; j < width; ++j) {
        if (prow[j] != 0) cost[j] -= f * prow[j];
      }
    }
    basis[leave] = enter;
  }

  if (cost[width - 1] != 0) return std::nullopt;
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < n) x[basis[i]] = t[i * width + width - 1];
  }
  return x;
}

}  // namespace icr
