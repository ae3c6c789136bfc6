#include "icregion/kernels.hpp"

#include <algorithm>
#include <exception>

#include "icregion/errors.hpp"

namespace icr {

std::vector<IntRow> integer_rows(const InequalitySystem& sys, const std::vector<std::string>& vars,
                                 const std::map<std::string, std::int64_t>& values) {
  if (vars.size() > 4) throw ArgumentError("integer rows support at most four variables");
  std::vector<IntRow> out;
  for (const auto& row : sys.rows()) {
    Rational bound = row.rhs.constant() - row.lhs.constant();
    for (const auto& [name, k] : row.rhs.terms()) {
      auto it = values.find(name);
      if (it == values.end()) throw ArgumentError("unbound symbol " + name);
      bound += k * Rational(static_cast<long>(it->second));
    }
    std::array<Rational, 4> coef;
    for (const auto& [name, k] : row.lhs.terms()) {
      auto it = std::find(vars.begin(), vars.end(), name);
      if (it == vars.end()) throw ArgumentError("unexpected variable " + name);
      coef[static_cast<std::size_t>(it - vars.begin())] = k;
    }
    mpz_class scale = bound.get_den();
    for (const auto& c : coef) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), c.get_den_mpz_t());
    IntRow r;
    for (std::size_t i = 0; i < 4; ++i) {
      const Rational v = coef[i] * scale;
      r.coef[i] = v.get_num().get_si();
    }
    // floor: integer points only
    const Rational b = bound * scale;
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), b.get_num_mpz_t(), b.get_den_mpz_t());
    r.bound = fl.get_si();
    out.push_back(r);
  }
  return out;
}

namespace {

bool satisfies(const std::vector<IntRow>& rows, std::int64_t x0, std::int64_t x1, std::int64_t x2,
               std::int64_t x3) {
  for (const auto& r : rows) {
    if (r.coef[0] * x0 + r.coef[1] * x1 + r.coef[2] * x2 + r.coef[3] * x3 > r.bound) return false;
  }
  return true;
}

// Upper bound per variable implied by a single row with nonnegative
// coefficients; valid because every variable is nonnegative.
std::array<std::int64_t, 4> variable_caps(const std::vector<IntRow>& rows, std::int64_t n) {
  std::array<std::int64_t, 4> cap = {n, n, n, n};
  for (const auto& r : rows) {
    if (std::any_of(r.coef.begin(), r.coef.end(), [](std::int64_t c) { return c < 0; })) continue;
    for (std::size_t k = 0; k < 4; ++k) {
      if (r.coef[k] <= 0) continue;
      const std::int64_t c = r.bound < 0 ? -1 : r.bound / r.coef[k];
      cap[k] = std::min(cap[k], c);
    }
  }
  return cap;
}

bool split_feasible(const std::vector<IntRow>& split, const std::array<std::int64_t, 4>& cap,
                    std::int64_t r1, std::int64_t r2) {
  // (S1, T1, S2, T2) with T_i = R_i - S_i
  const std::int64_t lo1 = std::max<std::int64_t>(0, r1 - cap[1]);
  const std::int64_t hi1 = std::min(r1, cap[0]);
  const std::int64_t lo2 = std::max<std::int64_t>(0, r2 - cap[3]);
  const std::int64_t hi2 = std::min(r2, cap[2]);
  for (std::int64_t s1 = lo1; s1 <= hi1; ++s1)
    for (std::int64_t s2 = lo2; s2 <= hi2; ++s2)
      if (satisfies(split, s1, r1 - s1, s2, r2 - s2)) return true;
  return false;
}

struct RowTally {
  std::size_t feasible = 0;
  std::size_t disagreements = 0;
  std::int64_t first = -1;
};

RowTally grid_row(const std::vector<IntRow>& split, const std::vector<IntRow>& projected,
                  const std::array<std::int64_t, 4>& cap, std::int64_t r1, std::int64_t n) {
  RowTally t;
  for (std::int64_t r2 = 0; r2 <= n; ++r2) {
    const bool in_proj = satisfies(projected, r1, r2, 0, 0);
    const bool in_split = split_feasible(split, cap, r1, r2);
    if (in_proj) ++t.feasible;
    if (in_proj != in_split) {
      ++t.disagreements;
      if (t.first < 0) t.first = r2;
    }
  }
  return t;
}

GridOutcome reduce_rows(const std::vector<RowTally>& rows, std::int64_t n) {
  GridOutcome g;
  g.points = static_cast<std::size_t>((n + 1) * (n + 1));
  for (std::size_t r1 = 0; r1 < rows.size(); ++r1) {
    g.feasible += rows[r1].feasible;
    g.disagreements += rows[r1].disagreements;
    if (!g.first_disagreement && rows[r1].first >= 0)
      g.first_disagreement = std::array<std::int64_t, 2>{static_cast<std::int64_t>(r1), rows[r1].first};
  }
  return g;
}

}  // namespace

namespace par {

std::vector<SamplePolygon> sample_polygons(const SweepConfig& cfg) {
  const auto n = static_cast<std::int64_t>(cfg.size());
  std::vector<SamplePolygon> out(static_cast<std::size_t>(n));
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 8)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = sample_polygon(cfg, static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return out;
}

std::vector<ComparisonReport> spec_reports(const std::vector<CodingSpec>& specs,
                                           const DiscreteIC& ch, const Tamper& tamper) {
  const auto n = static_cast<std::int64_t>(specs.size());
  std::vector<ComparisonReport> out(specs.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    out[k] = spec_report(specs[k], ch, k, tamper);
  }
  return out;
}

GridOutcome grid_compare(const std::vector<IntRow>& split, const std::vector<IntRow>& projected,
                         std::int64_t n) {
  const auto cap = variable_caps(split, n);
  std::vector<RowTally> rows(static_cast<std::size_t>(n + 1));
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t r1 = 0; r1 <= n; ++r1)
    rows[static_cast<std::size_t>(r1)] = grid_row(split, projected, cap, r1, n);
  return reduce_rows(rows, n);
}

}  // namespace par

namespace ref {

std::vector<SamplePolygon> sample_polygons(const SweepConfig& cfg) {
  std::vector<SamplePolygon> out;
  for (std::size_t i = 0; i < cfg.size(); ++i) out.push_back(sample_polygon(cfg, i));
  return out;
}

std::vector<ComparisonReport> spec_reports(const std::vector<CodingSpec>& specs,
                                           const DiscreteIC& ch, const Tamper& tamper) {
  std::vector<ComparisonReport> out;
  for (std::size_t i = 0; i < specs.size(); ++i) out.push_back(spec_report(specs[i], ch, i, tamper));
  return out;
}

GridOutcome grid_compare(const std::vector<IntRow>& split, const std::vector<IntRow>& projected,
                         std::int64_t n) {
  std::vector<RowTally> rows;
  for (std::int64_t r1 = 0; r1 <= n; ++r1) {
    RowTally t;
    for (std::int64_t r2 = 0; r2 <= n; ++r2) {
      const bool in_proj = satisfies(projected, r1, r2, 0, 0);
      bool in_split = false;
      // plain scan of every split, no caps
      for (std::int64_t s1 = 0; s1 <= r1 && !in_split; ++s1)
        for (std::int64_t s2 = 0; s2 <= r2 && !in_split; ++s2)
          in_split = r1 - s1 <= n && r2 - s2 <= n && satisfies(split, s1, r1 - s1, s2, r2 - s2);
      if (in_proj) ++t.feasible;
      if (in_proj != in_split) {
        ++t.disagreements;
        if (t.first < 0) t.first = r2;
      }
    }
    rows.push_back(t);
  }
  return reduce_rows(rows, n);
}

}  // namespace ref

}  // namespace icr
