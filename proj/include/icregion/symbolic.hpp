#pragma once

#include <gmpxx.h>

#include <compare>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace icr {

using Rational = mpq_class;

// Case-insensitive name order, lowercase first on ties: a1 < b1 < B1 < c1.
struct SymbolLess {
  bool operator()(const std::string& a, const std::string& b) const;
};

// Sparse linear form with exact rational coefficients plus a constant.
// Zero coefficients are never stored.
class LinExpr {
 public:
  using Terms = std::map<std::string, Rational, SymbolLess>;

  LinExpr() = default;
  explicit LinExpr(Rational constant) : constant_(std::move(constant)) {}
  static LinExpr symbol(const std::string& name, Rational coef = 1);

  const Terms& terms() const { return terms_; }
  const Rational& constant() const { return constant_; }
  Rational coeff(const std::string& name) const;
  bool has(const std::string& name) const { return terms_.count(name) != 0; }
  bool is_zero() const { return terms_.empty() && constant_ == 0; }
  bool is_constant() const { return terms_.empty(); }

  void add(const std::string& name, const Rational& coef);
  void set_constant(Rational c) { constant_ = std::move(c); }
  void erase(const std::string& name) { terms_.erase(name); }

  LinExpr& operator+=(const LinExpr& o);
  LinExpr& operator-=(const LinExpr& o);
  LinExpr& operator*=(const Rational& k);
  friend LinExpr operator+(LinExpr a, const LinExpr& b) { return a += b; }
  friend LinExpr operator-(LinExpr a, const LinExpr& b) { return a -= b; }
  friend LinExpr operator*(LinExpr a, const Rational& k) { return a *= k; }

  // Every coefficient and the constant are >= 0.
  bool all_nonnegative() const;
  // Every coefficient is <= 0 (constant ignored).
  bool all_terms_nonpositive() const;

  bool operator==(const LinExpr& o) const;
  std::strong_ordering compare(const LinExpr& o) const;

  double evaluate(const std::map<std::string, double>& values) const;  // throws on unbound
  std::string to_string() const;

 private:
  Terms terms_;
  Rational constant_ = 0;
};

LinExpr parse_expr(std::string_view text);  // throws ParseError

// lhs <= rhs. lhs ranges over rate variables, rhs over region symbols.
struct LinearInequality {
  LinExpr lhs;
  LinExpr rhs;

  // Positive rescaling so that the lhs (or, if lhs vanishes, the rhs) has
  // integer coefficients with gcd 1; constants move to the rhs.
  LinearInequality normalized() const;
  // rhs - lhs as one form; for relations among symbols, a nonnegative quantity.
  LinExpr slack() const;
  bool operator==(const LinearInequality& o) const { return lhs == o.lhs && rhs == o.rhs; }
  std::strong_ordering compare(const LinearInequality& o) const;

  std::string to_string() const;
};

LinearInequality parse_inequality(std::string_view line);

class InequalitySystem {
 public:
  InequalitySystem() = default;
  explicit InequalitySystem(std::vector<LinearInequality> rows) : rows_(std::move(rows)) {}

  const std::vector<LinearInequality>& rows() const { return rows_; }
  std::size_t size() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }
  void push_back(LinearInequality r) { rows_.push_back(std::move(r)); }

  // Normalized rows, sorted, duplicates removed.
  InequalitySystem canonical() const;
  bool same_set(const InequalitySystem& o) const;
  bool contains(const LinearInequality& row) const;  // up to normalization

  std::vector<std::string> variables() const;  // names on the lhs
  std::vector<std::string> symbols() const;    // names on the rhs

  // One inequality per line.
  std::string to_text() const;

 private:
  std::vector<LinearInequality> rows_;
};

// Parses one inequality per line; blank lines and '#' comments are skipped.
InequalitySystem parse_system(std::string_view text);

// Replaces rhs symbol names, e.g. {"f1" -> "F1"}.
InequalitySystem rename_symbols(const InequalitySystem& sys,
                                const std::map<std::string, std::string>& renames);

}  // namespace icr
