#include "icregion/symbolic.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "icregion/errors.hpp"

namespace icr {

bool SymbolLess::operator()(const std::string& a, const std::string& b) const {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    const int la = std::tolower(static_cast<unsigned char>(a[i]));
    const int lb = std::tolower(static_cast<unsigned char>(b[i]));
    if (la != lb) return la < lb;
  }
  if (a.size() != b.size()) return a.size() < b.size();
  // ties: lowercase sorts first
  return b < a;
}

LinExpr LinExpr::symbol(const std::string& name, Rational coef) {
  LinExpr e;
  e.add(name, coef);
  return e;
}

Rational LinExpr::coeff(const std::string& name) const {
  auto it = terms_.find(name);
  return it == terms_.end() ? Rational(0) : it->second;
}

void LinExpr::add(const std::string& name, const Rational& coef) {
  if (coef == 0) return;
  auto [it, inserted] = terms_.try_emplace(name, coef);
  if (!inserted) {
    it->second += coef;
    if (it->second == 0) terms_.erase(it);
  }
}

LinExpr& LinExpr::operator+=(const LinExpr& o) {
  for (const auto& [k, v] : o.terms_) add(k, v);
  constant_ += o.constant_;
  return *this;
}

LinExpr& LinExpr::operator-=(const LinExpr& o) {
  for (const auto& [k, v] : o.terms_) add(k, -v);
  constant_ -= o.constant_;
  return *this;
}

LinExpr& LinExpr::operator*=(const Rational& k) {
  if (k == 0) {
    terms_.clear();
    constant_ = 0;
    return *this;
  }
  for (auto& [name, v] : terms_) v *= k;
  constant_ *= k;
  return *this;
}

bool LinExpr::all_nonnegative() const {
  if (constant_ < 0) return false;
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second > 0; });
}

bool LinExpr::all_terms_nonpositive() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second < 0; });
}

bool LinExpr::operator==(const LinExpr& o) const {
  return constant_ == o.constant_ && terms_ == o.terms_;
}

namespace {

std::strong_ordering cmp(const Rational& a, const Rational& b) {
  const int c = ::cmp(a, b);
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

}  // namespace

std::strong_ordering LinExpr::compare(const LinExpr& o) const {
  auto a = terms_.begin();
  auto b = o.terms_.begin();
  SymbolLess less;
  for (; a != terms_.end() && b != o.terms_.end(); ++a, ++b) {
    if (a->first != b->first) {
      return less(a->first, b->first) ? std::strong_ordering::less
                                      : std::strong_ordering::greater;
    }
    // larger coefficient first, so 2*R1 + R2 precedes R1 + 2*R2
    if (auto c = cmp(b->second, a->second); c != 0) return c;
  }
  if (a != terms_.end()) return std::strong_ordering::greater;
  if (b != o.terms_.end()) return std::strong_ordering::less;
  return cmp(constant_, o.constant_);
}

double LinExpr::evaluate(const std::map<std::string, double>& values) const {
  double v = constant_.get_d();
  std::vector<std::string> missing;
  for (const auto& [name, k] : terms_) {
    auto it = values.find(name);
    if (it == values.end()) {
      missing.push_back(name);
      continue;
    }
    v += k.get_d() * it->second;
  }
  if (!missing.empty()) {
    std::string msg = "unbound symbols:";
    for (const auto& m : missing) msg += " " + m;
    throw ArgumentError(msg);
  }
  return v;
}

namespace {

std::string coef_prefix(const Rational& k) {
  if (k == 1) return "";
  return k.get_str() + "*";
}

}  // namespace

std::string LinExpr::to_string() const {
  std::string out;
  bool first = true;
  for (const auto& [name, k] : terms_) {
    if (first) {
      out += (k < 0 ? "-" : "") + coef_prefix(abs(Rational(k))) + name;
    } else {
      out += (k < 0 ? " - " : " + ") + coef_prefix(abs(Rational(k))) + name;
    }
    first = false;
  }
  if (first) return constant_.get_str();
  if (constant_ > 0) out += " + " + constant_.get_str();
  if (constant_ < 0) out += " - " + Rational(-constant_).get_str();
  return out;
}

namespace {

class ExprParser {
 public:
  explicit ExprParser(std::string_view s) : s_(s) {}

  LinExpr parse() {
    LinExpr e;
    skip();
    bool first = true;
    while (pos_ < s_.size()) {
      int sign = 1;
      if (s_[pos_] == '+' || s_[pos_] == '-') {
        if (s_[pos_] == '-') sign = -1;
        ++pos_;
        skip();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      term(e, sign);
      first = false;
      skip();
    }
    if (first) fail("empty expression");
    return e;
  }

 private:
  void term(LinExpr& e, int sign) {
    Rational k = 1;
    bool have_number = false;
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      k = number();
      have_number = true;
      skip();
      if (pos_ < s_.size() && s_[pos_] == '/') {
        ++pos_;
        skip();
        const Rational den = number();
        if (den == 0) fail("zero denominator");
        k /= den;
        skip();
      }
      if (pos_ < s_.size() && s_[pos_] == '*') {
        ++pos_;
        skip();
      } else if (pos_ >= s_.size() || !is_name_start(s_[pos_])) {
        e.set_constant(e.constant() + sign * k);
        return;
      }
    }
    if (pos_ >= s_.size() || !is_name_start(s_[pos_])) {
      fail(have_number ? "expected a name after '*'" : "expected a term");
    }
    const std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
      ++pos_;
    }
    e.add(std::string(s_.substr(start, pos_ - start)), sign * k);
  }

  Rational number() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    Rational r(std::string(s_.substr(start, pos_ - start)));
    if (pos_ < s_.size() && s_[pos_] == '.') {
      ++pos_;
      const std::size_t fs = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      const std::string frac(s_.substr(fs, pos_ - fs));
      if (!frac.empty()) {
        mpz_class den = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
        r += Rational(mpz_class(frac), den);
      }
    }
    r.canonicalize();
    return r;
  }

  static bool is_name_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("cannot parse '" + std::string(s_) + "' at column " +
                     std::to_string(pos_ + 1) + ": " + what);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

LinExpr parse_expr(std::string_view text) { return ExprParser(text).parse(); }

LinExpr LinearInequality::slack() const { return rhs - lhs; }

LinearInequality LinearInequality::normalized() const {
  LinearInequality out{lhs, rhs};
  // constants belong on the right
  if (out.lhs.constant() != 0) {
    out.rhs.set_constant(out.rhs.constant() - out.lhs.constant());
    out.lhs.set_constant(0);
  }
  const LinExpr& basis = out.lhs.is_zero() ? out.rhs : out.lhs;
  mpz_class num_gcd = 0, den_lcm = 1;
  for (const auto& [name, k] : basis.terms()) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), k.get_num_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), k.get_den_mpz_t());
  }
  if (basis.is_constant()) {
    if (basis.constant() == 0) return out;
    // 0 <= c: keep only the sign
    const int s = sgn(basis.constant());
    out.rhs = LinExpr(Rational(s));
    return out;
  }
  const Rational scale(den_lcm, num_gcd);
  out.lhs *= scale;
  out.rhs *= scale;
  return out;
}

std::strong_ordering LinearInequality::compare(const LinearInequality& o) const {
  auto weight = [](const LinExpr& e) {
    Rational w = 0;
    for (const auto& [n, k] : e.terms()) w += abs(Rational(k));
    return w;
  };
  if (auto c = cmp(weight(lhs), weight(o.lhs)); c != 0) return c;
  if (auto c = lhs.compare(o.lhs); c != 0) return c;
  return rhs.compare(o.rhs);
}

std::string LinearInequality::to_string() const { return lhs.to_string() + " <= " + rhs.to_string(); }

LinearInequality parse_inequality(std::string_view line) {
  const auto le = line.find("<=");
  const auto ge = line.find(">=");
  if (le == std::string_view::npos && ge == std::string_view::npos) {
    throw ParseError("inequality '" + std::string(line) + "' has no '<=' or '>='");
  }
  const bool is_le = le != std::string_view::npos;
  const auto at = is_le ? le : ge;
  LinExpr left = parse_expr(line.substr(0, at));
  LinExpr right = parse_expr(line.substr(at + 2));
  return is_le ? LinearInequality{std::move(left), std::move(right)}
               : LinearInequality{std::move(right), std::move(left)};
}

InequalitySystem InequalitySystem::canonical() const {
  std::vector<LinearInequality> out;
  out.reserve(rows_.size());
  for (const auto& r : rows_) out.push_back(r.normalized());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.compare(b) < 0; });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return InequalitySystem(std::move(out));
}

bool InequalitySystem::same_set(const InequalitySystem& o) const {
  return canonical().rows_ == o.canonical().rows_;
}

bool InequalitySystem::contains(const LinearInequality& row) const {
  const auto n = row.normalized();
  return std::any_of(rows_.begin(), rows_.end(), [&](const auto& r) { return r.normalized() == n; });
}

std::vector<std::string> InequalitySystem::variables() const {
  std::set<std::string, SymbolLess> names;
  for (const auto& r : rows_)
    for (const auto& [n, k] : r.lhs.terms()) names.insert(n);
  return {names.begin(), names.end()};
}

std::vector<std::string> InequalitySystem::symbols() const {
  std::set<std::string, SymbolLess> names;
  for (const auto& r : rows_)
    for (const auto& [n, k] : r.rhs.terms()) names.insert(n);
  return {names.begin(), names.end()};
}

std::string InequalitySystem::to_text() const {
  std::string out;
  for (const auto& r : rows_) out += r.to_string() + "\n";
  return out;
}

InequalitySystem parse_system(std::string_view text) {
  InequalitySystem sys;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    sys.push_back(parse_inequality(line));
  }
  return sys;
}

InequalitySystem rename_symbols(const InequalitySystem& sys,
                                const std::map<std::string, std::string>& renames) {
  InequalitySystem out;
  for (const auto& r : sys.rows()) {
    LinExpr rhs(r.rhs.constant());
    for (const auto& [name, k] : r.rhs.terms()) {
      auto it = renames.find(name);
      rhs.add(it == renames.end() ? name : it->second, k);
    }
    out.push_back({r.lhs, rhs});
  }
  return out;
}

}  // namespace icr
