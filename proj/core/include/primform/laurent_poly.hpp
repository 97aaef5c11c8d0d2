#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "primform/symbol.hpp"

namespace primform {

using Rational = mpq_class;

Rational parse_rational(std::string_view text);
/// Canonical a/b.
inline Rational ratio(long a, long b) {
  Rational r(a, b);
  r.canonicalize();
  return r;
}
std::string to_string(const Rational& r);

/// Power product of symbols with integer (possibly negative) exponents.
/// Stored sparse, sorted by symbol rank, without zero exponents.
class Monomial {
 public:
  using Power = std::pair<std::uint32_t, std::int32_t>;

  Monomial() = default;
  static Monomial of(Symbol s, int exponent = 1);

  const std::vector<Power>& powers() const { return powers_; }
  bool is_one() const { return powers_.empty(); }

  int exponent(Symbol s) const;
  int total_degree() const;
  bool is_polynomial() const;
  bool involves(Symbol s) const { return exponent(s) != 0; }

  Monomial with_exponent(Symbol s, int exponent) const;
  Monomial without(Symbol s) const { return with_exponent(s, 0); }
  Monomial inverse() const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend Monomial operator/(const Monomial& a, const Monomial& b) {
    return a * b.inverse();
  }
  friend bool operator==(const Monomial&, const Monomial&) = default;

  std::string to_string() const;

 private:
  std::vector<Power> powers_;
};

/// Lexicographic order on dense exponent vectors in symbol rank order.
struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Per-symbol minimum of two monomials.
Monomial monomial_min(const Monomial& a, const Monomial& b);

/// Exponential coordinate rule: symbol `exp_symbol` stands for exp(coordinate),
/// so d/d(coordinate) exp_symbol^k = k exp_symbol^k.
struct ExpRule {
  Symbol exp_symbol;
  Symbol coordinate;
};

/// Sparse multivariate Laurent polynomial over the rationals.
///
/// Variables, deformation coordinates and formal parameters are all symbols;
/// the distinction is made by the caller. No zero coefficient is ever stored.
class LaurentPoly {
 public:
  using TermMap = std::map<Monomial, Rational, MonomialLess>;

  LaurentPoly() = default;
  LaurentPoly(const Rational& c);  // NOLINT(google-explicit-constructor)
  LaurentPoly(long c) : LaurentPoly(Rational(c)) {}  // NOLINT
  LaurentPoly(int c) : LaurentPoly(Rational(c)) {}   // NOLINT

  static LaurentPoly variable(Symbol s, int exponent = 1);
  static LaurentPoly variable(std::string_view name, int exponent = 1) {
    return variable(Symbol::intern(name), exponent);
  }
  static LaurentPoly term(const Rational& c, const Monomial& m);

  /// Parses expressions such as "z + q*E1*z^-1 - 1/2*(t0+1)^2".
  static LaurentPoly parse(std::string_view text);

  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_monomial() const { return terms_.size() == 1; }
  bool is_polynomial() const;

  Rational constant_term() const;
  /// Value of a constant polynomial; throws if the polynomial is not constant.
  Rational constant_value() const;

  /// Leading term in lexicographic order.
  std::pair<Monomial, Rational> leading_term() const;
  std::pair<Monomial, Rational> trailing_term() const;

  /// Inverse of a unit (a single term); nullopt otherwise.
  std::optional<LaurentPoly> unit_inverse() const;

  int degree(Symbol s) const;
  int low_degree(Symbol s) const;
  bool involves(Symbol s) const;
  std::vector<Symbol> symbols() const;
  /// Total degree over the given symbols (max over terms).
  int total_degree(std::span<const Symbol> over) const;
  /// Per-symbol minimum exponent over all terms.
  Monomial min_monomial() const;

  LaurentPoly coefficient(Symbol s, int k) const;
  std::map<int, LaurentPoly> coefficients(Symbol s) const;

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const LaurentPoly& o);
  LaurentPoly operator-() const;
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.terms_ == b.terms_;
  }

  LaurentPoly scaled(const Rational& c) const;
  LaurentPoly times(const Monomial& m) const;
  LaurentPoly pow(int n) const;

  /// Partial derivative in s. Exponential rules make exp symbols depend on s.
  LaurentPoly diff(Symbol s, std::span<const ExpRule> rules = {}) const;
  /// s * d/ds: multiplies each term by its s-exponent.
  LaurentPoly log_derivative(Symbol s) const;

  /// Simultaneous substitution. A negative exponent of a substituted symbol
  /// requires the replacement to be a unit.
  LaurentPoly substitute(const std::map<Symbol, LaurentPoly>& values) const;
  LaurentPoly substitute(Symbol s, const LaurentPoly& value) const {
    return substitute(std::map<Symbol, LaurentPoly>{{s, value}});
  }

  /// Drops all terms whose exponent of s exceeds max_exponent.
  LaurentPoly truncated(Symbol s, int max_exponent) const;
  /// Keeps only terms whose exponents in `over` sum to exactly `degree`.
  LaurentPoly homogeneous_part(std::span<const Symbol> over, int degree) const;

  std::string to_string() const;

 private:
  void add_term(const Monomial& m, const Rational& c);
  TermMap terms_;
};

std::ostream& operator<<(std::ostream& os, const LaurentPoly& p);

/// Exact division in the Laurent polynomial ring; nullopt when b does not divide a.
std::optional<LaurentPoly> divide_exact(const LaurentPoly& a, const LaurentPoly& b);

/// Greatest common divisor of two polynomials (non-negative exponents),
/// normalized to a lexicographically monic result. Recursive subresultant PRS.
LaurentPoly poly_gcd(const LaurentPoly& a, const LaurentPoly& b);

/// Antiderivative in coordinate s, consistent with exponential rules:
/// t^b E^m with m != 0 integrates to E^m times a polynomial in t.
LaurentPoly integrate(const LaurentPoly& p, Symbol s, std::span<const ExpRule> rules = {});

}  // namespace primform
