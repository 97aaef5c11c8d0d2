#pragma once

#include <map>
#include <span>
#include <string>

#include "primform/laurent_poly.hpp"

namespace primform {

/// Reduced quotient of Laurent polynomials.
///
/// Canonical form: a unit denominator is absorbed into the numerator (den == 1);
/// otherwise numerator and denominator are polynomials without common factor or
/// common monomial, and the denominator is lexicographically monic. Equal
/// functions therefore have identical representations.
class RatFunc {
 public:
  RatFunc() : den_(1) {}
  RatFunc(const LaurentPoly& num) : num_(num), den_(1) {}  // NOLINT
  RatFunc(const Rational& c) : num_(c), den_(1) {}         // NOLINT
  RatFunc(int c) : num_(c), den_(1) {}                     // NOLINT
  RatFunc(const LaurentPoly& num, const LaurentPoly& den);

  static RatFunc parse(std::string_view num, std::string_view den = "1");

  const LaurentPoly& num() const { return num_; }
  const LaurentPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_laurent_poly() const { return den_ == LaurentPoly(1); }
  bool is_constant() const { return is_laurent_poly() && num_.is_constant(); }
  bool involves(Symbol s) const { return num_.involves(s) || den_.involves(s); }

  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }
  RatFunc operator-() const;
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  friend bool operator==(const RatFunc&, const RatFunc&) = default;

  RatFunc inverse() const;
  RatFunc pow(int n) const;
  RatFunc diff(Symbol s, std::span<const ExpRule> rules = {}) const;
  RatFunc log_derivative(Symbol s) const;
  RatFunc substitute(const std::map<Symbol, LaurentPoly>& values) const;

  std::string to_string() const;

 private:
  void reduce();
  LaurentPoly num_;
  LaurentPoly den_;
};

std::ostream& operator<<(std::ostream& os, const RatFunc& r);

enum class ExpansionPoint { Zero, Infinity };

/// Truncated Laurent expansion of r in `var`. At zero, terms with exponent
/// <= `order` are produced; at infinity, terms with exponent >= `order`.
/// Coefficients are Laurent polynomials in the remaining symbols, so the
/// extreme coefficient of the denominator must be a unit there.
std::map<int, LaurentPoly> laurent_expand(const RatFunc& r, Symbol var, ExpansionPoint point,
                                          int order);
/// Same, for an unreduced quotient num/den.
std::map<int, LaurentPoly> laurent_expand(const LaurentPoly& num, const LaurentPoly& den, Symbol var,
                                          ExpansionPoint point, int order);

/// Coefficient of var^-1 in the expansion at the given point.
LaurentPoly expansion_residue_coefficient(const RatFunc& r, Symbol var, ExpansionPoint point);

/// Sum of residues of r(var) d(var) over all finite poles, excluding var = 0
/// when `exclude_origin` holds.
LaurentPoly total_residue(const RatFunc& r, Symbol var, bool exclude_origin);
LaurentPoly total_residue(const LaurentPoly& num, const LaurentPoly& den, Symbol var,
                          bool exclude_origin);

}  // namespace primform
