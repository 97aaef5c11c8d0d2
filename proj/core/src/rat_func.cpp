#include "primform/rat_func.hpp"

#include <ostream>

#include "primform/error.hpp"

namespace primform {

RatFunc::RatFunc(const LaurentPoly& num, const LaurentPoly& den) : num_(num), den_(den) {
  reduce();
}

RatFunc RatFunc::parse(std::string_view num, std::string_view den) {
  return RatFunc(LaurentPoly::parse(num), LaurentPoly::parse(den));
}

void RatFunc::reduce() {
  if (den_.is_zero()) throw Error(ErrorKind::DivisionByZero, "rational function with zero denominator");
  if (num_.is_zero()) {
    den_ = LaurentPoly(1);
    return;
  }
  if (auto inv = den_.unit_inverse()) {
    num_ *= *inv;
    den_ = LaurentPoly(1);
    return;
  }
  Monomial m = monomial_min(num_.min_monomial(), den_.min_monomial()).inverse();
  num_ = num_.times(m);
  den_ = den_.times(m);
  LaurentPoly g = poly_gcd(num_, den_);
  if (!g.is_constant()) {
    num_ = *divide_exact(num_, g);
    den_ = *divide_exact(den_, g);
  }
  Rational lead = den_.leading_term().second;
  if (auto inv = den_.unit_inverse()) {
    num_ *= *inv;
    den_ = LaurentPoly(1);
  } else if (lead != 1) {
    num_ = num_.scaled(1 / lead);
    den_ = den_.scaled(1 / lead);
  }
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
  return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  if (a.is_laurent_poly() && b.is_laurent_poly()) return RatFunc(a.num_ * b.num_);
  return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero rational function");
  return RatFunc(den_, num_);
}

RatFunc RatFunc::pow(int n) const {
  if (n < 0) return inverse().pow(-n);
  RatFunc r;
  r.num_ = num_.pow(n);
  r.den_ = den_.pow(n);
  return r;
}

RatFunc RatFunc::diff(Symbol s, std::span<const ExpRule> rules) const {
  if (is_laurent_poly()) return RatFunc(num_.diff(s, rules));
  return RatFunc(num_.diff(s, rules) * den_ - num_ * den_.diff(s, rules), den_ * den_);
}

RatFunc RatFunc::log_derivative(Symbol s) const {
  if (is_laurent_poly()) return RatFunc(num_.log_derivative(s));
  return RatFunc(num_.log_derivative(s) * den_ - num_ * den_.log_derivative(s), den_ * den_);
}

RatFunc RatFunc::substitute(const std::map<Symbol, LaurentPoly>& values) const {
  return RatFunc(num_.substitute(values), den_.substitute(values));
}

std::string RatFunc::to_string() const {
  if (is_laurent_poly()) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

std::ostream& operator<<(std::ostream& os, const RatFunc& r) { return os << r.to_string(); }

// --------------------------------------------------------------- expansion

std::map<int, LaurentPoly> laurent_expand(const RatFunc& r, Symbol var, ExpansionPoint point,
                                          int order) {
  return laurent_expand(r.num(), r.den(), var, point, order);
}

std::map<int, LaurentPoly> laurent_expand(const LaurentPoly& num, const LaurentPoly& den, Symbol var,
                                          ExpansionPoint point, int order) {
  std::map<int, LaurentPoly> out;
  if (num.is_zero()) return out;
  bool at_zero = point == ExpansionPoint::Zero;
  int d = at_zero ? den.low_degree(var) : den.degree(var);
  auto lead_inv = den.coefficient(var, d).unit_inverse();
  if (!lead_inv) {
    throw Error(ErrorKind::NonInvertibleLeadingCoefficient,
                "coefficient " + den.coefficient(var, d).to_string() + " of " + var.name() + "^" +
                    std::to_string(d) + " in " + den.to_string());
  }
  LaurentPoly rem = num;
  int e = at_zero ? rem.low_degree(var) - d : rem.degree(var) - d;
  while (at_zero ? e <= order : e >= order) {
    if (rem.is_zero()) break;
    LaurentPoly c = rem.coefficient(var, e + d) * *lead_inv;
    if (!c.is_zero()) {
      out.emplace(e, c);
      rem -= (c * den).times(Monomial::of(var, e));
    }
    e += at_zero ? 1 : -1;
  }
  return out;
}

namespace {

LaurentPoly residue_coefficient(const LaurentPoly& num, const LaurentPoly& den, Symbol var,
                                ExpansionPoint point) {
  auto series = laurent_expand(num, den, var, point, -1);
  auto it = series.find(-1);
  return it == series.end() ? LaurentPoly() : it->second;
}

}  // namespace

LaurentPoly expansion_residue_coefficient(const RatFunc& r, Symbol var, ExpansionPoint point) {
  return residue_coefficient(r.num(), r.den(), var, point);
}

LaurentPoly total_residue(const LaurentPoly& num, const LaurentPoly& den, Symbol var,
                          bool exclude_origin) {
  // Residue at infinity is minus the var^-1 coefficient there; all residues sum to 0.
  LaurentPoly total = residue_coefficient(num, den, var, ExpansionPoint::Infinity);
  if (exclude_origin) total -= residue_coefficient(num, den, var, ExpansionPoint::Zero);
  return total;
}

LaurentPoly total_residue(const RatFunc& r, Symbol var, bool exclude_origin) {
  return total_residue(r.num(), r.den(), var, exclude_origin);
}

}  // namespace primform
