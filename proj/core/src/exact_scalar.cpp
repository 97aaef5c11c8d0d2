#include "primform/exact_scalar.hpp"

#include "primform/error.hpp"

namespace primform {

LaurentPoly reduce_root(const LaurentPoly& p, Symbol root, const LaurentPoly& square) {
  LaurentPoly out;
  for (const auto& [m, c] : p.terms()) {
    int k = m.exponent(root);
    int half = k >= 0 ? k / 2 : (k - 1) / 2;
    int odd = k - 2 * half;
    out += square.pow(half) * LaurentPoly::term(c, m.with_exponent(root, odd));
  }
  return out;
}

QuadraticElement QuadraticElement::evaluate(const RatFunc& r, Symbol var, int sign,
                                            const LaurentPoly& square) {
  // Powers of var become square^(k/2) or sign*square^((k-1)/2)*s.
  auto split = [&](const LaurentPoly& p) {
    LaurentPoly even, odd;
    for (const auto& [m, c] : p.terms()) {
      int k = m.exponent(var);
      int half = k >= 0 ? k / 2 : (k - 1) / 2;
      LaurentPoly rest = LaurentPoly::term(c, m.without(var)) * square.pow(half);
      if (k - 2 * half == 0) {
        even += rest;
      } else {
        odd += rest.scaled(sign);
      }
    }
    return QuadraticElement(RatFunc(even), RatFunc(odd), square);
  };
  return split(r.num()) * split(r.den()).inverse();
}

QuadraticElement QuadraticElement::operator+(const QuadraticElement& o) const {
  return {a_ + o.a_, b_ + o.b_, square_};
}

QuadraticElement QuadraticElement::operator*(const QuadraticElement& o) const {
  return {a_ * o.a_ + b_ * o.b_ * RatFunc(square_), a_ * o.b_ + b_ * o.a_, square_};
}

QuadraticElement QuadraticElement::inverse() const {
  RatFunc norm = a_ * a_ - b_ * b_ * RatFunc(square_);
  if (norm.is_zero()) throw Error(ErrorKind::DivisionByZero, "zero norm in quadratic extension");
  return {a_ / norm, -b_ / norm, square_};
}

std::string QuadraticElement::to_string() const {
  return a_.to_string() + " + (" + b_.to_string() + ")*s";
}

}  // namespace primform
