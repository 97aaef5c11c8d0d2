#pragma once

#include <string>

#include "primform/rat_func.hpp"

namespace primform {

/// Scalars are Laurent polynomials in the formal parameters (q, E1, ...).
using ExactScalar = LaurentPoly;

/// Rewrites every power root^k with k >= 2 (or k < 0) using root^2 = square.
/// `square` must be a unit when negative powers occur.
LaurentPoly reduce_root(const LaurentPoly& p, Symbol root, const LaurentPoly& square);

/// Element a + b*s of K(s)/(s^2 - P) over the rational function field K.
class QuadraticElement {
 public:
  QuadraticElement(RatFunc a, RatFunc b, LaurentPoly square)
      : a_(std::move(a)), b_(std::move(b)), square_(std::move(square)) {}

  /// Evaluates a rational function of `var` at var = sign * s.
  static QuadraticElement evaluate(const RatFunc& r, Symbol var, int sign, const LaurentPoly& square);

  const RatFunc& rational_part() const { return a_; }
  const RatFunc& root_part() const { return b_; }

  QuadraticElement operator+(const QuadraticElement& o) const;
  QuadraticElement operator*(const QuadraticElement& o) const;
  QuadraticElement inverse() const;
  QuadraticElement conjugate() const { return {a_, -b_, square_}; }

  std::string to_string() const;

 private:
  RatFunc a_;
  RatFunc b_;
  LaurentPoly square_;
};

}  // namespace primform
