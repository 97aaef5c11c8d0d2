#pragma once

#include <optional>
#include <vector>

#include "primform/laurent_poly.hpp"

namespace primform {

template <class T>
using Matrix = std::vector<std::vector<T>>;

/// Determinant by fraction-free (Bareiss) elimination with exact divisions.
LaurentPoly determinant(Matrix<LaurentPoly> m);

/// Solves A x = b when det A is a unit of the Laurent ring (Cramer's rule).
/// Returns nullopt if det A is not a unit.
std::optional<std::vector<LaurentPoly>> solve_unimodular(const Matrix<LaurentPoly>& a,
                                                         const std::vector<LaurentPoly>& b);

/// Rational linear system; free variables are set to 0. nullopt if inconsistent.
std::optional<std::vector<Rational>> solve_rational(Matrix<Rational> a, std::vector<Rational> b);

/// Inverse of a rational matrix; throws on singular input.
Matrix<Rational> inverse(Matrix<Rational> a);

}  // namespace primform
