#pragma once

#include <utility>
#include <vector>

#include "primform/lg_system.hpp"

namespace primform {

struct Spectrum {
  std::vector<Rational> exponents;  // alpha_i
  std::vector<Rational> shifted;    // q_i = alpha_i - r
  std::vector<Rational> degrees;    // deg t^i = 1 - q_i
  Rational minimal_exponent;        // r
  Rational c_hat;                   // max q_i
  Rational c_hat_from_r;            // (n + 1) - 2r
  int dimension = 0;                // n, the number of variables minus one
  bool exponent_duality = false;    // {alpha} = {n + 1 - alpha}
};

/// Exponents of a polynomial-kind system: sum_i (a_i + 1) w_i per basis monomial.
std::vector<Rational> weight_exponents(const LGSystem& lg);

/// Spectrum from exponents and the minimal exponent r.
Spectrum spectrum_from_exponents(std::vector<Rational> exponents, const Rational& r, int dimension);

/// Spectrum from coordinate degrees (as read off an Euler field).
Spectrum spectrum_from_degrees(const std::vector<Rational>& degrees, const Rational& r, int dimension);

/// Polynomial kind: exponents from weights.
Spectrum spectrum(const LGSystem& lg, const Rational& r);

/// Poincare polynomial sum_i (y ybar)^{q_i} as (power, multiplicity), increasing powers.
std::vector<std::pair<Rational, int>> poincare_polynomial(const Spectrum& sp);

/// chi(y, ybar) = (y ybar)^{c_hat} chi(1/y, 1/ybar).
bool poincare_duality(const Spectrum& sp);

/// prod_i (1/w_i - 1); the classical Milnor number of a quasi-homogeneous isolated singularity.
Rational milnor_number_from_weights(const LGSystem& lg);

}  // namespace primform
