#include "primform/spectrum.hpp"

#include <algorithm>
#include <map>

#include "primform/error.hpp"

namespace primform {

std::vector<Rational> weight_exponents(const LGSystem& lg) {
  if (lg.kind != LGKind::Polynomial) throw Error(ErrorKind::Unsupported, "weight exponents need the polynomial kind");
  std::vector<Rational> out;
  for (const auto& entry : lg.basis) {
    Rational a;
    for (std::size_t i = 0; i < lg.variables.size(); ++i) {
      a += (entry.monomial.exponent(lg.variables[i]) + 1) * lg.weights[i];
    }
    out.push_back(a);
  }
  return out;
}

namespace {

bool same_multiset(std::vector<Rational> a, std::vector<Rational> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

}  // namespace

Spectrum spectrum_from_exponents(std::vector<Rational> exponents, const Rational& r, int dimension) {
  Spectrum sp;
  sp.exponents = std::move(exponents);
  sp.minimal_exponent = r;
  sp.dimension = dimension;
  for (const auto& a : sp.exponents) {
    sp.shifted.push_back(a - r);
    sp.degrees.push_back(1 - (a - r));
  }
  sp.c_hat = *std::max_element(sp.shifted.begin(), sp.shifted.end());
  sp.c_hat_from_r = Rational(dimension + 1) - 2 * r;
  std::vector<Rational> dual;
  for (const auto& a : sp.exponents) dual.push_back(Rational(dimension + 1) - a);
  sp.exponent_duality = same_multiset(sp.exponents, dual);
  return sp;
}

Spectrum spectrum_from_degrees(const std::vector<Rational>& degrees, const Rational& r, int dimension) {
  std::vector<Rational> exponents;
  for (const auto& d : degrees) exponents.push_back(1 - d + r);
  return spectrum_from_exponents(std::move(exponents), r, dimension);
}

Spectrum spectrum(const LGSystem& lg, const Rational& r) {
  return spectrum_from_exponents(weight_exponents(lg), r, static_cast<int>(lg.variables.size()) - 1);
}

std::vector<std::pair<Rational, int>> poincare_polynomial(const Spectrum& sp) {
  std::map<Rational, int> counts;
  for (const auto& q : sp.shifted) ++counts[q];
  return {counts.begin(), counts.end()};
}

bool poincare_duality(const Spectrum& sp) {
  std::vector<Rational> dual;
  for (const auto& q : sp.shifted) dual.push_back(sp.c_hat - q);
  return same_multiset(sp.shifted, dual);
}

Rational milnor_number_from_weights(const LGSystem& lg) {
  Rational mu = 1;
  for (const auto& w : lg.weights) mu *= 1 / w - 1;
  return mu;
}

}  // namespace primform
