#pragma once

#include <vector>

#include "primform/lg_system.hpp"
#include "primform/linalg.hpp"

namespace primform {

/// Quotient of Laurent polynomials in one variable by a polynomial modulus
/// whose leading coefficient (and, for Laurent reduction, constant
/// coefficient) is a unit. Basis 1, z, ..., z^{deg-1}. Coefficients may
/// involve any other symbols, so the same rewriter serves deformed families.
class UnivariateQuotient {
 public:
  UnivariateQuotient(Symbol var, LaurentPoly modulus);

  std::size_t dimension() const { return static_cast<std::size_t>(degree_); }
  const LaurentPoly& modulus() const { return modulus_; }
  std::vector<LaurentPoly> normal_form(const LaurentPoly& g) const;
  LaurentPoly reduce(const LaurentPoly& g) const;

 private:
  Symbol var_;
  LaurentPoly modulus_;
  int degree_;
  LaurentPoly lead_inverse_;
  std::optional<LaurentPoly> constant_inverse_;
};

/// Modulus of the Jacobian ideal of a one-variable family: F_z for the
/// polynomial kind, z^k * z F_z (made polynomial) for the Laurent kind.
LaurentPoly critical_modulus(const LGSystem& lg, const LaurentPoly& family);

/// Jacobian ring of f at the origin of the deformation space.
class MilnorRing {
 public:
  static MilnorRing build(const LGSystem& lg);

  const std::vector<Monomial>& basis() const { return basis_; }
  std::size_t mu() const { return basis_.size(); }
  std::size_t socle_index() const { return socle_; }

  std::vector<LaurentPoly> normal_form(const LaurentPoly& g) const;
  LaurentPoly from_coefficients(const std::vector<LaurentPoly>& c) const;
  /// Normal forms of basis_i * basis_j.
  const Matrix<std::vector<LaurentPoly>>& products() const { return products_; }

  /// Grothendieck residue of g, normalized so that res(hess f) = mu.
  LaurentPoly residue(const LaurentPoly& g) const;
  LaurentPoly k0(const LaurentPoly& g1, const LaurentPoly& g2) const { return residue(g1 * g2); }
  /// K0 on the basis; throws DegenerateGramMatrix if singular.
  Matrix<LaurentPoly> gram() const;
  LaurentPoly hessian() const { return hessian_; }

 private:
  MilnorRing() = default;
  void finish();

  LGKind kind_ = LGKind::Polynomial;
  std::vector<Symbol> variables_;
  std::vector<Rational> weights_;
  std::vector<Monomial> basis_;
  std::size_t socle_ = 0;
  LaurentPoly hessian_;
  LaurentPoly critical_;
  std::optional<UnivariateQuotient> univariate_;
  std::vector<LaurentPoly> groebner_;
  Rational residue_scale_ = 1;
  Matrix<std::vector<LaurentPoly>> products_;
};

}  // namespace primform
