#pragma once

#include <string>
#include <vector>

#include "primform/lg_system.hpp"
#include "primform/linalg.hpp"
#include "primform/milnor_ring.hpp"

namespace primform {

/// A one-variable family F(z, c) over coordinates c together with the
/// primitive-form factor phi (the form is phi dz or phi dz/z).
class Frame {
 public:
  Frame(const LGSystem& lg, LaurentPoly family, std::vector<Symbol> coordinates,
        std::vector<ExpRule> exp_rules, LaurentPoly phi = LaurentPoly(1));
  static Frame raw(const LGSystem& lg, LaurentPoly phi = LaurentPoly(1));

  const LGSystem& system() const { return lg_; }
  Symbol z() const { return lg_.z(); }
  std::size_t mu() const { return coordinates_.size(); }
  const LaurentPoly& family() const { return family_; }
  const std::vector<Symbol>& coordinates() const { return coordinates_; }
  const std::vector<ExpRule>& exp_rules() const { return exp_rules_; }
  const LaurentPoly& phi() const { return phi_; }
  const UnivariateQuotient& quotient() const { return quotient_; }

  const LaurentPoly& delta(std::size_t i) const { return deltas_.at(i); }
  LaurentPoly f0() const { return LaurentPoly::variable(coordinates_.front()) - family_; }
  /// DF: dF/dz or z dF/dz.
  const LaurentPoly& critical_function() const { return critical_; }
  LaurentPoly diff(const LaurentPoly& p, std::size_t i) const { return p.diff(coordinates_.at(i), exp_rules_); }

  /// Coordinates of the class of g in the basis d_i F of the family Jacobian ring.
  std::vector<LaurentPoly> to_delta_basis(const LaurentPoly& g) const;
  /// Total residue of g (dz / DF) or g (dz/z / DF) over the critical set.
  LaurentPoly residue(const LaurentPoly& g) const;
  /// K0(g1 zeta, g2 zeta) = residue(g1 g2 phi^2).
  LaurentPoly k0(const LaurentPoly& g1, const LaurentPoly& g2) const { return residue(g1 * g2 * phi_ * phi_); }

 private:
  LGSystem lg_;
  LaurentPoly family_;
  std::vector<Symbol> coordinates_;
  std::vector<ExpRule> exp_rules_;
  LaurentPoly phi_;
  std::vector<LaurentPoly> deltas_;
  LaurentPoly critical_;
  UnivariateQuotient quotient_;
  Matrix<LaurentPoly> delta_matrix_;  // inverse of the matrix with columns NF(d_j F)
};

/// d_i o d_j in the d-basis.
std::vector<LaurentPoly> residual_product(const Frame& frame, std::size_t i, std::size_t j);
/// t0 o d_j, where t0 restricts to F^0 on the critical set.
std::vector<LaurentPoly> t0_product(const Frame& frame, std::size_t j);
/// eta_ij = K0(d_i F zeta, d_j F zeta) as functions of the frame coordinates.
Matrix<LaurentPoly> metric_eta(const Frame& frame);
/// det of multiplication by F on the family Jacobian ring.
LaurentPoly discriminant(const Frame& frame);
/// E = t0 d_0 - t0 o d_0, as components on d_0..d_{mu-1}.
std::vector<LaurentPoly> euler_field(const Frame& frame);
/// Applies a vector field (components on the frame coordinates) to p.
LaurentPoly apply_field(const Frame& frame, const std::vector<LaurentPoly>& field, const LaurentPoly& p);

/// Polynomial coordinate change a(t) making eta constant.
struct FlatCoordinates {
  std::vector<Symbol> raw;
  std::vector<Symbol> flat;
  std::vector<LaurentPoly> raw_in_flat;
  std::vector<LaurentPoly> flat_in_raw;
  std::vector<ExpRule> exp_rules;  // exponential symbols now attached to flat coordinates
  bool identity = true;
};

FlatCoordinates flat_coordinates(const LGSystem& lg, const LaurentPoly& phi = LaurentPoly(1));
/// Frame of the family expressed in flat coordinates.
Frame flat_frame(const LGSystem& lg, const FlatCoordinates& flat, const LaurentPoly& phi = LaurentPoly(1));

using Tensor3 = std::vector<std::vector<std::vector<LaurentPoly>>>;

/// C_ijk = K0(d_i F d_j F zeta, d_k F zeta).
Tensor3 structure_constants(const Frame& frame);
/// Throws IntegrabilityViolation unless d_l C_ijk is symmetric in (l, i).
void check_integrability(const Frame& frame, const Tensor3& c);
/// Potential with third derivatives C; pure polynomial terms of degree <= 2 dropped.
LaurentPoly integrate_potential(const Tensor3& c, const std::vector<Symbol>& coordinates,
                                const std::vector<ExpRule>& exp_rules);
/// Integrates a closed gradient field: returns U with dU/dc_i = g_i.
LaurentPoly integrate_gradient(const std::vector<LaurentPoly>& g, const std::vector<Symbol>& coordinates,
                               const std::vector<ExpRule>& exp_rules);
/// Drops pure polynomial terms (no exponential symbol) of total coordinate degree <= max_degree.
LaurentPoly drop_low_degree(const LaurentPoly& p, const std::vector<Symbol>& coordinates,
                            const std::vector<ExpRule>& exp_rules, int max_degree);
Tensor3 third_derivatives(const LaurentPoly& potential, const std::vector<Symbol>& coordinates,
                          const std::vector<ExpRule>& exp_rules);
/// All WDVV expressions sum_e C_ab^e C_ecd - C_ac^e C_ebd; zero for an associative product.
std::vector<LaurentPoly> wdvv_residuals(const Tensor3& c, const Matrix<LaurentPoly>& eta);
Matrix<LaurentPoly> inverse_metric(const Matrix<LaurentPoly>& eta);

/// Everything the Frobenius layer produces for one system.
struct FrobeniusData {
  LGSystem system;
  FlatCoordinates flat;
  LaurentPoly family;  // in flat coordinates
  LaurentPoly phi;
  Matrix<LaurentPoly> eta;
  Matrix<LaurentPoly> eta_inverse;
  Tensor3 c;
  LaurentPoly potential;
  std::vector<LaurentPoly> euler;
  std::vector<Rational> degrees;   // deg t^i, the linear coefficients of E
  std::vector<LaurentPoly> shifts; // constant parts of E
  Rational form_degree;            // r
  std::vector<Rational> n_diagonal;
  LaurentPoly discriminant;
  std::string normalization_note;

  const std::vector<Symbol>& coordinates() const { return flat.flat; }
  const std::vector<ExpRule>& exp_rules() const { return flat.exp_rules; }
};

FrobeniusData build_frobenius(const LGSystem& lg, const LaurentPoly& phi = LaurentPoly(1));

/// Weighted degree of the primitive form phi dz (polynomial) or phi dz/z (Laurent).
Rational form_degree(const LGSystem& lg, const LaurentPoly& phi);

}  // namespace primform
