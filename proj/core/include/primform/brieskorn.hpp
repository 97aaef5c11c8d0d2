#pragma once

#include <optional>
#include <string>
#include <vector>

#include "primform/frobenius.hpp"

namespace primform {

/// Class [numerator / DF^pole_order * vol] with vol = dz/z (Laurent) or dz.
struct BrieskornClass {
  LaurentPoly numerator;
  int pole_order = 0;
};

/// Localized Gauss-Manin calculus on rational representatives with poles on
/// the critical set only.
class BrieskornCalculus {
 public:
  explicit BrieskornCalculus(Frame frame);

  const Frame& frame() const { return frame_; }
  /// DF = z F_z (Laurent) or F_z (polynomial).
  const LaurentPoly& df() const { return df_; }

  BrieskornClass make(LaurentPoly numerator, int pole_order = 0) const;
  /// Cancels factors of DF from the numerator.
  BrieskornClass reduce(BrieskornClass c) const;
  bool equal(const BrieskornClass& a, const BrieskornClass& b) const;
  bool is_zero(const BrieskornClass& c) const { return c.numerator.is_zero(); }

  BrieskornClass add(const BrieskornClass& a, const BrieskornClass& b) const;
  BrieskornClass sub(const BrieskornClass& a, const BrieskornClass& b) const;
  /// Multiplication by a function on the base; t0 acts as F^0.
  BrieskornClass times(const LaurentPoly& f, const BrieskornClass& c) const;

  /// D(g) with D = z d/dz (Laurent) or d/dz (polynomial), on g = num/DF^k.
  BrieskornClass d(const BrieskornClass& c) const;
  BrieskornClass nabla(const BrieskornClass& c, std::size_t i) const;
  /// Connection along a vector field given by components on the coordinates.
  BrieskornClass nabla_field(const BrieskornClass& c, const std::vector<LaurentPoly>& field) const;
  /// psi with nabla_0 psi = c; the antiderivative has zero constant term at infinity.
  /// Throws LogObstruction when no rational representative exists.
  BrieskornClass nabla_delta0_inverse(const BrieskornClass& c) const;

  /// Sum of residues of the class over the critical set.
  LaurentPoly total_residue(const BrieskornClass& c) const;
  /// Higher residue pairing K1 on nabla_i zeta^(-1), nabla_j zeta^(-1) for zeta = phi vol.
  LaurentPoly k1_pairing(std::size_t i, std::size_t j, const LaurentPoly& phi) const;

  std::string to_string(const BrieskornClass& c) const;

 private:
  BrieskornClass lift(const BrieskornClass& c, int pole_order) const;
  LaurentPoly apply_d(const LaurentPoly& p) const;

  Frame frame_;
  LaurentPoly df_;
  LaurentPoly d_df_;
};

struct ConditionResult {
  std::string name;
  bool holds = false;
  std::string witness;
};

struct PrimitiveFormReport {
  std::vector<ConditionResult> conditions;  // the five conditions, in order
  std::optional<Rational> r;
  std::optional<Matrix<Rational>> n_matrix;  // N[e][j]: N d_j = sum_e N[e][j] d_e
  bool all_hold() const;
};

/// Checks the five primitive-form conditions for zeta = phi vol on the flat frame of lg.
PrimitiveFormReport verify_primitive_form(const LGSystem& lg, const LaurentPoly& phi = LaurentPoly(1));

}  // namespace primform
