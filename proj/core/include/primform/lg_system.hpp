#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "primform/laurent_poly.hpp"

namespace primform {

enum class LGKind { Polynomial, Laurent };

/// How a deformation coordinate enters the family.
enum class DeformationMode {
  Additive,     // F += a_i * phi_i
  Exponential,  // the term of f proportional to phi_i is multiplied by exp(a_i)
};

struct DeformationEntry {
  Monomial monomial;
  DeformationMode mode = DeformationMode::Additive;
};

/// Superpotential f together with its deformation F(z, a) over the raw
/// coordinates a_0..a_{mu-1}; a_0 always enters as an additive constant.
struct LGSystem {
  std::string name;
  LGKind kind = LGKind::Polynomial;
  std::vector<Symbol> variables;
  std::vector<Rational> weights;
  std::vector<Symbol> parameters;
  LaurentPoly f;
  std::vector<DeformationEntry> basis;
  std::vector<Symbol> coordinates;
  std::vector<ExpRule> exp_rules;
  LaurentPoly family;

  Symbol z() const { return variables.front(); }
  std::size_t mu() const { return basis.size(); }
  bool one_variable() const { return variables.size() == 1; }

  /// F^0 = a_0 - F.
  LaurentPoly f0() const { return LaurentPoly::variable(coordinates.front()) - family; }
  /// dF/da_i, honouring exponential coordinates.
  LaurentPoly delta(std::size_t i) const { return family.diff(coordinates.at(i), exp_rules); }
  /// D F where D = d/dz (polynomial kind) or z d/dz (Laurent kind).
  LaurentPoly critical_function() const;
  /// Values sending every coordinate to 0 and every exponential symbol to 1.
  std::map<Symbol, LaurentPoly> origin() const;
  /// Weighted degree of a monomial in the variables (polynomial kind).
  Rational weighted_degree(const Monomial& m) const;
  /// deg a_i = 1 - wdeg(phi_i) (polynomial kind).
  Rational coordinate_degree(std::size_t i) const;
  /// Symbol exp(a_i) for an exponential coordinate, if any.
  std::optional<Symbol> exp_symbol(std::size_t i) const;
};

struct VariableSpec {
  std::string name;
  Rational weight;
};

/// Assembles and validates an LG system. With an empty `basis` the standard
/// monomials of the Milnor ring at the origin are used, all additive.
/// Raw coordinates are named a_i for the polynomial kind and t_i for the
/// Laurent kind.
LGSystem make_lg_system(std::string name, LGKind kind, const std::vector<VariableSpec>& variables,
                        const std::vector<std::string>& parameters, const LaurentPoly& f,
                        std::vector<DeformationEntry> basis = {});

/// F = t0 + z + q e^{t1} z^-1.
LGSystem make_cp1();
/// f = z^{n+1} with miniversal unfolding F = z^{n+1} + a_{n-1} z^{n-1} + ... + a_0.
LGSystem make_a_n(int n);
/// Builtin by name: "cp1", "a1".."a6"; nullopt for unknown names.
std::optional<LGSystem> builtin_system(const std::string& name);

}  // namespace primform
