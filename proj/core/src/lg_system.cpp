#include "primform/lg_system.hpp"

#include <algorithm>

#include "primform/error.hpp"
#include "primform/linalg.hpp"
#include "primform/milnor_ring.hpp"

namespace primform {

LaurentPoly LGSystem::critical_function() const {
  return kind == LGKind::Polynomial ? family.diff(z()) : family.log_derivative(z());
}

std::map<Symbol, LaurentPoly> LGSystem::origin() const {
  std::map<Symbol, LaurentPoly> values;
  for (Symbol a : coordinates) values[a] = LaurentPoly();
  for (const auto& rule : exp_rules) values[rule.exp_symbol] = LaurentPoly(1);
  return values;
}

Rational LGSystem::weighted_degree(const Monomial& m) const {
  Rational d;
  for (std::size_t i = 0; i < variables.size(); ++i) d += weights[i] * m.exponent(variables[i]);
  return d;
}

Rational LGSystem::coordinate_degree(std::size_t i) const {
  return 1 - weighted_degree(basis.at(i).monomial);
}

std::optional<Symbol> LGSystem::exp_symbol(std::size_t i) const {
  for (const auto& rule : exp_rules) {
    if (rule.coordinate == coordinates.at(i)) return rule.exp_symbol;
  }
  return std::nullopt;
}

namespace {

Monomial variable_part(const Monomial& m, const std::vector<Symbol>& variables) {
  Monomial out;
  for (Symbol v : variables) out = out * Monomial::of(v, m.exponent(v));
  return out;
}

}  // namespace

LGSystem make_lg_system(std::string name, LGKind kind, const std::vector<VariableSpec>& variables,
                        const std::vector<std::string>& parameters, const LaurentPoly& f,
                        std::vector<DeformationEntry> basis) {
  LGSystem lg;
  lg.name = std::move(name);
  lg.kind = kind;
  if (variables.empty()) throw Error(ErrorKind::InvalidSpec, "no variables declared");
  for (const auto& v : variables) {
    lg.variables.push_back(sym(v.name));
    lg.weights.push_back(v.weight);
  }
  for (const auto& p : parameters) lg.parameters.push_back(sym(p));
  lg.f = f;
  if (f.is_zero()) throw Error(ErrorKind::InvalidSpec, "superpotential is zero");

  for (Symbol s : f.symbols()) {
    bool known = std::count(lg.variables.begin(), lg.variables.end(), s) ||
                 std::count(lg.parameters.begin(), lg.parameters.end(), s);
    if (!known) throw Error(ErrorKind::InvalidSpec, "undeclared symbol '" + s.name() + "' in superpotential");
  }
  if (kind == LGKind::Laurent && variables.size() != 1) {
    throw Error(ErrorKind::Unsupported, "Laurent kind is restricted to one variable");
  }
  if (kind == LGKind::Polynomial) {
    for (const auto& [m, c] : f.terms()) {
      Monomial vm = variable_part(m, lg.variables);
      if (!vm.is_polynomial() && !vm.is_one()) {
        throw Error(ErrorKind::InvalidSpec, "negative exponent in polynomial superpotential");
      }
      if (lg.weighted_degree(vm) != 1) {
        throw Error(ErrorKind::InvalidSpec, "superpotential is not quasi-homogeneous: term " + vm.to_string() +
                                                " has weighted degree " + to_string(lg.weighted_degree(vm)));
      }
    }
  }

  if (basis.empty()) {
    MilnorRing ring = MilnorRing::build(lg);
    for (const auto& m : ring.basis()) basis.push_back({m, DeformationMode::Additive});
  }
  if (!basis.front().monomial.is_one() || basis.front().mode != DeformationMode::Additive) {
    throw Error(ErrorKind::InvalidSpec, "the first deformation monomial must be the additive constant 1");
  }
  lg.basis = std::move(basis);

  const std::string prefix = kind == LGKind::Polynomial ? "a" : "t";
  lg.family = f;
  for (std::size_t i = 0; i < lg.basis.size(); ++i) {
    Symbol a = sym(prefix + std::to_string(i));
    lg.coordinates.push_back(a);
    const auto& entry = lg.basis[i];
    if (entry.mode == DeformationMode::Additive) {
      lg.family += LaurentPoly::term(1, entry.monomial * Monomial::of(a));
      continue;
    }
    Symbol e = sym("E" + std::to_string(i));
    lg.exp_rules.push_back({e, a});
    LaurentPoly matching;
    for (const auto& [m, c] : f.terms()) {
      if (variable_part(m, lg.variables) == entry.monomial) matching += LaurentPoly::term(c, m);
    }
    if (matching.is_zero()) {
      throw Error(ErrorKind::InvalidSpec, "exponential deformation " + entry.monomial.to_string() +
                                              " does not match a term of the superpotential");
    }
    lg.family += matching * LaurentPoly(LaurentPoly::variable(e) - LaurentPoly(1));
  }

  if (lg.delta(0) != LaurentPoly(1)) throw Error(ErrorKind::InvalidSpec, "dF/da0 must be 1");
  MilnorRing ring = MilnorRing::build(lg);
  if (ring.mu() != lg.mu()) {
    throw Error(ErrorKind::InvalidSpec, "deformation basis has " + std::to_string(lg.mu()) +
                                            " entries but the Milnor number is " + std::to_string(ring.mu()));
  }
  Matrix<LaurentPoly> images;
  auto at_origin = lg.origin();
  for (std::size_t i = 0; i < lg.mu(); ++i) images.push_back(ring.normal_form(lg.delta(i).substitute(at_origin)));
  if (determinant(images).is_zero()) {
    throw Error(ErrorKind::InvalidSpec, "deformation monomials do not project to a basis of the Milnor ring");
  }
  return lg;
}

LGSystem make_cp1() {
  Symbol z = sym("z");
  LaurentPoly f = LaurentPoly::variable(z) + LaurentPoly::parse("q*z^-1");
  return make_lg_system("cp1", LGKind::Laurent, {{"z", 1}}, {"q"}, f,
                        {{Monomial(), DeformationMode::Additive},
                         {Monomial::of(z, -1), DeformationMode::Exponential}});
}

LGSystem make_a_n(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidSpec, "A_n needs n >= 1");
  Symbol z = sym("z");
  std::vector<DeformationEntry> basis;
  for (int i = 0; i < n; ++i) basis.push_back({Monomial::of(z, i), DeformationMode::Additive});
  return make_lg_system("a" + std::to_string(n), LGKind::Polynomial, {{"z", Rational(1, n + 1)}}, {},
                        LaurentPoly::variable(z, n + 1), std::move(basis));
}

std::optional<LGSystem> builtin_system(const std::string& name) {
  if (name == "cp1") return make_cp1();
  if (name.size() == 2 && name[0] == 'a' && name[1] >= '1' && name[1] <= '6') return make_a_n(name[1] - '0');
  return std::nullopt;
}

}  // namespace primform
