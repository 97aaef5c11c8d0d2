#include "primform/milnor_ring.hpp"

#include <algorithm>
#include <set>

#include "primform/error.hpp"
#include "primform/rat_func.hpp"

namespace primform {

// ------------------------------------------------------ UnivariateQuotient

UnivariateQuotient::UnivariateQuotient(Symbol var, LaurentPoly modulus)
    : var_(var), modulus_(std::move(modulus)), degree_(modulus_.degree(var)) {
  if (modulus_.is_zero() || modulus_.low_degree(var) < 0) {
    throw Error(ErrorKind::Unsupported, "modulus must be a nonzero polynomial in " + var.name());
  }
  auto lead = modulus_.coefficient(var, degree_).unit_inverse();
  if (!lead) {
    throw Error(ErrorKind::NonInvertibleLeadingCoefficient,
                "leading coefficient of " + modulus_.to_string() + " is not a unit");
  }
  lead_inverse_ = *lead;
  constant_inverse_ = modulus_.coefficient(var, 0).unit_inverse();
}

LaurentPoly UnivariateQuotient::reduce(const LaurentPoly& g) const {
  LaurentPoly r = g;
  while (!r.is_zero() && r.low_degree(var_) < 0) {
    if (!constant_inverse_) {
      throw Error(ErrorKind::NonInvertibleLeadingCoefficient,
                  "constant coefficient of " + modulus_.to_string() + " is not a unit");
    }
    int k = r.low_degree(var_);
    LaurentPoly c = r.coefficient(var_, k);
    r -= (c * modulus_ * *constant_inverse_).times(Monomial::of(var_, k));
  }
  while (!r.is_zero() && r.degree(var_) >= degree_) {
    int k = r.degree(var_);
    LaurentPoly c = r.coefficient(var_, k);
    r -= (c * modulus_ * lead_inverse_).times(Monomial::of(var_, k - degree_));
  }
  return r;
}

std::vector<LaurentPoly> UnivariateQuotient::normal_form(const LaurentPoly& g) const {
  LaurentPoly r = reduce(g);
  std::vector<LaurentPoly> out;
  for (int i = 0; i < degree_; ++i) out.push_back(r.coefficient(var_, i));
  return out;
}

LaurentPoly critical_modulus(const LGSystem& lg, const LaurentPoly& family) {
  Symbol z = lg.z();
  if (lg.kind == LGKind::Polynomial) return family.diff(z);
  LaurentPoly theta = family.log_derivative(z);
  return theta.times(Monomial::of(z, -theta.low_degree(z)));
}

// ------------------------------------------------------ multivariate rings

namespace {

struct WeightedOrder {
  std::vector<Symbol> variables;
  std::vector<Rational> weights;

  Rational degree(const Monomial& m) const {
    Rational d;
    for (std::size_t i = 0; i < variables.size(); ++i) d += weights[i] * m.exponent(variables[i]);
    return d;
  }

  bool less(const Monomial& a, const Monomial& b) const {
    Rational da = degree(a), db = degree(b);
    if (da != db) return da < db;
    return MonomialLess()(a, b);
  }

  std::pair<Monomial, Rational> lead(const LaurentPoly& p) const {
    auto best = p.terms().begin();
    for (auto it = p.terms().begin(); it != p.terms().end(); ++it) {
      if (less(best->first, it->first)) best = it;
    }
    return *best;
  }
};

bool divides(const Monomial& a, const Monomial& b) {
  Monomial q = b / a;
  return q.is_polynomial();
}

LaurentPoly reduce_full(LaurentPoly p, const std::vector<LaurentPoly>& basis, const WeightedOrder& order) {
  LaurentPoly rem;
  while (!p.is_zero()) {
    auto [m, c] = order.lead(p);
    bool reduced = false;
    for (const auto& g : basis) {
      auto [mg, cg] = order.lead(g);
      if (divides(mg, m)) {
        p -= g.times(m / mg).scaled(c / cg);
        reduced = true;
        break;
      }
    }
    if (!reduced) {
      rem += LaurentPoly::term(c, m);
      p -= LaurentPoly::term(c, m);
    }
  }
  return rem;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
  return (a * b) / monomial_min(a, b);
}

std::vector<LaurentPoly> groebner(std::vector<LaurentPoly> gens, const WeightedOrder& order) {
  std::vector<LaurentPoly> basis;
  for (auto& g : gens) {
    if (!g.is_zero()) basis.push_back(g.scaled(1 / order.lead(g).second));
  }
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t j = 0; j < basis.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) pairs.emplace_back(i, j);
  }
  while (!pairs.empty()) {
    auto [i, j] = pairs.back();
    pairs.pop_back();
    Monomial mi = order.lead(basis[i]).first;
    Monomial mj = order.lead(basis[j]).first;
    Monomial l = lcm(mi, mj);
    if (l == mi * mj) continue;  // coprime leading monomials
    LaurentPoly s = basis[i].times(l / mi) - basis[j].times(l / mj);
    LaurentPoly r = reduce_full(s, basis, order);
    if (r.is_zero()) continue;
    basis.push_back(r.scaled(1 / order.lead(r).second));
    for (std::size_t k = 0; k + 1 < basis.size(); ++k) pairs.emplace_back(k, basis.size() - 1);
    if (basis.size() > 200) throw Error(ErrorKind::NonIsolatedSingularity, "Groebner basis does not stabilize");
  }
  return basis;
}

std::vector<Monomial> standard_monomials(const std::vector<LaurentPoly>& basis, const WeightedOrder& order) {
  std::vector<int> bound;
  for (Symbol v : order.variables) {
    int best = -1;
    for (const auto& g : basis) {
      Monomial m = order.lead(g).first;
      if (m.powers().size() == 1 && m.exponent(v) > 0 && (best < 0 || m.exponent(v) < best)) {
        best = m.exponent(v);
      }
    }
    if (best < 0) {
      throw Error(ErrorKind::NonIsolatedSingularity,
                  "no pure power of " + v.name() + " among leading monomials; Milnor number is infinite");
    }
    bound.push_back(best);
  }
  std::vector<Monomial> out;
  std::vector<int> e(order.variables.size(), 0);
  while (true) {
    Monomial m;
    for (std::size_t i = 0; i < e.size(); ++i) m = m * Monomial::of(order.variables[i], e[i]);
    bool standard = std::none_of(basis.begin(), basis.end(),
                                 [&](const LaurentPoly& g) { return divides(order.lead(g).first, m); });
    if (standard) out.push_back(m);
    std::size_t k = 0;
    while (k < e.size() && ++e[k] >= bound[k]) e[k++] = 0;
    if (k == e.size()) break;
  }
  std::sort(out.begin(), out.end(), [&](const Monomial& a, const Monomial& b) { return order.less(a, b); });
  return out;
}

}  // namespace

// --------------------------------------------------------------- MilnorRing

MilnorRing MilnorRing::build(const LGSystem& lg) {
  MilnorRing ring;
  ring.kind_ = lg.kind;
  ring.variables_ = lg.variables;
  ring.weights_ = lg.weights;
  if (lg.one_variable()) {
    Symbol z = lg.z();
    LaurentPoly modulus = critical_modulus(lg, lg.f);
    if (modulus.degree(z) <= 0) {
      throw Error(ErrorKind::NonIsolatedSingularity, "critical locus of " + lg.f.to_string() + " is empty or everything");
    }
    ring.univariate_.emplace(z, modulus);
    for (int i = 0; i < modulus.degree(z); ++i) ring.basis_.push_back(Monomial::of(z, i));
    if (lg.kind == LGKind::Polynomial) {
      ring.critical_ = lg.f.diff(z);
      ring.hessian_ = ring.critical_.diff(z);
    } else {
      ring.critical_ = lg.f.log_derivative(z);
      ring.hessian_ = ring.critical_.log_derivative(z);
    }
  } else {
    if (lg.kind != LGKind::Polynomial) {
      throw Error(ErrorKind::Unsupported, "Laurent superpotentials must have exactly one variable");
    }
    if (!lg.f.is_polynomial()) throw Error(ErrorKind::InvalidSpec, "polynomial kind with negative exponents");
    WeightedOrder order{lg.variables, lg.weights};
    std::vector<LaurentPoly> partials;
    for (Symbol v : lg.variables) partials.push_back(lg.f.diff(v));
    for (const auto& p : partials) {
      for (const auto& [m, c] : p.terms()) {
        for (const auto& [id, e] : m.powers()) {
          if (std::find(lg.variables.begin(), lg.variables.end(), Symbol::from_id(id)) == lg.variables.end()) {
            throw Error(ErrorKind::Unsupported, "multivariable rings are built over the rationals only");
          }
        }
      }
    }
    ring.groebner_ = groebner(partials, order);
    ring.basis_ = standard_monomials(ring.groebner_, order);
    Matrix<LaurentPoly> hess;
    for (Symbol u : lg.variables) {
      hess.emplace_back();
      for (Symbol v : lg.variables) hess.back().push_back(lg.f.diff(u).diff(v));
    }
    ring.hessian_ = determinant(hess);
  }
  ring.finish();
  return ring;
}

void MilnorRing::finish() {
  // Socle: unique basis element of top weighted degree (top z-power for one variable).
  if (univariate_) {
    socle_ = basis_.size() - 1;
  } else {
    WeightedOrder order{variables_, weights_};
    Rational top = order.degree(basis_.front());
    for (const auto& m : basis_) top = std::max(top, order.degree(m));
    std::size_t count = 0;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      if (order.degree(basis_[i]) == top) {
        socle_ = i;
        ++count;
      }
    }
    if (count != 1) throw Error(ErrorKind::DegenerateGramMatrix, "socle is not one-dimensional");
    LaurentPoly h = normal_form(hessian_)[socle_];
    if (h.is_zero()) throw Error(ErrorKind::DegenerateGramMatrix, "Hessian vanishes in the socle");
    residue_scale_ = Rational(static_cast<long>(mu())) / h.constant_value();
  }
  products_.assign(mu(), std::vector<std::vector<LaurentPoly>>(mu()));
  for (std::size_t i = 0; i < mu(); ++i) {
    for (std::size_t j = 0; j < mu(); ++j) {
      products_[i][j] = normal_form(LaurentPoly::term(1, basis_[i] * basis_[j]));
    }
  }
}

std::vector<LaurentPoly> MilnorRing::normal_form(const LaurentPoly& g) const {
  if (univariate_) return univariate_->normal_form(g);
  WeightedOrder order{variables_, weights_};
  LaurentPoly r = reduce_full(g, groebner_, order);
  std::vector<LaurentPoly> out(mu());
  for (const auto& [m, c] : r.terms()) {
    auto it = std::find(basis_.begin(), basis_.end(), m);
    out[it - basis_.begin()] += LaurentPoly(c);
  }
  return out;
}

LaurentPoly MilnorRing::from_coefficients(const std::vector<LaurentPoly>& c) const {
  LaurentPoly out;
  for (std::size_t i = 0; i < c.size(); ++i) out += c[i].times(basis_[i]);
  return out;
}

LaurentPoly MilnorRing::residue(const LaurentPoly& g) const {
  if (univariate_) {
    Symbol z = variables_.front();
    if (kind_ == LGKind::Polynomial) return total_residue(g, critical_, z, false);
    return total_residue(g, critical_.times(Monomial::of(z, 1)), z, true);
  }
  return normal_form(g)[socle_].scaled(residue_scale_);
}

Matrix<LaurentPoly> MilnorRing::gram() const {
  Matrix<LaurentPoly> g(mu(), std::vector<LaurentPoly>(mu()));
  for (std::size_t i = 0; i < mu(); ++i) {
    for (std::size_t j = 0; j < mu(); ++j) {
      g[i][j] = k0(LaurentPoly::term(1, basis_[i]), LaurentPoly::term(1, basis_[j]));
    }
  }
  if (determinant(g).is_zero()) throw Error(ErrorKind::DegenerateGramMatrix, "K0 is degenerate on the basis");
  return g;
}

}  // namespace primform
