#include "primform/frobenius.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "primform/error.hpp"
#include "primform/rat_func.hpp"

namespace primform {

// -------------------------------------------------------------------- Frame

namespace {

Matrix<LaurentPoly> unimodular_inverse(const Matrix<LaurentPoly>& m, const std::string& what) {
  const std::size_t n = m.size();
  Matrix<LaurentPoly> inv(n, std::vector<LaurentPoly>(n));
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<LaurentPoly> e(n);
    e[j] = LaurentPoly(1);
    auto col = solve_unimodular(m, e);
    if (!col) throw Error(ErrorKind::DegenerateMetric, what + " has no inverse over the Laurent ring");
    for (std::size_t i = 0; i < n; ++i) inv[i][j] = (*col)[i];
  }
  return inv;
}

}  // namespace

Frame::Frame(const LGSystem& lg, LaurentPoly family, std::vector<Symbol> coordinates,
             std::vector<ExpRule> exp_rules, LaurentPoly phi)
    : lg_(lg),
      family_(std::move(family)),
      coordinates_(std::move(coordinates)),
      exp_rules_(std::move(exp_rules)),
      phi_(std::move(phi)),
      quotient_(lg.z(), critical_modulus(lg, family_)) {
  if (!lg.one_variable()) throw Error(ErrorKind::Unsupported, "deformation calculus needs one variable");
  if (quotient_.dimension() != coordinates_.size()) {
    throw Error(ErrorKind::InvalidSpec, "family Jacobian ring has rank " + std::to_string(quotient_.dimension()) +
                                            " but there are " + std::to_string(coordinates_.size()) + " coordinates");
  }
  for (std::size_t i = 0; i < coordinates_.size(); ++i) deltas_.push_back(diff(family_, i));
  critical_ = lg.kind == LGKind::Polynomial ? family_.diff(z()) : family_.log_derivative(z());
  Matrix<LaurentPoly> columns(mu(), std::vector<LaurentPoly>(mu()));
  for (std::size_t j = 0; j < mu(); ++j) {
    auto nf = quotient_.normal_form(deltas_[j]);
    for (std::size_t i = 0; i < mu(); ++i) columns[i][j] = nf[i];
  }
  delta_matrix_ = unimodular_inverse(columns, "the d F basis change");
}

Frame Frame::raw(const LGSystem& lg, LaurentPoly phi) {
  return Frame(lg, lg.family, lg.coordinates, lg.exp_rules, std::move(phi));
}

std::vector<LaurentPoly> Frame::to_delta_basis(const LaurentPoly& g) const {
  auto v = quotient_.normal_form(g);
  std::vector<LaurentPoly> out(mu());
  for (std::size_t i = 0; i < mu(); ++i) {
    for (std::size_t k = 0; k < mu(); ++k) {
      if (!delta_matrix_[i][k].is_zero() && !v[k].is_zero()) out[i] += delta_matrix_[i][k] * v[k];
    }
  }
  return out;
}

LaurentPoly Frame::residue(const LaurentPoly& g) const {
  if (lg_.kind == LGKind::Polynomial) return total_residue(g, critical_, z(), false);
  return total_residue(g, critical_.times(Monomial::of(z(), 1)), z(), true);
}

// ------------------------------------------------------- products & fields

std::vector<LaurentPoly> residual_product(const Frame& frame, std::size_t i, std::size_t j) {
  return frame.to_delta_basis(frame.delta(i) * frame.delta(j));
}

std::vector<LaurentPoly> t0_product(const Frame& frame, std::size_t j) {
  return frame.to_delta_basis(frame.f0() * frame.delta(j));
}

Matrix<LaurentPoly> metric_eta(const Frame& frame) {
  const std::size_t n = frame.mu();
  Matrix<LaurentPoly> eta(n, std::vector<LaurentPoly>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) eta[i][j] = eta[j][i] = frame.k0(frame.delta(i), frame.delta(j));
  }
  return eta;
}

LaurentPoly discriminant(const Frame& frame) {
  const std::size_t n = frame.mu();
  Matrix<LaurentPoly> m(n, std::vector<LaurentPoly>(n));
  for (std::size_t j = 0; j < n; ++j) {
    auto nf = frame.quotient().normal_form(frame.family().times(Monomial::of(frame.z(), static_cast<int>(j))));
    for (std::size_t i = 0; i < n; ++i) m[i][j] = nf[i];
  }
  return determinant(m);
}

std::vector<LaurentPoly> euler_field(const Frame& frame) {
  auto c = t0_product(frame, 0);
  std::vector<LaurentPoly> e;
  for (std::size_t i = 0; i < c.size(); ++i) {
    LaurentPoly base = i == 0 ? LaurentPoly::variable(frame.coordinates().front()) : LaurentPoly();
    e.push_back(base - c[i]);
  }
  return e;
}

LaurentPoly apply_field(const Frame& frame, const std::vector<LaurentPoly>& field, const LaurentPoly& p) {
  LaurentPoly out;
  for (std::size_t i = 0; i < field.size(); ++i) {
    if (!field[i].is_zero()) out += field[i] * frame.diff(p, i);
  }
  return out;
}

// --------------------------------------------------------- flat coordinates

namespace {

bool depends_on(const LaurentPoly& p, const std::vector<Symbol>& coordinates, const std::vector<ExpRule>& rules) {
  for (Symbol s : coordinates) {
    if (p.involves(s)) return true;
  }
  for (const auto& r : rules) {
    if (p.involves(r.exp_symbol)) return true;
  }
  return false;
}

bool constant_matrix(const Matrix<LaurentPoly>& m, const std::vector<Symbol>& coordinates,
                     const std::vector<ExpRule>& rules) {
  for (const auto& row : m) {
    for (const auto& v : row) {
      if (depends_on(v, coordinates, rules)) return false;
    }
  }
  return true;
}

// Monomials in `vars` with the given weighted degree and total degree >= 2.
std::vector<Monomial> weighted_monomials(const std::vector<Symbol>& vars, const std::vector<Rational>& degs,
                                         const Rational& target) {
  std::vector<Monomial> out;
  std::function<void(std::size_t, Monomial, Rational, int)> rec = [&](std::size_t k, Monomial m, Rational left,
                                                                       int total) {
    if (k == vars.size()) {
      if (left == 0 && total >= 2) out.push_back(m);
      return;
    }
    for (int e = 0; Rational(e) * degs[k] <= left; ++e) {
      rec(k + 1, m * Monomial::of(vars[k], e), left - Rational(e) * degs[k], total + e);
    }
  };
  rec(0, Monomial(), target, 0);
  return out;
}

Matrix<LaurentPoly> pulled_back_metric(const Matrix<LaurentPoly>& eta_raw, const FlatCoordinates& fc) {
  std::map<Symbol, LaurentPoly> subst;
  for (std::size_t i = 0; i < fc.raw.size(); ++i) subst[fc.raw[i]] = fc.raw_in_flat[i];
  const std::size_t n = fc.raw.size();
  Matrix<LaurentPoly> jac(n, std::vector<LaurentPoly>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) jac[i][k] = fc.raw_in_flat[i].diff(fc.flat[k]);
  }
  Matrix<LaurentPoly> pulled(n, std::vector<LaurentPoly>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) pulled[i][j] = eta_raw[i][j].substitute(subst);
  }
  Matrix<LaurentPoly> out(n, std::vector<LaurentPoly>(n));
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = 0; l < n; ++l) {
      LaurentPoly s;
      for (std::size_t i = 0; i < n; ++i) {
        if (jac[i][k].is_zero()) continue;
        for (std::size_t j = 0; j < n; ++j) {
          if (!jac[j][l].is_zero() && !pulled[i][j].is_zero()) s += jac[i][k] * pulled[i][j] * jac[j][l];
        }
      }
      out[k][l] = s;
    }
  }
  return out;
}

}  // namespace

FlatCoordinates flat_coordinates(const LGSystem& lg, const LaurentPoly& phi) {
  const std::size_t n = lg.mu();
  FlatCoordinates fc;
  fc.raw = lg.coordinates;
  for (std::size_t i = 0; i < n; ++i) fc.flat.push_back(sym("t" + std::to_string(i)));
  for (std::size_t i = 0; i < n; ++i) fc.raw_in_flat.push_back(LaurentPoly::variable(fc.flat[i]));
  fc.flat_in_raw.clear();
  for (std::size_t i = 0; i < n; ++i) fc.flat_in_raw.push_back(LaurentPoly::variable(fc.raw[i]));
  for (const auto& rule : lg.exp_rules) {
    auto it = std::find(fc.raw.begin(), fc.raw.end(), rule.coordinate);
    fc.exp_rules.push_back({rule.exp_symbol, fc.flat[it - fc.raw.begin()]});
  }

  Frame raw = Frame::raw(lg, phi);
  Matrix<LaurentPoly> eta_raw = metric_eta(raw);
  if (constant_matrix(eta_raw, lg.coordinates, lg.exp_rules)) return fc;

  if (lg.kind != LGKind::Polynomial || !lg.exp_rules.empty()) {
    throw Error(ErrorKind::FlatCoordinateSolver, "non-constant metric for a Laurent or exponential family");
  }
  std::vector<Rational> degs;
  for (std::size_t i = 0; i < n; ++i) {
    degs.push_back(lg.coordinate_degree(i));
    if (degs.back() <= 0) throw Error(ErrorKind::FlatCoordinateSolver, "coordinate of non-positive degree");
  }
  Rational max_deg = *std::max_element(degs.begin(), degs.end());
  Rational min_deg = *std::min_element(degs.begin(), degs.end());
  Rational bound_q = max_deg / min_deg;
  int max_order = static_cast<int>(mpz_class(bound_q.get_num() / bound_q.get_den()).get_si());

  fc.identity = false;
  std::vector<std::vector<Monomial>> candidates(n);
  for (std::size_t i = 0; i < n; ++i) candidates[i] = weighted_monomials(fc.flat, degs, degs[i]);

  int unknown_counter = 0;
  for (int p = 2; p <= max_order; ++p) {
    std::vector<std::pair<std::size_t, Monomial>> unknowns;
    std::vector<Symbol> unknown_symbols;
    FlatCoordinates trial = fc;
    for (std::size_t i = 0; i < n; ++i) {
      for (const auto& m : candidates[i]) {
        if (m.total_degree() != p) continue;
        Symbol u = sym("_u" + std::to_string(unknown_counter++));
        unknowns.emplace_back(i, m);
        unknown_symbols.push_back(u);
        trial.raw_in_flat[i] += LaurentPoly::term(1, m * Monomial::of(u));
      }
    }
    if (unknowns.empty()) continue;
    Matrix<LaurentPoly> eta = pulled_back_metric(eta_raw, trial);
    std::map<std::pair<std::size_t, std::string>, std::size_t> row_of;
    Matrix<Rational> a;
    std::vector<Rational> b;
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t l = k; l < n; ++l) {
        LaurentPoly part = eta[k][l].homogeneous_part(fc.flat, p - 1);
        for (const auto& [m, c] : part.terms()) {
          Monomial tpart = m;
          int which = -1;
          int udeg = 0;
          for (std::size_t u = 0; u < unknown_symbols.size(); ++u) {
            int e = m.exponent(unknown_symbols[u]);
            if (e != 0) {
              udeg += e;
              which = static_cast<int>(u);
              tpart = tpart.without(unknown_symbols[u]);
            }
          }
          if (udeg > 1) continue;
          auto key = std::make_pair(k * n + l, tpart.to_string());
          auto [it, inserted] = row_of.try_emplace(key, a.size());
          if (inserted) {
            a.emplace_back(unknowns.size());
            b.emplace_back(0);
          }
          if (which < 0) {
            b[it->second] -= c;
          } else {
            a[it->second][which] += c;
          }
        }
      }
    }
    auto solution = solve_rational(a, b);
    if (!solution) {
      throw Error(ErrorKind::FlatCoordinateSolver, "metric cannot be made constant at order " + std::to_string(p));
    }
    for (std::size_t u = 0; u < unknowns.size(); ++u) {
      const auto& [i, m] = unknowns[u];
      fc.raw_in_flat[i] += LaurentPoly::term((*solution)[u], m);
    }
  }
  if (!constant_matrix(pulled_back_metric(eta_raw, fc), fc.flat, {})) {
    throw Error(ErrorKind::FlatCoordinateSolver, "metric still depends on the coordinates after order " +
                                                     std::to_string(max_order));
  }

  // Invert a(t) by fixed-point iteration t = a - (a(t) - t).
  std::vector<LaurentPoly> t_of_a = fc.flat_in_raw;
  for (int iter = 0; iter <= max_order + 1; ++iter) {
    std::map<Symbol, LaurentPoly> subst;
    for (std::size_t i = 0; i < n; ++i) subst[fc.flat[i]] = t_of_a[i];
    std::vector<LaurentPoly> next;
    for (std::size_t i = 0; i < n; ++i) {
      LaurentPoly correction = fc.raw_in_flat[i] - LaurentPoly::variable(fc.flat[i]);
      next.push_back(LaurentPoly::variable(fc.raw[i]) - correction.substitute(subst));
    }
    t_of_a = std::move(next);
  }
  fc.flat_in_raw = t_of_a;
  return fc;
}

Frame flat_frame(const LGSystem& lg, const FlatCoordinates& flat, const LaurentPoly& phi) {
  std::map<Symbol, LaurentPoly> subst;
  for (std::size_t i = 0; i < flat.raw.size(); ++i) subst[flat.raw[i]] = flat.raw_in_flat[i];
  return Frame(lg, lg.family.substitute(subst), flat.flat, flat.exp_rules, phi);
}

// ------------------------------------------------------ structure constants

Tensor3 structure_constants(const Frame& frame) {
  const std::size_t n = frame.mu();
  Tensor3 c(n, Matrix<LaurentPoly>(n, std::vector<LaurentPoly>(n)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      LaurentPoly dij = frame.delta(i) * frame.delta(j);
      for (std::size_t k = j; k < n; ++k) {
        LaurentPoly v = frame.k0(dij, frame.delta(k));
        c[i][j][k] = c[i][k][j] = c[j][i][k] = c[j][k][i] = c[k][i][j] = c[k][j][i] = v;
      }
    }
  }
  return c;
}

void check_integrability(const Frame& frame, const Tensor3& c) {
  const std::size_t n = frame.mu();
  for (std::size_t l = 0; l < n; ++l) {
    for (std::size_t i = l + 1; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = j; k < n; ++k) {
          if (frame.diff(c[i][j][k], l) != frame.diff(c[l][j][k], i)) {
            throw Error(ErrorKind::IntegrabilityViolation,
                        "d" + std::to_string(l) + " C" + std::to_string(i) + std::to_string(j) + std::to_string(k) +
                            " is not symmetric");
          }
        }
      }
    }
  }
}

LaurentPoly integrate_gradient(const std::vector<LaurentPoly>& g, const std::vector<Symbol>& coordinates,
                               const std::vector<ExpRule>& exp_rules) {
  LaurentPoly u;
  std::vector<Symbol> done;
  std::vector<ExpRule> done_rules;
  for (std::size_t i = 0; i < g.size(); ++i) {
    LaurentPoly residual = g[i] - u.diff(coordinates[i], exp_rules);
    if (depends_on(residual, done, done_rules)) {
      throw Error(ErrorKind::IntegrabilityViolation, "gradient is not closed in " + coordinates[i].name());
    }
    u += integrate(residual, coordinates[i], exp_rules);
    done.push_back(coordinates[i]);
    for (const auto& r : exp_rules) {
      if (r.coordinate == coordinates[i]) done_rules.push_back(r);
    }
  }
  return u;
}

LaurentPoly drop_low_degree(const LaurentPoly& p, const std::vector<Symbol>& coordinates,
                            const std::vector<ExpRule>& exp_rules, int max_degree) {
  LaurentPoly out;
  for (const auto& [m, c] : p.terms()) {
    bool has_exp = false;
    for (const auto& r : exp_rules) has_exp = has_exp || m.involves(r.exp_symbol);
    int degree = 0;
    for (Symbol s : coordinates) degree += m.exponent(s);
    if (has_exp || degree > max_degree) out += LaurentPoly::term(c, m);
  }
  return out;
}

LaurentPoly integrate_potential(const Tensor3& c, const std::vector<Symbol>& coordinates,
                                const std::vector<ExpRule>& exp_rules) {
  const std::size_t n = coordinates.size();
  Matrix<LaurentPoly> second(n, std::vector<LaurentPoly>(n));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j; k < n; ++k) {
      std::vector<LaurentPoly> g;
      for (std::size_t i = 0; i < n; ++i) g.push_back(c[i][j][k]);
      second[j][k] = second[k][j] = integrate_gradient(g, coordinates, exp_rules);
    }
  }
  std::vector<LaurentPoly> first;
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<LaurentPoly> g;
    for (std::size_t j = 0; j < n; ++j) g.push_back(second[j][k]);
    first.push_back(integrate_gradient(g, coordinates, exp_rules));
  }
  return drop_low_degree(integrate_gradient(first, coordinates, exp_rules), coordinates, exp_rules, 2);
}

Tensor3 third_derivatives(const LaurentPoly& potential, const std::vector<Symbol>& coordinates,
                          const std::vector<ExpRule>& exp_rules) {
  const std::size_t n = coordinates.size();
  Tensor3 c(n, Matrix<LaurentPoly>(n, std::vector<LaurentPoly>(n)));
  for (std::size_t i = 0; i < n; ++i) {
    LaurentPoly di = potential.diff(coordinates[i], exp_rules);
    for (std::size_t j = i; j < n; ++j) {
      LaurentPoly dij = di.diff(coordinates[j], exp_rules);
      for (std::size_t k = j; k < n; ++k) {
        LaurentPoly v = dij.diff(coordinates[k], exp_rules);
        c[i][j][k] = c[i][k][j] = c[j][i][k] = c[j][k][i] = c[k][i][j] = c[k][j][i] = v;
      }
    }
  }
  return c;
}

Matrix<LaurentPoly> inverse_metric(const Matrix<LaurentPoly>& eta) {
  return unimodular_inverse(eta, "the metric");
}

std::vector<LaurentPoly> wdvv_residuals(const Tensor3& c, const Matrix<LaurentPoly>& eta) {
  const std::size_t n = eta.size();
  Matrix<LaurentPoly> inv = inverse_metric(eta);
  // raised[a][b][e] = C_ab^e
  Tensor3 raised(n, Matrix<LaurentPoly>(n, std::vector<LaurentPoly>(n)));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t e = 0; e < n; ++e) {
        LaurentPoly s;
        for (std::size_t f = 0; f < n; ++f) {
          if (!inv[f][e].is_zero() && !c[a][b][f].is_zero()) s += c[a][b][f] * inv[f][e];
        }
        raised[a][b][e] = s;
      }
    }
  }
  std::vector<LaurentPoly> out;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t cc = 0; cc < n; ++cc) {
        for (std::size_t d = 0; d < n; ++d) {
          LaurentPoly s;
          for (std::size_t e = 0; e < n; ++e) {
            s += raised[a][b][e] * c[e][cc][d];
            s -= raised[a][cc][e] * c[e][b][d];
          }
          out.push_back(s);
        }
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------- assembly

Rational form_degree(const LGSystem& lg, const LaurentPoly& phi) {
  Rational base = 0;
  if (lg.kind == LGKind::Polynomial) {
    for (const auto& w : lg.weights) base += w;
  }
  if (phi.is_zero()) return base;
  std::optional<Rational> lowest;
  for (const auto& [m, c] : phi.terms()) {
    Rational d = lg.weighted_degree(m);
    if (!lowest || d < *lowest) lowest = d;
  }
  return base + *lowest;
}

FrobeniusData build_frobenius(const LGSystem& lg, const LaurentPoly& phi) {
  FrobeniusData data;
  data.system = lg;
  data.flat = flat_coordinates(lg, phi);
  data.phi = phi;
  Frame frame = flat_frame(lg, data.flat, phi);
  data.family = frame.family();
  data.eta = metric_eta(frame);
  if (!constant_matrix(data.eta, frame.coordinates(), frame.exp_rules())) {
    throw Error(ErrorKind::FlatCoordinateSolver, "metric is not constant in the flat frame");
  }
  data.eta_inverse = inverse_metric(data.eta);
  data.c = structure_constants(frame);
  check_integrability(frame, data.c);
  data.potential = integrate_potential(data.c, frame.coordinates(), frame.exp_rules());
  data.euler = euler_field(frame);
  data.form_degree = form_degree(lg, phi);
  for (std::size_t i = 0; i < frame.mu(); ++i) {
    Symbol t = frame.coordinates()[i];
    const LaurentPoly& e = data.euler[i];
    LaurentPoly linear = e.coefficient(t, 1);
    LaurentPoly shift = e.coefficient(t, 0);
    if (!linear.is_zero() && !linear.is_constant()) {
      throw Error(ErrorKind::Unsupported, "Euler field is not linear in " + t.name());
    }
    Rational deg = linear.is_zero() ? Rational(0) : linear.constant_value();
    data.degrees.push_back(deg);
    data.shifts.push_back(shift);
    data.n_diagonal.push_back(data.form_degree + 1 - deg);
  }
  data.discriminant = discriminant(frame);
  data.normalization_note =
      "eta and C are residue pairings of dz-forms; the cubic term of the potential is (1/2) eta_01 t0^2 t1";
  return data;
}

}  // namespace primform
