#include "primform/brieskorn.hpp"

#include <algorithm>

#include "primform/error.hpp"
#include "primform/rat_func.hpp"

namespace primform {

namespace {

bool laurent_kind(const Frame& f) { return f.system().kind == LGKind::Laurent; }

}  // namespace

BrieskornCalculus::BrieskornCalculus(Frame frame) : frame_(std::move(frame)) {
  df_ = frame_.critical_function();
  d_df_ = apply_d(df_);
}

LaurentPoly BrieskornCalculus::apply_d(const LaurentPoly& p) const {
  return laurent_kind(frame_) ? p.log_derivative(frame_.z()) : p.diff(frame_.z());
}

BrieskornClass BrieskornCalculus::make(LaurentPoly numerator, int pole_order) const {
  return reduce({std::move(numerator), pole_order});
}

BrieskornClass BrieskornCalculus::reduce(BrieskornClass c) const {
  if (c.numerator.is_zero()) return {LaurentPoly(), 0};
  while (c.pole_order < 0) {
    c.numerator *= df_;
    ++c.pole_order;
  }
  while (c.pole_order > 0) {
    auto q = divide_exact(c.numerator, df_);
    if (!q) break;
    c.numerator = std::move(*q);
    --c.pole_order;
  }
  return c;
}

BrieskornClass BrieskornCalculus::lift(const BrieskornClass& c, int pole_order) const {
  return {c.numerator * df_.pow(pole_order - c.pole_order), pole_order};
}

bool BrieskornCalculus::equal(const BrieskornClass& a, const BrieskornClass& b) const {
  return is_zero(sub(a, b));
}

BrieskornClass BrieskornCalculus::add(const BrieskornClass& a, const BrieskornClass& b) const {
  if (a.numerator.is_zero()) return b;
  if (b.numerator.is_zero()) return a;
  int k = std::max(a.pole_order, b.pole_order);
  return make(lift(a, k).numerator + lift(b, k).numerator, k);
}

BrieskornClass BrieskornCalculus::sub(const BrieskornClass& a, const BrieskornClass& b) const {
  return add(a, {-b.numerator, b.pole_order});
}

BrieskornClass BrieskornCalculus::times(const LaurentPoly& f, const BrieskornClass& c) const {
  Symbol t0 = frame_.coordinates().front();
  LaurentPoly g = f.involves(t0) ? f.substitute(t0, frame_.f0()) : f;
  return make(g * c.numerator, c.pole_order);
}

BrieskornClass BrieskornCalculus::d(const BrieskornClass& c) const {
  const int k = c.pole_order;
  LaurentPoly num = apply_d(c.numerator) * df_;
  if (k != 0) num -= (c.numerator * d_df_).scaled(k);
  return make(std::move(num), k + 1);
}

BrieskornClass BrieskornCalculus::nabla(const BrieskornClass& c, std::size_t i) const {
  const int k = c.pole_order;
  LaurentPoly num = frame_.diff(c.numerator, i) * df_;
  if (k != 0) num -= (c.numerator * frame_.diff(df_, i)).scaled(k);
  BrieskornClass moved = d({frame_.delta(i) * c.numerator, k + 1});
  return sub(make(std::move(num), k + 1), moved);
}

BrieskornClass BrieskornCalculus::nabla_field(const BrieskornClass& c, const std::vector<LaurentPoly>& field) const {
  BrieskornClass out;
  for (std::size_t i = 0; i < field.size(); ++i) {
    if (!field[i].is_zero()) out = add(out, times(field[i], nabla(c, i)));
  }
  return out;
}

BrieskornClass BrieskornCalculus::nabla_delta0_inverse(const BrieskornClass& c) const {
  const Symbol z = frame_.z();
  const bool log = laurent_kind(frame_);
  // Inverse of L(psi) = -D(psi / DF): psi = -DF * antiderivative, zero constant at infinity.
  auto invert_l = [&](const BrieskornClass& chi) -> BrieskornClass {
    if (chi.numerator.is_zero()) return {};
    const int k = chi.pole_order;
    const int h = df_.degree(z);
    const int l = df_.low_degree(z);
    // Lowest exponent of G * DF^(k-1); the constant of integration can sit at 0.
    const int lo = std::min(chi.numerator.low_degree(z) - k * l, 0) + std::max(k - 1, 0) * l - 1;
    const int order = lo - std::max(k - 1, 0) * h - 1;
    LaurentPoly den = df_.pow(k);
    auto series = laurent_expand(chi.numerator, den, z, ExpansionPoint::Infinity, order);
    const int log_exponent = log ? 0 : -1;
    if (auto it = series.find(log_exponent); it != series.end() && !it->second.is_zero()) {
      throw Error(ErrorKind::LogObstruction, "residue at infinity " + it->second.to_string());
    }
    LaurentPoly g;
    for (const auto& [j, coeff] : series) {
      if (j == log_exponent) continue;
      int e = log ? j : j + 1;
      g += coeff.scaled(Rational(-1) / e).times(Monomial::of(z, e));
    }
    if (k == 0) return make(g * df_, 0);
    LaurentPoly a;
    LaurentPoly full = k == 1 ? g : g * df_.pow(k - 1);
    for (const auto& [m, coeff] : full.terms()) {
      if (m.exponent(z) >= lo) a += LaurentPoly::term(coeff, m);
    }
    return make(a * df_, k - 1);
  };
  // DF does not involve t0, so solve L psi_m + (m+1) psi_{m+1} = c_m from the top t0-degree down.
  Symbol t0 = frame_.coordinates().front();
  if (df_.involves(t0)) throw Error(ErrorKind::Unsupported, "critical function depends on t0");
  auto parts = c.numerator.coefficients(t0);
  BrieskornClass psi, above;
  for (int m = parts.empty() ? -1 : parts.rbegin()->first; m >= 0; --m) {
    auto it = parts.find(m);
    BrieskornClass cm{it == parts.end() ? LaurentPoly() : it->second, c.pole_order};
    BrieskornClass pm = invert_l(sub(reduce(cm), {above.numerator.scaled(m + 1), above.pole_order}));
    psi = add(psi, {pm.numerator.times(Monomial::of(t0, m)), pm.pole_order});
    above = pm;
  }
  BrieskornClass check = sub(nabla(psi, 0), c);
  if (!is_zero(check)) {
    throw Error(ErrorKind::LogObstruction, "nonzero residues on the critical set");
  }
  return psi;
}

LaurentPoly BrieskornCalculus::total_residue(const BrieskornClass& c) const {
  const Symbol z = frame_.z();
  LaurentPoly den = df_.pow(c.pole_order);
  if (laurent_kind(frame_)) return primform::total_residue(c.numerator, den.times(Monomial::of(z)), z, true);
  return primform::total_residue(c.numerator, den, z, false);
}

LaurentPoly BrieskornCalculus::k1_pairing(std::size_t i, std::size_t j, const LaurentPoly& phi) const {
  if (i == j) return LaurentPoly();
  BrieskornClass c{phi * phi * frame_.delta(i) * frame_.delta(j), 2};
  return total_residue(c).scaled(ratio(-1, 2));
}

std::string BrieskornCalculus::to_string(const BrieskornClass& c) const {
  std::string vol = laurent_kind(frame_) ? "dz/z" : "dz";
  if (c.pole_order == 0) return "(" + c.numerator.to_string() + ") " + vol;
  return "(" + c.numerator.to_string() + ")/(" + df_.to_string() + ")^" + std::to_string(c.pole_order) + " " + vol;
}

// ------------------------------------------------------------- verification

bool PrimitiveFormReport::all_hold() const {
  return std::all_of(conditions.begin(), conditions.end(), [](const ConditionResult& c) { return c.holds; });
}

namespace {

std::optional<Rational> rational_value(const LaurentPoly& p) {
  if (p.is_zero()) return Rational(0);
  if (!p.is_constant()) return std::nullopt;
  return p.constant_value();
}

}  // namespace

PrimitiveFormReport verify_primitive_form(const LGSystem& lg, const LaurentPoly& phi) {
  if (!lg.one_variable()) throw Error(ErrorKind::Unsupported, "primitive-form verification needs one variable");
  FlatCoordinates flat = flat_coordinates(lg);
  BrieskornCalculus calc(flat_frame(lg, flat, phi));
  const Frame& frame = calc.frame();
  const std::size_t n = frame.mu();
  const BrieskornClass zeta = calc.make(phi);

  PrimitiveFormReport report;
  std::vector<BrieskornClass> grad(n), psi(n);
  for (std::size_t i = 0; i < n; ++i) grad[i] = calc.nabla(zeta, i);

  // Invertibility: nabla_i zeta^(-1) have regular representatives forming a basis.
  ConditionResult inv{"invertibility", true, ""};
  try {
    for (std::size_t i = 0; i < n; ++i) psi[i] = calc.nabla_delta0_inverse(grad[i]);
  } catch (const Error& e) {
    inv = {"invertibility", false, std::string("nabla_0 inverse: ") + e.what()};
  }
  Matrix<LaurentPoly> basis(n, std::vector<LaurentPoly>(n));
  if (inv.holds) {
    for (std::size_t i = 0; i < n && inv.holds; ++i) {
      if (psi[i].pole_order != 0) inv = {"invertibility", false, "irregular class " + calc.to_string(psi[i])};
    }
  }
  if (inv.holds) {
    for (std::size_t j = 0; j < n; ++j) {
      auto col = frame.to_delta_basis(psi[j].numerator);
      for (std::size_t i = 0; i < n; ++i) basis[i][j] = col[i];
    }
    LaurentPoly det = determinant(basis);
    if (!det.unit_inverse()) inv = {"invertibility", false, "determinant " + det.to_string()};
  }
  report.conditions.push_back(inv);

  ConditionResult first{"first integrability", true, ""};
  for (std::size_t i = 0; i < n && first.holds; ++i) {
    for (std::size_t j = i + 1; j < n && first.holds; ++j) {
      LaurentPoly k1 = calc.k1_pairing(i, j, phi);
      if (!k1.is_zero()) {
        first = {"first integrability", false,
                 "K1(" + std::to_string(i) + "," + std::to_string(j) + ") = " + k1.to_string()};
      }
    }
  }
  report.conditions.push_back(first);

  // Homogeneity: nabla_E zeta = (r - 1) zeta.
  ConditionResult homog{"homogeneity", false, ""};
  BrieskornClass ez = calc.nabla_field(zeta, euler_field(frame));
  LaurentPoly scaled_zeta = phi * calc.df().pow(ez.pole_order);
  std::optional<LaurentPoly> quotient =
      ez.numerator.is_zero() ? std::optional<LaurentPoly>(LaurentPoly()) : divide_exact(ez.numerator, scaled_zeta);
  std::optional<Rational> lambda = quotient ? rational_value(*quotient) : std::nullopt;
  if (lambda) {
    homog.holds = true;
    report.r = *lambda + 1;
    homog.witness = "r = " + to_string(*report.r);
  } else {
    Rational guess = form_degree(lg, phi) - 1;
    BrieskornClass residual = calc.sub(ez, calc.make(phi.scaled(guess)));
    homog.witness = "nabla_E zeta - (" + to_string(guess) + ") zeta = " + calc.to_string(residual);
  }
  report.conditions.push_back(homog);

  // Second derivatives: nabla_i nabla_j zeta^(-2) = nabla_{d_i o d_j} zeta^(-1).
  ConditionResult second{"second-derivative reduction", inv.holds, inv.holds ? "" : "needs invertibility"};
  for (std::size_t i = 0; i < n && second.holds; ++i) {
    for (std::size_t j = i; j < n && second.holds; ++j) {
      auto prod = residual_product(frame, i, j);
      BrieskornClass y = calc.nabla(psi[j], i);
      for (std::size_t e = 0; e < n; ++e) {
        if (!prod[e].is_zero()) y = calc.sub(y, calc.times(prod[e], grad[e]));
      }
      if (!calc.is_zero(y)) {
        second = {"second-derivative reduction", false,
                  "(" + std::to_string(i) + "," + std::to_string(j) + "): " + calc.to_string(y)};
      }
    }
  }
  report.conditions.push_back(second);

  // t0 multiplication: t0 nabla_j zeta = nabla_{t0 o d_j} zeta + nabla_{(N-1) d_j} zeta^(-1).
  ConditionResult fifth{"t0-multiplication reduction", inv.holds, inv.holds ? "" : "needs invertibility"};
  Matrix<Rational> nmat(n, std::vector<Rational>(n));
  Symbol t0 = frame.coordinates().front();
  for (std::size_t j = 0; j < n && fifth.holds; ++j) {
    auto prod = t0_product(frame, j);
    BrieskornClass w = calc.times(LaurentPoly::variable(t0), grad[j]);
    for (std::size_t e = 0; e < n; ++e) {
      if (!prod[e].is_zero()) w = calc.sub(w, calc.times(prod[e], grad[e]));
    }
    auto fail = [&](const std::string& why) {
      fifth = {"t0-multiplication reduction", false, "d" + std::to_string(j) + ": " + why};
    };
    if (w.pole_order != 0) {
      fail("irregular remainder " + calc.to_string(w));
      break;
    }
    auto coords = solve_unimodular(basis, frame.to_delta_basis(w.numerator));
    if (!coords) {
      fail("remainder outside the span");
      break;
    }
    BrieskornClass rest = w;
    for (std::size_t e = 0; e < n && fifth.holds; ++e) {
      auto value = rational_value((*coords)[e]);
      if (!value) {
        fail("non-constant coefficient " + (*coords)[e].to_string());
        break;
      }
      nmat[e][j] = *value + (e == j ? 1 : 0);
      rest = calc.sub(rest, calc.times((*coords)[e], psi[e]));
    }
    if (fifth.holds && !calc.is_zero(rest)) fail("remainder " + calc.to_string(rest));
  }
  if (fifth.holds) report.n_matrix = nmat;
  report.conditions.push_back(fifth);
  return report;
}

}  // namespace primform
