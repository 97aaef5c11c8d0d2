#include "report.hpp"

#include <sstream>

#include "primform/spectrum.hpp"

namespace primform::cli {

namespace {

std::string str(const Rational& r) { return to_string(r); }
std::string str(const LaurentPoly& p) { return p.to_string(); }

template <typename T>
json matrix(const Matrix<T>& m) {
  json out = json::array();
  for (const auto& row : m) {
    json r = json::array();
    for (const auto& v : row) r.push_back(str(v));
    out.push_back(r);
  }
  return out;
}

template <typename T>
json list(const std::vector<T>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(str(x));
  return out;
}

json spectrum_json(const Spectrum& sp) {
  json out;
  out["exponents"] = list(sp.exponents);
  out["shifted"] = list(sp.shifted);
  out["minimal_exponent"] = str(sp.minimal_exponent);
  out["c_hat"] = str(sp.c_hat);
  out["c_hat_from_r"] = str(sp.c_hat_from_r);
  out["degrees"] = list(sp.degrees);
  json chi = json::array();
  for (const auto& [power, count] : poincare_polynomial(sp)) chi.push_back({{"power", str(power)}, {"multiplicity", count}});
  out["poincare_polynomial"] = chi;
  out["exponent_duality"] = sp.exponent_duality;
  out["poincare_duality"] = poincare_duality(sp);
  return out;
}

}  // namespace

json ring_section(const LGSystem& lg) {
  MilnorRing ring = MilnorRing::build(lg);
  json out;
  out["system"] = lg.name;
  out["kind"] = lg.kind == LGKind::Laurent ? "laurent" : "polynomial";
  out["superpotential"] = lg.f.to_string();
  out["mu"] = ring.mu();
  json basis = json::array();
  for (const auto& m : ring.basis()) basis.push_back(m.to_string());
  out["basis"] = basis;
  out["socle"] = ring.basis()[ring.socle_index()].to_string();
  out["gram"] = matrix(ring.gram());
  out["hessian_residue"] = str(ring.residue(ring.hessian()));
  if (lg.kind == LGKind::Polynomial) {
    Rational r = 0;
    for (const auto& w : lg.weights) r += w;
    out["spectrum"] = spectrum_json(spectrum(lg, r));
    out["mu_from_weights"] = str(milnor_number_from_weights(lg));
  } else if (lg.one_variable()) {
    FrobeniusData fd = build_frobenius(lg);
    out["spectrum"] = spectrum_json(spectrum_from_degrees(fd.degrees, fd.form_degree, 0));
  }
  return out;
}

json frobenius_section(const FrobeniusData& fd, bool& ok) {
  json out;
  out["coordinates"] = json::array();
  for (Symbol s : fd.coordinates()) out["coordinates"].push_back(s.name());
  json flat;
  flat["identity"] = fd.flat.identity;
  flat["raw_in_flat"] = list(fd.flat.raw_in_flat);
  flat["flat_in_raw"] = list(fd.flat.flat_in_raw);
  out["flat_coordinates"] = flat;
  out["eta"] = matrix(fd.eta);
  out["potential"] = str(fd.potential);
  out["euler"] = list(fd.euler);
  out["degrees"] = list(fd.degrees);
  out["form_degree"] = str(fd.form_degree);
  out["n_diagonal"] = list(fd.n_diagonal);
  out["discriminant"] = str(fd.discriminant);
  out["normalization_note"] = fd.normalization_note;

  Frame frame = flat_frame(fd.system, fd.flat, fd.phi);
  LaurentPoly e_delta = apply_field(frame, fd.euler, fd.discriminant);
  bool euler_ok = e_delta == fd.discriminant.scaled(static_cast<long>(frame.mu()));
  std::size_t nonzero = 0;
  std::string witness;
  for (const auto& r : wdvv_residuals(fd.c, fd.eta)) {
    if (r.is_zero()) continue;
    if (witness.empty()) witness = r.to_string();
    ++nonzero;
  }
  bool potential_ok = third_derivatives(fd.potential, fd.coordinates(), fd.exp_rules()) == fd.c;
  json checks;
  checks["euler_discriminant"] = euler_ok;
  checks["wdvv_nonzero"] = nonzero;
  if (!witness.empty()) checks["wdvv_witness"] = witness;
  checks["potential_reproduces_c"] = potential_ok;
  out["checks"] = checks;
  ok = euler_ok && nonzero == 0 && potential_ok;
  return out;
}

json verification_section(const PrimitiveFormReport& report) {
  json out;
  json conditions = json::array();
  int held = 0;
  for (const auto& c : report.conditions) {
    json entry;
    entry["name"] = c.name;
    entry["holds"] = c.holds;
    entry["witness"] = c.witness;
    conditions.push_back(entry);
    held += c.holds;
  }
  out["conditions"] = conditions;
  out["satisfied"] = std::to_string(held) + "/" + std::to_string(report.conditions.size());
  out["r"] = report.r ? json(str(*report.r)) : json(nullptr);
  out["n"] = report.n_matrix ? matrix(*report.n_matrix) : json(nullptr);
  out["inverse_policy"] =
      "nabla_delta0^-1 is fixed by zero constant term of the expansion at infinity; conditions 4 and 5 are exact zero tests";
  return out;
}

json correlators_section(GravitationalDescendants& b, CP1GromovWitten* a, const Caps& caps, bool& ok) {
  ok = true;
  json out;
  out["caps"] = {{"max_insertions", caps.max_insertions}, {"max_level", caps.max_level},
                 {"max_degree", caps.max_degree}};
  const int dim = static_cast<int>(b.dim());
  CorrelatorFn bf = [&](const Insertions& i, int beta) { return b.correlator(i, beta); };
  auto table_json = [](const CorrelatorTable& t) {
    json entries = json::object();
    for (const auto& [key, value] : t.entries) entries[to_string(key)] = str(value);
    return entries;
  };
  auto ledger_json = [&](const std::vector<AxiomCheck>& checks) {
    json l = json::array();
    for (const auto& c : checks) {
      l.push_back({{"axiom", c.name}, {"checked", c.checked}, {"failed", c.failed}, {"first_failure", c.first_failure}});
      ok = ok && c.failed == 0;
    }
    return l;
  };
  CorrelatorTable bt = tabulate(bf, dim, caps, 1);
  out["b_side"] = table_json(bt);
  json deformed = json::object();
  for (int l = 0; l < dim; ++l) {
    for (int d = 0; d <= caps.max_level; ++d) deformed["h_" + std::to_string(l) + "_" + std::to_string(d)] = str(b.h(l, d));
  }
  out["deformed_flat"] = deformed;
  if (a) {
    CorrelatorFn af = [&](const Insertions& i, int beta) { return a->correlator(i, beta); };
    CorrelatorTable at = tabulate(af, dim, caps);
    out["a_side"] = table_json(at);
    out["axioms_a_side"] = ledger_json(check_axioms(at, af));
    out["axioms_b_side"] = ledger_json(check_axioms(bt, bf));
    std::size_t mismatches = 0;
    std::string first;
    for (const auto& ins : enumerate_insertions(dim, caps)) {
      int descendants = 0;
      for (const auto& x : ins) descendants += x.level > 0;
      if (descendants > 1) continue;
      for (int beta = 0; beta <= caps.max_degree; ++beta) {
        if (af(ins, beta) == bf(ins, beta)) continue;
        if (first.empty()) first = to_string(make_key(ins, beta));
        ++mismatches;
      }
    }
    out["pipeline_mismatches"] = mismatches;
    if (!first.empty()) out["first_mismatch"] = first;
    ok = ok && mismatches == 0;
    json tower = json::object();
    for (int d = 1; 2 * d - 2 <= caps.max_level && d <= caps.max_degree; ++d) {
      Insertions one{{2 * d - 2, 1}};
      tower[to_string(make_key(one, d))] = {{"a_side", str(af(one, d))}, {"b_side", str(bf(one, d))}};
    }
    out["one_point_tower"] = tower;
  }
  out["axiom_note"] = "string, dilaton and divisor equations are standard genus-0 axioms checked on every stored entry";
  return out;
}

json comparison_section(const Comparison& result, const Comparison& control, const Caps& caps) {
  json out;
  out["caps"] = {{"max_insertions", caps.max_insertions}, {"max_level", caps.max_level},
                 {"max_degree", caps.max_degree}};
  out["max_discrepancy"] = str(result.max_discrepancy);
  out["nonzero_coefficients"] = result.nonzero;
  out["coefficients"] = result.coefficients;
  if (!result.first_nonzero.empty()) out["first_nonzero"] = result.first_nonzero;
  out["control_c111_plus_q"] = {{"max_discrepancy", str(control.max_discrepancy)},
                                {"nonzero_coefficients", control.nonzero},
                                {"detected", control.max_discrepancy != 0}};
  out["convention"] = "t~ sums two-point functions <s_k(O_j) O^i> with k >= 0; the level -1 term is the identity part";
  return out;
}

std::string serialize(const json& report) { return report.dump(2) + "\n"; }

namespace {

void flatten(const json& v, const std::string& path, std::ostringstream& os) {
  if (v.is_object()) {
    for (const auto& [k, x] : v.items()) flatten(x, path.empty() ? k : path + "." + k, os);
  } else if (v.is_array() && !v.empty() && (v.front().is_object() || v.front().is_array())) {
    for (std::size_t i = 0; i < v.size(); ++i) flatten(v[i], path + "[" + std::to_string(i) + "]", os);
  } else if (v.is_string()) {
    os << path << ": " << v.get<std::string>() << "\n";
  } else {
    os << path << ": " << v.dump() << "\n";
  }
}

}  // namespace

std::string render_text(const json& report) {
  std::ostringstream os;
  flatten(report, "", os);
  return os.str();
}

}  // namespace primform::cli
