// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

#include "cli.hpp"
#include "json.hpp"
#include "primform/brieskorn.hpp"
#include "primform/descendants.hpp"
#include "primform/error.hpp"
#include "primform/frobenius.hpp"
#include "primform/milnor_ring.hpp"
#include "primform/spectrum.hpp"
#include "test_util.hpp"

using namespace primform;
using nlohmann::json;

namespace {

LaurentPoly P(const char* s) { return LaurentPoly::parse(s); }

std::vector<LaurentPoly> vec(std::initializer_list<const char*> xs) {
  std::vector<LaurentPoly> out;
  for (auto x : xs) out.push_back(P(x));
  return out;
}

const FrobeniusData& data(const std::string& name) {
  static std::map<std::string, FrobeniusData> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, build_frobenius(*builtin_system(name))).first;
  return it->second;
}

json cli_report(std::vector<std::string> args, int& code) {
  args.insert(args.end(), {"--json", "-"});
  std::ostringstream out, err;
  code = cli::run(args, out, err);
  return json::parse(out.str());
}

Rational inv_factorial_squared(int d) {
  Rational f = 1;
  for (int i = 2; i <= d; ++i) f *= i;
  return 1 / (f * f);
}

struct Outcome {
  bool pass;
  std::string detail;
};

// 1. Every condition of the definition holds for dz/z on CP1, with r = 0.
Outcome certificate() {
  int code = 0;
  json r = cli_report({"verify", "cp1"}, code);
  const json& v = r["verification"];
  bool all = true;
  for (const auto& c : v["conditions"]) all = all && c["holds"].get<bool>();
  bool pass = code == 0 && all && v["conditions"].size() == 5 && v["r"] == "0";
  return {pass, "conditions " + v["satisfied"].get<std::string>() + ", r = " + (v["r"].is_string() ? v["r"].get<std::string>() : "none")};
}

// 2. Euler field, discriminant and E(Delta) = mu Delta.
Outcome euler_discriminant() {
  const auto& d = data("cp1");
  Frame f = flat_frame(d.system, d.flat);
  LaurentPoly e_delta = apply_field(f, d.euler, d.discriminant);
  bool pass = d.euler == vec({"t0", "2"}) && d.discriminant == P("t0^2 - 4*q*E1") &&
              e_delta == d.discriminant.scaled(2) && f.mu() == 2;
  return {pass, "E = (" + d.euler[0].to_string() + ", " + d.euler[1].to_string() + "), Delta = " +
                    d.discriminant.to_string() + ", E Delta = " + e_delta.to_string()};
}

// 3. d1 o d1 = q e^{t1} d0 and t0 o d1 = -2 q e^{t1} d0.
Outcome products() {
  Frame f = flat_frame(*builtin_system("cp1"), data("cp1").flat);
  auto d1d1 = residual_product(f, 1, 1);
  auto t0d1 = t0_product(f, 1);
  bool pass = d1d1 == vec({"q*E1", "0"}) && t0d1 == vec({"-2*q*E1", "0"});
  return {pass, "d1 o d1 = " + d1d1[0].to_string() + " d0, t0 o d1 = " + t0d1[0].to_string() + " d0"};
}

// 4. Potential from C, with the normalization recorded in the report.
Outcome potential() {
  const auto& d = data("cp1");
  LaurentPoly phi = integrate_potential(d.c, d.coordinates(), d.exp_rules());
  int code = 0;
  json r = cli_report({"frobenius", "cp1"}, code);
  bool noted = r["frobenius"]["normalization_note"].get<std::string>().find("(1/2)") != std::string::npos;
  bool pass = phi == P("1/2*t0^2*t1 + q*E1") && d.potential == phi && noted && code == 0;
  return {pass, "Phi = " + phi.to_string() + (noted ? ", normalization noted" : ", note missing")};
}

// 5. Flat metric, symmetric C and dC, Frobenius compatibility, WDVV, and the corrupted control.
Outcome frobenius_axioms() {
  std::size_t checks = 0, failures = 0;
  auto expect = [&](bool ok) { ++checks; failures += !ok; };
  for (const char* name : {"a3", "cp1"}) {
    const auto& d = data(name);
    Frame f = flat_frame(d.system, d.flat);
    const std::size_t n = f.mu();
    for (const auto& row : d.eta) {
      for (const auto& x : row) expect(x.is_constant());
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
          expect(d.c[i][j][k] == d.c[j][i][k] && d.c[i][j][k] == d.c[i][k][j]);
          LaurentPoly left, right;
          auto ij = residual_product(f, i, j);
          auto jk = residual_product(f, j, k);
          for (std::size_t e = 0; e < n; ++e) {
            left += ij[e] * d.eta[e][k];
            right += d.eta[i][e] * jk[e];
          }
          expect(left == right);
        }
      }
    }
    try {
      check_integrability(f, d.c);
      expect(true);
    } catch (const Error&) {
      expect(false);
    }
    for (const auto& r : wdvv_residuals(d.c, d.eta)) expect(r.is_zero());
  }
  const auto& a3 = data("a3");
  auto bad = third_derivatives(a3.potential + P("t1^3*t2^3"), a3.coordinates(), a3.exp_rules());
  std::size_t fired = 0;
  for (const auto& r : wdvv_residuals(bad, a3.eta)) fired += !r.is_zero();
  bool pass = failures == 0 && fired > 0;
  return {pass, std::to_string(checks) + " identities, " + std::to_string(failures) + " failed; control fired on " +
                    std::to_string(fired) + " WDVV entries"};
}

// 6. Spectrum and Poincare duality for A1..A6, Milnor number from weights.
Outcome spectra() {
  int ok = 0;
  for (int n = 1; n <= 6; ++n) {
    LGSystem lg = *builtin_system("a" + std::to_string(n));
    Rational r = 0;
    for (const auto& w : lg.weights) r += w;
    Spectrum sp = spectrum(lg, r);
    Rational mu(static_cast<long>(MilnorRing::build(lg).mu()));
    ok += sp.exponent_duality && poincare_duality(sp) && milnor_number_from_weights(lg) == mu &&
          mu == static_cast<long>(n);
  }
  return {ok == 6, std::to_string(ok) + "/6 systems"};
}

// 7. Flatness of the connection on random classes and round trips of the inverse.
Outcome gauss_manin() {
  std::mt19937 rng(7);
  std::size_t checks = 0, failures = 0;
  for (const char* name : {"cp1", "a2", "a3"}) {
    LGSystem lg = *builtin_system(name);
    BrieskornCalculus calc(flat_frame(lg, flat_coordinates(lg)));
    const std::size_t n = calc.frame().mu();
    for (int trial = 0; trial < 10; ++trial) {
      LaurentPoly num = lg.kind == LGKind::Laurent ? testutil::random_laurent(rng, 3) : testutil::random_poly(rng, 3);
      auto c = calc.make(num, static_cast<int>(rng() % 3));
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          ++checks;
          failures += !calc.equal(calc.nabla(calc.nabla(c, i), j), calc.nabla(calc.nabla(c, j), i));
        }
      }
      auto image = calc.nabla(c, 0);
      ++checks;
      failures += !calc.equal(calc.nabla(calc.nabla_delta0_inverse(image), 0), image);
    }
  }
  return {failures == 0, std::to_string(checks) + " checks, " + std::to_string(failures) + " failed"};
}

// 8. Free energies agree after the mirror map.
Outcome mirror_theorem() {
  auto start = std::chrono::steady_clock::now();
  Caps caps;
  GravitationalDescendants b(data("cp1"), caps.max_degree);
  CP1GromovWitten a;
  Comparison result = compare_free_energies(b, a, caps);
  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  bool pass = result.max_discrepancy == 0 && result.coefficients > 0 && seconds < 60;
  std::ostringstream os;
  os << "max discrepancy " << to_string(result.max_discrepancy) << " over " << result.coefficients
     << " coefficients in " << seconds << " s";
  return {pass, os.str()};
}

// 9. <s_{2d-2}(O1)>_d = 1/(d!)^2 at two truncations and on both sides.
Outcome tower() {
  GravitationalDescendants small(data("cp1"), 4), large(data("cp1"), 6);
  CP1GromovWitten a;
  int ok = 0;
  for (int d = 1; d <= 4; ++d) {
    Insertions one{{2 * d - 2, 1}};
    Rational expected = inv_factorial_squared(d);
    ok += small.correlator(one, d) == expected && large.correlator(one, d) == expected &&
          a.correlator(one, d) == expected;
  }
  return {ok == 4, std::to_string(ok) + "/4 degrees"};
}

// 10. String, dilaton and divisor equations on every stored correlator.
Outcome axiom_ledger() {
  Caps caps;
  CP1GromovWitten a;
  GravitationalDescendants b(data("cp1"), caps.max_degree);
  CorrelatorFn af = [&](const Insertions& i, int beta) { return a.correlator(i, beta); };
  CorrelatorFn bf = [&](const Insertions& i, int beta) { return b.correlator(i, beta); };
  std::size_t checked = 0, failed = 0;
  bool each_ran = true;
  for (const auto& [table, fn] : {std::pair{tabulate(af, 2, caps), af}, std::pair{tabulate(bf, 2, caps, 1), bf}}) {
    for (const auto& check : check_axioms(table, fn)) {
      checked += check.checked;
      failed += check.failed;
      each_ran = each_ran && check.checked > 0;
    }
  }
  return {failed == 0 && each_ran, std::to_string(checked) + " checks, " + std::to_string(failed) + " failed"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"cp1 primitive-form certificate", certificate},
      {"euler field and discriminant", euler_discriminant},
      {"cp1 residual products", products},
      {"potential reconstruction", potential},
      {"frobenius axioms", frobenius_axioms},
      {"spectrum and duality", spectra},
      {"gauss-manin flatness", gauss_manin},
      {"mirror theorem within caps", mirror_theorem},
      {"one-point descendant tower", tower},
      {"genus-0 axiom ledger", axiom_ledger},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
  }
  return failed == 0 ? 0 : 1;
}
