#include <gtest/gtest.h>

#include <random>

#include "primform/error.hpp"
#include "primform/exact_scalar.hpp"
#include "primform/frobenius.hpp"
#include "test_util.hpp"

using namespace primform;

namespace {

LaurentPoly P(const char* s) { return LaurentPoly::parse(s); }

std::vector<LaurentPoly> vec(std::initializer_list<const char*> xs) {
  std::vector<LaurentPoly> out;
  for (auto x : xs) out.push_back(P(x));
  return out;
}

// Sum over the two critical points z = +-s, s^2 = square, of residue_term(z).
LaurentPoly critical_sum(const RatFunc& residue_term, const LaurentPoly& square) {
  Symbol z = sym("z");
  auto sum = QuadraticElement::evaluate(residue_term, z, 1, square) +
             QuadraticElement::evaluate(residue_term, z, -1, square);
  EXPECT_TRUE(sum.root_part().is_zero());
  const RatFunc& r = sum.rational_part();
  EXPECT_TRUE(r.is_laurent_poly());
  return r.num();
}

// Pairing oracles by explicit critical points.
// CP1: g dz/z / (z F_z) has residue g(c) / (2c) at c = +-sqrt(q E1).
LaurentPoly cp1_pairing(const LaurentPoly& g) {
  return critical_sum(RatFunc(g) / RatFunc(P("2*z")), P("q*E1"));
}
// A2 at (t0, t1): F_z = 3z^2 + t1, residue g(c) / (6c) at c^2 = -t1/3.
LaurentPoly a2_pairing(const LaurentPoly& g) {
  return critical_sum(RatFunc(g) / RatFunc(P("6*z")), P("-1/3*t1"));
}

const FrobeniusData& data(const std::string& name) {
  static std::map<std::string, FrobeniusData> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, build_frobenius(*builtin_system(name))).first;
  return it->second;
}

}  // namespace

TEST(Frobenius, CP1StructureConstantsMatchCriticalPointSums) {
  const auto& d = data("cp1");
  std::vector<LaurentPoly> deltas = vec({"1", "q*E1*z^-1"});
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      EXPECT_EQ(d.eta[i][j], cp1_pairing(deltas[i] * deltas[j]));
      for (int k = 0; k < 2; ++k) EXPECT_EQ(d.c[i][j][k], cp1_pairing(deltas[i] * deltas[j] * deltas[k]));
    }
  }
}

TEST(Frobenius, A2StructureConstantsMatchCriticalPointSums) {
  const auto& d = data("a2");
  std::vector<LaurentPoly> deltas = vec({"1", "z"});
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      EXPECT_EQ(d.eta[i][j], a2_pairing(deltas[i] * deltas[j]));
      for (int k = 0; k < 2; ++k) EXPECT_EQ(d.c[i][j][k], a2_pairing(deltas[i] * deltas[j] * deltas[k]));
    }
  }
}

TEST(Frobenius, CP1Products) {
  Frame f = flat_frame(*builtin_system("cp1"), data("cp1").flat);
  EXPECT_EQ(residual_product(f, 1, 1), vec({"q*E1", "0"}));
  EXPECT_EQ(residual_product(f, 0, 1), vec({"0", "1"}));
  EXPECT_EQ(t0_product(f, 0), vec({"0", "-2"}));
  EXPECT_EQ(t0_product(f, 1), vec({"-2*q*E1", "0"}));
}

TEST(Frobenius, A2Products) {
  Frame f = Frame::raw(*builtin_system("a2"));
  EXPECT_EQ(residual_product(f, 1, 1), vec({"-1/3*a1", "0"}));
}

TEST(Frobenius, CP1Data) {
  const auto& d = data("cp1");
  EXPECT_EQ(d.potential, P("1/2*t0^2*t1 + q*E1"));
  EXPECT_EQ(d.euler, vec({"t0", "2"}));
  EXPECT_EQ(d.discriminant, P("t0^2 - 4*q*E1"));
  EXPECT_EQ(d.eta, (Matrix<LaurentPoly>{vec({"0", "1"}), vec({"1", "0"})}));
  EXPECT_EQ(d.degrees, (std::vector<Rational>{1, 0}));
  EXPECT_EQ(d.shifts, vec({"0", "2"}));
  EXPECT_EQ(d.form_degree, 0);
  EXPECT_EQ(d.n_diagonal, (std::vector<Rational>{0, 1}));
  EXPECT_TRUE(d.flat.identity);
}

TEST(Frobenius, A2Data) {
  const auto& d = data("a2");
  EXPECT_EQ(d.potential, P("1/6*t0^2*t1 - 1/216*t1^4"));
  EXPECT_EQ(d.euler, vec({"t0", "2/3*t1"}));
  EXPECT_EQ(d.discriminant, P("t0^2 + 4/27*t1^3"));
  EXPECT_EQ(d.eta, (Matrix<LaurentPoly>{vec({"0", "1/3"}), vec({"1/3", "0"})}));
  EXPECT_EQ(d.form_degree, ratio(1, 3));
  EXPECT_EQ(d.n_diagonal, (std::vector<Rational>{ratio(1, 3), ratio(2, 3)}));
}

TEST(Frobenius, A3FlatCoordinates) {
  const auto& d = data("a3");
  EXPECT_FALSE(d.flat.identity);
  EXPECT_EQ(d.flat.raw_in_flat, vec({"t0 + 1/8*t2^2", "t1", "t2"}));
  EXPECT_EQ(d.flat.flat_in_raw, vec({"a0 - 1/8*a2^2", "a1", "a2"}));
}

TEST(Frobenius, FlatChangeRoundTrips) {
  for (const char* name : {"a3", "a4", "a5"}) {
    const auto& fc = data(name).flat;
    std::map<Symbol, LaurentPoly> back;
    for (std::size_t i = 0; i < fc.raw.size(); ++i) back[fc.raw[i]] = fc.raw_in_flat[i];
    for (std::size_t i = 0; i < fc.raw.size(); ++i) {
      EXPECT_EQ(fc.flat_in_raw[i].substitute(back), LaurentPoly::variable(fc.flat[i])) << name;
    }
  }
}

TEST(Frobenius, EulerScalesDiscriminantByMu) {
  for (const char* name : {"cp1", "a1", "a2", "a3", "a4"}) {
    const auto& d = data(name);
    Frame f = flat_frame(d.system, d.flat);
    EXPECT_EQ(apply_field(f, d.euler, d.discriminant), d.discriminant.scaled(f.mu())) << name;
  }
}

TEST(Frobenius, WdvvHoldsForBuiltins) {
  for (const char* name : {"cp1", "a2", "a3", "a4", "a5"}) {
    const auto& d = data(name);
    for (const auto& r : wdvv_residuals(d.c, d.eta)) EXPECT_TRUE(r.is_zero()) << name << ": " << r;
  }
}

TEST(Frobenius, CorruptedPotentialBreaksWdvv) {
  const auto& d = data("a3");
  LaurentPoly bad = d.potential + P("t1^3*t2^3");
  auto c = third_derivatives(bad, d.coordinates(), d.exp_rules());
  int nonzero = 0;
  for (const auto& r : wdvv_residuals(c, d.eta)) nonzero += !r.is_zero();
  EXPECT_GT(nonzero, 0);
}

TEST(Frobenius, PotentialReproducesStructureConstants) {
  for (const char* name : {"cp1", "a2", "a3", "a4", "a5"}) {
    const auto& d = data(name);
    EXPECT_EQ(third_derivatives(d.potential, d.coordinates(), d.exp_rules()), d.c) << name;
  }
}

TEST(Frobenius, UnitDirectionGivesMetric) {
  for (const char* name : {"cp1", "a2", "a3", "a4"}) {
    const auto& d = data(name);
    for (std::size_t j = 0; j < d.eta.size(); ++j) {
      for (std::size_t k = 0; k < d.eta.size(); ++k) EXPECT_EQ(d.c[0][j][k], d.eta[j][k]) << name;
    }
  }
}

TEST(Frobenius, ProductAgreesWithRaisedStructureConstants) {
  // d_i o d_j from the Jacobian ring equals C_ij^e from the potential.
  for (const char* name : {"cp1", "a3", "a4"}) {
    const auto& d = data(name);
    Frame f = flat_frame(d.system, d.flat);
    const std::size_t n = f.mu();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        auto prod = residual_product(f, i, j);
        for (std::size_t e = 0; e < n; ++e) {
          LaurentPoly raised;
          for (std::size_t g = 0; g < n; ++g) raised += d.c[i][j][g] * d.eta_inverse[g][e];
          EXPECT_EQ(prod[e], raised) << name << " " << i << j << e;
        }
      }
    }
  }
}

TEST(Frobenius, IntegrabilityViolationDetected) {
  const auto& d = data("a2");
  Frame f = flat_frame(d.system, d.flat);
  Tensor3 c = d.c;
  c[1][1][1] += P("t0");
  try {
    check_integrability(f, c);
    FAIL() << "expected IntegrabilityViolation";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::IntegrabilityViolation);
  }
}

TEST(Frobenius, GradientIntegrationRecoversPotential) {
  std::mt19937 rng(29);
  std::vector<Symbol> coords{sym("t0"), sym("t1")};
  std::vector<ExpRule> rules{{sym("E1"), sym("t1")}};
  for (int trial = 0; trial < 50; ++trial) {
    LaurentPoly u;
    for (int k = 0; k < 4; ++k) {
      Monomial m = Monomial::of(coords[0], rng() % 4) * Monomial::of(coords[1], rng() % 3) *
                   Monomial::of(sym("E1"), rng() % 3) * Monomial::of(sym("q"), rng() % 2);
      u += LaurentPoly::term(testutil::random_rational(rng), m);
    }
    std::vector<LaurentPoly> g{u.diff(coords[0], rules), u.diff(coords[1], rules)};
    LaurentPoly v = integrate_gradient(g, coords, rules);
    EXPECT_EQ(v.diff(coords[0], rules), g[0]) << u;
    EXPECT_EQ(v.diff(coords[1], rules), g[1]) << u;
  }
}

TEST(Frobenius, NonClosedGradientRejected) {
  std::vector<Symbol> coords{sym("t0"), sym("t1")};
  try {
    integrate_gradient(vec({"t1", "2*t0"}), coords, {});
    FAIL() << "expected IntegrabilityViolation";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::IntegrabilityViolation);
  }
}
