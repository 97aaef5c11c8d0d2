#include <gtest/gtest.h>

#include <random>

#include "primform/error.hpp"
#include "primform/milnor_ring.hpp"
#include "primform/spectrum.hpp"

using namespace primform;

namespace {

LaurentPoly P(const char* s) { return LaurentPoly::parse(s); }

LGSystem single(const char* f, Rational w) {
  return make_lg_system("test", LGKind::Polynomial, {{"z", w}}, {}, P(f));
}

LGSystem two_cubes() {
  return make_lg_system("x3y3", LGKind::Polynomial, {{"x", Rational(1, 3)}, {"y", Rational(1, 3)}}, {},
                        P("x^3 + y^3"));
}

std::vector<LaurentPoly> vec(std::initializer_list<const char*> xs) {
  std::vector<LaurentPoly> out;
  for (auto x : xs) out.push_back(P(x));
  return out;
}

// Direct coefficient-extraction oracle for one-variable residues of g dz / f'.
Rational univariate_residue_oracle(int g_power, int f_degree) {
  // z^g / (d z^(d-1)) has a z^-1 term iff g = d - 2.
  return g_power == f_degree - 2 ? Rational(1, f_degree) : Rational(0);
}

}  // namespace

TEST(MilnorRing, CubeBasis) {
  MilnorRing ring = MilnorRing::build(single("z^3", Rational(1, 3)));
  EXPECT_EQ(ring.mu(), 2u);
  EXPECT_EQ(ring.basis()[1], Monomial::of(sym("z")));
  EXPECT_EQ(ring.normal_form(P("z^2")), vec({"0", "0"}));
  EXPECT_EQ(ring.normal_form(P("1")), vec({"1", "0"}));
}

TEST(MilnorRing, LaurentCircle) {
  MilnorRing ring = MilnorRing::build(make_cp1());
  EXPECT_EQ(ring.mu(), 2u);
  EXPECT_EQ(ring.normal_form(P("z^2")), vec({"q", "0"}));
  EXPECT_EQ(ring.normal_form(P("z^-1")), vec({"0", "q^-1"}));
}

TEST(MilnorRing, TwoCubes) {
  MilnorRing ring = MilnorRing::build(two_cubes());
  ASSERT_EQ(ring.mu(), 4u);
  std::vector<Monomial> expected = {Monomial(), Monomial::of(sym("y")), Monomial::of(sym("x")),
                                    Monomial::of(sym("x")) * Monomial::of(sym("y"))};
  for (const auto& m : expected) {
    EXPECT_NE(std::find(ring.basis().begin(), ring.basis().end(), m), ring.basis().end()) << m.to_string();
  }
  EXPECT_EQ(ring.residue(P("x*y")), P("1/9"));
  EXPECT_EQ(ring.residue(ring.hessian()), P("4"));
}

TEST(MilnorRing, NonIsolatedSingularity) {
  try {
    make_lg_system("bad", LGKind::Polynomial, {{"x", Rational(1, 2)}, {"y", Rational(1, 2)}}, {}, P("x^2"));
    FAIL() << "expected error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonIsolatedSingularity);
  }
}

TEST(MilnorRing, QuasiHomogeneityIsChecked) {
  EXPECT_THROW(make_lg_system("bad", LGKind::Polynomial, {{"z", Rational(1, 3)}}, {}, P("z^3 + z^2")), Error);
}

TEST(Residue, CubeExamples) {
  MilnorRing ring = MilnorRing::build(single("z^3", Rational(1, 3)));
  EXPECT_EQ(ring.residue(P("z")), LaurentPoly(univariate_residue_oracle(1, 3)));
  EXPECT_EQ(ring.residue(P("1")), LaurentPoly(univariate_residue_oracle(0, 3)));
  EXPECT_EQ(ring.residue(ring.hessian()), P("2"));
  EXPECT_EQ(ring.k0(P("1"), P("z")), P("1/3"));
}

TEST(Residue, LaurentCircle) {
  MilnorRing ring = MilnorRing::build(make_cp1());
  EXPECT_EQ(ring.k0(P("1"), P("q*z^-1")), P("1"));
  EXPECT_TRUE(ring.k0(P("1"), P("1")).is_zero());
  EXPECT_EQ(ring.residue(ring.hessian()), P("2"));
}

TEST(RingProperty, NormalFormIdempotentAndKillsIdeal) {
  std::vector<LGSystem> systems = {make_a_n(1), make_a_n(2), make_a_n(3), two_cubes(), make_cp1()};
  std::mt19937 rng(23);
  std::uniform_int_distribution<int> coef(-4, 4), expo(0, 5), neg(-3, 3);
  for (const auto& lg : systems) {
    MilnorRing ring = MilnorRing::build(lg);
    std::vector<LaurentPoly> generators;
    for (Symbol v : lg.variables) {
      generators.push_back(lg.kind == LGKind::Polynomial ? lg.f.diff(v) : lg.f.log_derivative(v));
    }
    for (int trial = 0; trial < 20; ++trial) {
      LaurentPoly g, h;
      for (int k = 0; k < 3; ++k) {
        Monomial m, n;
        for (Symbol v : lg.variables) {
          m = m * Monomial::of(v, lg.kind == LGKind::Laurent ? neg(rng) : expo(rng));
          n = n * Monomial::of(v, lg.kind == LGKind::Laurent ? neg(rng) : expo(rng));
        }
        g += LaurentPoly::term(coef(rng), m);
        h += LaurentPoly::term(coef(rng), n);
      }
      auto nf = ring.normal_form(g);
      EXPECT_EQ(ring.normal_form(ring.from_coefficients(nf)), nf) << lg.name;
      LaurentPoly ideal_element = h * generators[trial % generators.size()];
      for (auto& c : ring.normal_form(ideal_element)) EXPECT_TRUE(c.is_zero()) << lg.name;
      EXPECT_TRUE(ring.residue(ideal_element).is_zero()) << lg.name;
    }
  }
}

TEST(RingProperty, GramSymmetricNondegenerate) {
  for (const auto& lg : {make_a_n(1), make_a_n(2), make_a_n(3), two_cubes(), make_cp1()}) {
    MilnorRing ring = MilnorRing::build(lg);
    auto g = ring.gram();
    for (std::size_t i = 0; i < g.size(); ++i) {
      for (std::size_t j = 0; j < g.size(); ++j) EXPECT_EQ(g[i][j], g[j][i]);
    }
    EXPECT_FALSE(determinant(g).is_zero());
  }
}

TEST(RingProperty, MilnorNumberFromWeights) {
  for (int n = 1; n <= 6; ++n) {
    LGSystem lg = make_a_n(n);
    EXPECT_EQ(Rational(static_cast<long>(MilnorRing::build(lg).mu())), milnor_number_from_weights(lg));
  }
  EXPECT_EQ(Rational(4), milnor_number_from_weights(two_cubes()));
}

TEST(Spectrum, CubeAndQuartic) {
  Spectrum a2 = spectrum(make_a_n(2), Rational(1, 3));
  EXPECT_EQ(a2.exponents, (std::vector<Rational>{Rational(1, 3), Rational(2, 3)}));
  EXPECT_EQ(a2.shifted, (std::vector<Rational>{0, Rational(1, 3)}));
  EXPECT_EQ(a2.degrees, (std::vector<Rational>{1, Rational(2, 3)}));
  EXPECT_EQ(a2.c_hat, Rational(1, 3));
  EXPECT_TRUE(poincare_duality(a2));
  Spectrum a3 = spectrum(make_a_n(3), Rational(1, 4));
  EXPECT_EQ(a3.degrees, (std::vector<Rational>{1, Rational(3, 4), Rational(1, 2)}));
  EXPECT_EQ(a3.c_hat, Rational(1, 2));
  auto chi = poincare_polynomial(a3);
  ASSERT_EQ(chi.size(), 3u);
  EXPECT_EQ(chi[2].first, Rational(1, 2));
}

TEST(Spectrum, DualityForAllAn) {
  for (int n = 1; n <= 6; ++n) {
    Spectrum sp = spectrum(make_a_n(n), Rational(1, n + 1));
    EXPECT_TRUE(sp.exponent_duality) << n;
    EXPECT_TRUE(poincare_duality(sp)) << n;
    EXPECT_EQ(sp.c_hat, sp.c_hat_from_r) << n;
    for (int j = 0; j < n; ++j) EXPECT_EQ(sp.exponents[j], ratio(j + 1, n + 1));
  }
}
