#include <gtest/gtest.h>

#include <random>

#include "primform/brieskorn.hpp"
#include "primform/error.hpp"
#include "primform/exact_scalar.hpp"
#include "test_util.hpp"

using namespace primform;

namespace {

LaurentPoly P(const char* s) { return LaurentPoly::parse(s); }

const LGSystem& sys(const std::string& name) {
  static std::map<std::string, LGSystem> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, *builtin_system(name)).first;
  return it->second;
}

BrieskornCalculus flat_calculus(const std::string& name) {
  return BrieskornCalculus(flat_frame(sys(name), flat_coordinates(sys(name))));
}

BrieskornClass random_class(std::mt19937& rng, const BrieskornCalculus& calc) {
  bool laurent = calc.frame().system().kind == LGKind::Laurent;
  LaurentPoly num = laurent ? testutil::random_laurent(rng, 3) : testutil::random_poly(rng, 3);
  return calc.make(num, static_cast<int>(rng() % 3));
}

}  // namespace

TEST(Brieskorn, CP1ConnectionExamples) {
  auto calc = flat_calculus("cp1");
  auto zeta = calc.make(1);
  EXPECT_TRUE(calc.equal(calc.nabla(zeta, 1), calc.make(P("2*q*E1"), 2)));
  EXPECT_TRUE(calc.equal(calc.times(P("t0"), calc.nabla(zeta, 0)), calc.make(P("-(z + q*E1*z^-1)^2"), 2)));
  EXPECT_TRUE(calc.equal(calc.nabla_field(zeta, euler_field(calc.frame())), calc.make(-1)));
}

TEST(Brieskorn, CP1InverseExamples) {
  auto calc = flat_calculus("cp1");
  auto zeta = calc.make(1);
  auto back = calc.nabla_delta0_inverse(calc.nabla(zeta, 0));
  EXPECT_TRUE(calc.equal(back, zeta));
  auto psi1 = calc.nabla_delta0_inverse(calc.nabla(zeta, 1));
  EXPECT_TRUE(calc.equal(psi1, calc.make(P("q*E1*z^-1"))));
  EXPECT_EQ(psi1.pole_order, 0);
  try {
    calc.nabla_delta0_inverse(zeta);
    FAIL() << "expected LogObstruction";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::LogObstruction);
  }
}

TEST(Brieskorn, CP1TotalResidueExamples) {
  auto calc = flat_calculus("cp1");
  EXPECT_EQ(calc.total_residue(calc.make(P("q*E1*z^-1"), 1)), P("1"));
  EXPECT_TRUE(calc.total_residue(calc.make(1, 1)).is_zero());
  EXPECT_TRUE(calc.total_residue(calc.make(P("q*E1*z^-1"), 2)).is_zero());
}

TEST(Brieskorn, CP1HigherResiduePairing) {
  auto calc = flat_calculus("cp1");
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) EXPECT_TRUE(calc.k1_pairing(i, j, 1).is_zero()) << i << j;
  }
}

TEST(Brieskorn, SecondDerivativeReductionIntermediate) {
  auto calc = flat_calculus("cp1");
  EXPECT_TRUE(calc.equal(calc.d(calc.make(P("q^2*E1^2*z^-2 - q*E1"), 1)), calc.make(P("q*E1*z^-1"))));
}

TEST(Brieskorn, ReductionIsCanonical) {
  auto calc = flat_calculus("cp1");
  std::mt19937 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    LaurentPoly num = testutil::random_laurent(rng, 3);
    auto a = calc.make(num * calc.df(), 1);
    auto b = calc.make(num);
    EXPECT_EQ(a.numerator, b.numerator);
    EXPECT_EQ(a.pole_order, b.pole_order);
  }
}

TEST(Brieskorn, ConnectionIsFlat) {
  std::mt19937 rng(41);
  for (const char* name : {"cp1", "a2", "a3"}) {
    auto calc = flat_calculus(name);
    const std::size_t n = calc.frame().mu();
    for (int trial = 0; trial < 10; ++trial) {
      auto c = random_class(rng, calc);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          auto ij = calc.nabla(calc.nabla(c, i), j);
          auto ji = calc.nabla(calc.nabla(c, j), i);
          EXPECT_TRUE(calc.equal(ij, ji)) << name << " " << calc.to_string(c);
        }
      }
    }
  }
}

TEST(Brieskorn, InverseRoundTrips) {
  std::mt19937 rng(43);
  for (const char* name : {"cp1", "a2", "a3"}) {
    auto calc = flat_calculus(name);
    for (int trial = 0; trial < 10; ++trial) {
      auto c = calc.nabla(random_class(rng, calc), 0);
      auto psi = calc.nabla_delta0_inverse(c);
      EXPECT_TRUE(calc.equal(calc.nabla(psi, 0), c)) << name << " " << calc.to_string(c);
    }
  }
}

TEST(Brieskorn, InverseRoundTripsWhenDefined) {
  std::mt19937 rng(47);
  auto calc = flat_calculus("cp1");
  int defined = 0;
  for (int trial = 0; trial < 30; ++trial) {
    auto c = random_class(rng, calc);
    try {
      auto psi = calc.nabla_delta0_inverse(c);
      ++defined;
      EXPECT_TRUE(calc.equal(calc.nabla(psi, 0), c)) << calc.to_string(c);
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::LogObstruction);
    }
  }
  EXPECT_GT(defined, 0);
}

TEST(Brieskorn, TotalResidueMatchesCriticalPointSum) {
  // N / (z - Q/z) dz/z = N / (z^2 - Q) dz: residue N(c) / (2c) at c = +-s.
  std::mt19937 rng(53);
  auto calc = flat_calculus("cp1");
  Symbol z = sym("z");
  LaurentPoly square = P("q*E1");
  for (int trial = 0; trial < 20; ++trial) {
    LaurentPoly num = testutil::random_laurent(rng, 3);
    RatFunc term = RatFunc(num) / RatFunc(P("2*z"));
    auto sum = QuadraticElement::evaluate(term, z, 1, square) + QuadraticElement::evaluate(term, z, -1, square);
    ASSERT_TRUE(sum.root_part().is_zero());
    EXPECT_EQ(RatFunc(calc.total_residue(calc.make(num, 1))), sum.rational_part()) << num;
  }
}

TEST(PrimitiveForm, CP1Certificate) {
  auto report = verify_primitive_form(sys("cp1"));
  ASSERT_EQ(report.conditions.size(), 5u);
  for (const auto& c : report.conditions) EXPECT_TRUE(c.holds) << c.name << ": " << c.witness;
  ASSERT_TRUE(report.r);
  EXPECT_EQ(*report.r, 0);
  ASSERT_TRUE(report.n_matrix);
  EXPECT_EQ(*report.n_matrix, (Matrix<Rational>{{0, 0}, {0, 1}}));
}

TEST(PrimitiveForm, A2Certificate) {
  auto report = verify_primitive_form(sys("a2"));
  EXPECT_TRUE(report.all_hold());
  ASSERT_TRUE(report.r);
  EXPECT_EQ(*report.r, ratio(1, 3));
}

TEST(PrimitiveForm, NMatchesFrobeniusGrading) {
  for (const char* name : {"cp1", "a2", "a3", "a4"}) {
    auto report = verify_primitive_form(sys(name));
    auto data = build_frobenius(sys(name));
    ASSERT_TRUE(report.n_matrix) << name;
    EXPECT_EQ(*report.r, data.form_degree) << name;
    for (std::size_t i = 0; i < data.n_diagonal.size(); ++i) {
      for (std::size_t j = 0; j < data.n_diagonal.size(); ++j) {
        EXPECT_EQ((*report.n_matrix)[i][j], i == j ? data.n_diagonal[i] : Rational(0)) << name;
      }
    }
  }
}

TEST(PrimitiveForm, ShiftedFormFailsHomogeneity) {
  auto report = verify_primitive_form(sys("cp1"), P("1 + z"));
  EXPECT_FALSE(report.all_hold());
  EXPECT_FALSE(report.conditions[2].holds);
  EXPECT_FALSE(report.conditions[2].witness.empty());
  EXPECT_FALSE(report.r);
}

TEST(Brieskorn, InverseHandlesT0Dependence) {
  for (const char* name : {"cp1", "a2"}) {
    auto calc = flat_calculus(name);
    for (const char* num : {"t0*z^2 + t0^2", "t0^3*z - t1"}) {
      auto c = calc.nabla(calc.make(P(num), 1), 0);
      auto psi = calc.nabla_delta0_inverse(c);
      EXPECT_TRUE(calc.equal(calc.nabla(psi, 0), c)) << name << " " << num;
    }
  }
}
