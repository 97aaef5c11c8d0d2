#include <gtest/gtest.h>

#include <random>

#include "primform/error.hpp"
#include "primform/laurent_poly.hpp"
#include "test_util.hpp"

using namespace primform;

namespace {

LaurentPoly P(const char* s) { return LaurentPoly::parse(s); }
const Symbol z = sym("z");

}  // namespace

TEST(LaurentPoly, DifferenceOfSquares) {
  EXPECT_EQ(P("(z + Q*z^-1)*(z - Q*z^-1)"), P("z^2 - Q^2*z^-2"));
  EXPECT_EQ(P("z*z^-1"), LaurentPoly(1));
  EXPECT_EQ(P("z + z"), P("2*z"));
}

TEST(LaurentPoly, LogDerivative) {
  EXPECT_EQ(P("z + Q*z^-1").log_derivative(z), P("z - Q*z^-1"));
  EXPECT_TRUE(P("7/2*q").log_derivative(z).is_zero());
  EXPECT_EQ(P("z^3").log_derivative(z), P("3*z^3"));
}

TEST(LaurentPoly, PrintParseRoundTrip) {
  for (const char* s : {"0", "1", "-1/2", "z^-1*q*E1", "1/2*t0^2*t1 + q*E1", "x^3 - 3*x*y + y^-2"}) {
    LaurentPoly p = P(s);
    EXPECT_EQ(P(p.to_string().c_str()), p) << s;
  }
  EXPECT_EQ(P("1/2*t0^2*t1 + q*E1").to_string(), "1/2*t0^2*t1 + q*E1");
  EXPECT_EQ(P("z^-1*q").to_string(), "z^-1*q");
}

TEST(LaurentPoly, ParseErrors) {
  EXPECT_THROW(P("z +"), Error);
  EXPECT_THROW(P("z/(1+z)"), Error);
  EXPECT_THROW(P("(z"), Error);
}

TEST(LaurentPoly, SubstituteAndDiff) {
  ExpRule rule{sym("E1"), sym("t1")};
  LaurentPoly f = P("t0 + z + q*E1*z^-1");
  EXPECT_EQ(f.diff(sym("t1"), std::span(&rule, 1)), P("q*E1*z^-1"));
  EXPECT_EQ(f.diff(sym("t0")), LaurentPoly(1));
  EXPECT_EQ(f.substitute(z, P("2*q")), P("t0 + 2*q + 1/2*E1"));
  EXPECT_THROW(f.substitute(z, P("1+q")), Error);
}

TEST(LaurentPoly, IntegrateWithExponentials) {
  ExpRule rule{sym("E1"), sym("t1")};
  std::span rules(&rule, 1);
  Symbol t1 = sym("t1");
  for (const char* s : {"t1^3*E1^2", "q*E1", "t0*t1", "t1^2*E1^-1 + 5*t1^4"}) {
    LaurentPoly p = P(s);
    EXPECT_EQ(integrate(p, t1, rules).diff(t1, rules), p) << s;
  }
  EXPECT_THROW(integrate(P("t1^-1"), t1, rules), Error);
}

TEST(LaurentPoly, ExactDivisionAndGcd) {
  LaurentPoly a = P("(z^2 - Q)*(z + q*t1)");
  EXPECT_EQ(*divide_exact(a, P("z + q*t1")), P("z^2 - Q"));
  EXPECT_FALSE(divide_exact(a, P("z + 1")).has_value());
  EXPECT_EQ(*divide_exact(P("z^3*Q^-1 - z"), P("z^2 - Q")), P("z*Q^-1"));
  EXPECT_EQ(poly_gcd(P("(z - q)*(z + 1)^2*t0"), P("(z - q)*(z + 1)*(t0 + 2)")), P("z^2 - q*z + z - q"));
  EXPECT_EQ(poly_gcd(P("6*z"), P("4*z^2")), P("z"));
  EXPECT_EQ(poly_gcd(P("z + q"), P("z + 1")), LaurentPoly(1));
}

TEST(LaurentPolyProperty, RingAxiomsAndDerivation) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    LaurentPoly a = testutil::random_laurent(rng);
    LaurentPoly b = testutil::random_laurent(rng);
    LaurentPoly c = testutil::random_laurent(rng);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a * b, b * a);
    EXPECT_TRUE((a - a).is_zero());
    EXPECT_EQ((a * b).log_derivative(z), a.log_derivative(z) * b + a * b.log_derivative(z));
    if (!b.is_zero()) EXPECT_EQ(*divide_exact(a * b, b), a);
  }
}

TEST(LaurentPolyProperty, GcdDividesBoth) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    LaurentPoly g = testutil::random_poly(rng);
    LaurentPoly a = testutil::random_poly(rng) * g;
    LaurentPoly b = testutil::random_poly(rng) * g;
    if (a.is_zero() || b.is_zero()) continue;
    LaurentPoly d = poly_gcd(a, b);
    EXPECT_TRUE(divide_exact(a, d).has_value());
    EXPECT_TRUE(divide_exact(b, d).has_value());
    if (!g.is_zero()) EXPECT_TRUE(divide_exact(d, g).has_value());
  }
}
