#include <gtest/gtest.h>

#include <random>

#include "flexion/ratfun.hpp"

using namespace flexion;

namespace {
RatFun P(const std::string& s) { return RatFun::parse(s); }
Polynomial Q(const std::string& s) { return RatFun::parse(s).numerator(); }
}  // namespace

TEST(RatFun, PartialFractionsCancel) {
  RatFun r = P("1/u1") + P("1/(u1+u2)") - P("(2*u1+u2)/(u1^2+u1*u2)");
  EXPECT_TRUE(r.is_zero());
  EXPECT_EQ(r.canonical_string(), "0");
}

TEST(RatFun, CanonicalForm) {
  RatFun r = P("1/u1") * P("1/u2") * P("1/(u1+u2)");
  EXPECT_EQ(r.canonical_string(), "1 / (u1^2*u2 + u1*u2^2)");
  EXPECT_EQ(P("(2*u1 + 2*v1)/(4*u1)").canonical_string(), "(u1 + v1) / (2*u1)");
  EXPECT_EQ(P("-3/(-6*v2)").canonical_string(), "1 / (2*v2)");
  EXPECT_EQ(P("u1^2 - v1^2").canonical_string(), "u1^2 - v1^2");
}

TEST(RatFun, RoundTrip) {
  for (const char* s : {"1 / (u1^2*u2 + u1*u2^2)", "(u1 - 3*v2) / (7*u1*v1 + v2^2)", "-5*u3"}) {
    RatFun r = P(s);
    EXPECT_EQ(P(r.canonical_string()), r);
    EXPECT_EQ(P(r.canonical_string()).canonical_string(), r.canonical_string());
  }
}

TEST(RatFun, MultiplicativeInverse) {
  RatFun p = P("u1^2 + u1*v1 + 3");
  RatFun q = p - RatFun(1);
  EXPECT_EQ(q * q.inv(), RatFun(1));
  EXPECT_THROW(RatFun().inv(), DivisionByZero);
}

TEST(RatFun, NonlinearDenominatorCancellation) {
  RatFun a = P("1/(u1^2 - v1^2)");
  RatFun b = P("(u1 + v1)");
  EXPECT_EQ((a * b).canonical_string(), "1 / (u1 - v1)");
  RatFun c = P("1/(u1^2+u2^2)") + P("1/((u1^2+u2^2)*(u1+u2))");
  EXPECT_EQ(c.canonical_string(), "(u1 + u2 + 1) / (u1^3 + u1^2*u2 + u1*u2^2 + u2^3)");
}

TEST(Polynomial, GcdAgainstConstructedFactors) {
  Polynomial g = Q("u1^2*v1 - 3*u2 + 1");
  Polynomial a = g * Q("u1 + v2^2 + 5");
  Polynomial b = g * Q("u2*v1 - u1 + 2");
  EXPECT_EQ(gcd(a, b), g);
  EXPECT_EQ(gcd(Q("6*u1 + 4"), Q("9*u1 + 6")), Q("3*u1 + 2"));
  EXPECT_EQ(gcd(Q("u1"), Q("u2")), Polynomial::constant(1));
}

TEST(Polynomial, ExactDivision) {
  Polynomial q;
  EXPECT_TRUE(divide_exact(Q("u1^2 - u2^2"), Q("u1 + u2"), &q));
  EXPECT_EQ(q, Q("u1 - u2"));
  EXPECT_FALSE(divide_exact(Q("u1^2 + u2^2"), Q("u1 + u2"), nullptr));
}

TEST(RatFun, SubstituteLinear) {
  RatFun f = P("1/(u1*(u1+u2))");
  std::vector<LinearForm> args(kMaxVars);
  args[u_var(1)] = LinearForm::u(1) + LinearForm::u(2);
  args[u_var(2)] = -LinearForm::u(2);
  EXPECT_EQ(f.substitute_linear(args), P("1/(u1^2 + u1*u2)"));
  args[u_var(2)] = -LinearForm::u(1) - LinearForm::u(2);
  EXPECT_THROW(f.substitute_linear(args), SubstitutionCollapse);
}

TEST(RatFun, EvaluationAgrees) {
  RatFun f = P("(u1 - 3*v2) / (7*u1*v1 + v2^2)") + P("2/(u2+v1)");
  const std::uint64_t p = kMersenne61;
  std::mt19937_64 gen(7);
  FpEvaluator ev(f, p);
  for (int i = 0; i < 20; ++i) {
    std::vector<Fp> pt;
    std::vector<Rational> qt;
    for (int k = 0; k < kMaxVars; ++k) {
      long x = static_cast<long>(gen() % 1000) + 1;
      pt.emplace_back(x, p);
      qt.emplace_back(x);
    }
    Fp a = f.eval(pt);
    EXPECT_EQ(a, ev(pt.data()));
    EXPECT_EQ(a, Fp::from_rational(f.eval(qt), p));
  }
}

TEST(RatFun, ParseErrors) {
  EXPECT_THROW(P("u1 +"), std::invalid_argument);
  EXPECT_THROW(P("w1"), std::invalid_argument);
  EXPECT_THROW(P("u9"), std::invalid_argument);
  EXPECT_THROW(P("1/0"), DivisionByZero);
}
