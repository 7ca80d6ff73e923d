#include <gtest/gtest.h>

#include "fedq/error.hpp"
#include "fedq/series.hpp"
#include "support/random.hpp"

using namespace fedq;
using fedq::testing::Gen;

namespace {

Scalar r() { return Scalar::param("r"); }

LambdaSeries series(int order, std::vector<long> c) {
  std::vector<Scalar> v;
  for (long x : c) v.emplace_back(x);
  return LambdaSeries(order, v);
}

}  // namespace

TEST(Scalar, InversePairs) {
  EXPECT_TRUE((Scalar(1) / r() * r()).is_one());
  EXPECT_TRUE((Scalar::rational(1, 2) + Scalar::rational(1, 2)).is_one());
  Scalar v = (Scalar(-1) / r()) * (-r());
  EXPECT_TRUE(v.is_one());
  // Independent check: evaluate both factors at r = 3 with plain rationals.
  mpq_class a = (Scalar(-1) / r()).evaluate({{"r", 3}});
  mpq_class b = (-r()).evaluate({{"r", 3}});
  EXPECT_EQ(a * b, 1);
}

TEST(Scalar, DivisionByZeroThrows) {
  EXPECT_THROW(Scalar(1) / Scalar(0), MathError);
  EXPECT_THROW(Scalar::rational(1, 0), MathError);
}

TEST(Scalar, TextRoundTrip) {
  for (const char* text : {"3*r^2/2", "1/(4*r^2)", "-1/r", "r^2 + 1/4", "7", "0", "(r^2 + 1)/(r + 2)"}) {
    Scalar s = Scalar::parse(text);
    EXPECT_EQ(Scalar::parse(s.str()), s) << text << " -> " << s.str();
  }
  EXPECT_EQ(Scalar::parse("3*r^2/2").str(), "3*r^2/2");
  EXPECT_EQ(Scalar::parse("1/(4*r^2)").str(), "1/(4*r^2)");
  EXPECT_EQ(Scalar::parse("-r/r^2").str(), "-1/r");
}

TEST(Scalar, RejectsReservedAndMalformed) {
  EXPECT_THROW(Scalar::parse("lambda + 1"), InputError);
  EXPECT_THROW(Scalar::parse("3 *"), InputError);
  EXPECT_THROW(Scalar::parse("1/0"), InputError);
}

TEST(Scalar, CancelsUnivariateCommonFactors) {
  Scalar s = (r() * r() - Scalar(1)) / (r() - Scalar(1));
  EXPECT_TRUE(s.den().is_one());
  EXPECT_EQ(s, r() + Scalar(1));
}

TEST(Scalar, FieldAxiomsRandomized) {
  Gen g(11);
  for (int i = 0; i < 200; ++i) {
    Scalar a = g.scalar(true), b = g.scalar(true), c = g.scalar(true);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a + b, b + a);
    if (!a.is_zero()) EXPECT_TRUE((a / a).is_one());
  }
}

TEST(Scalar, EvaluationIsHomomorphism) {
  Gen g(12);
  std::map<std::string, mpq_class> at{{"r", mpq_class(5, 3)}};
  for (int i = 0; i < 200; ++i) {
    Scalar a = g.scalar(true), b = g.nonzero_scalar(true);
    EXPECT_EQ((a + b).evaluate(at), a.evaluate(at) + b.evaluate(at));
    EXPECT_EQ((a * b).evaluate(at), a.evaluate(at) * b.evaluate(at));
    EXPECT_EQ((a / b).evaluate(at), a.evaluate(at) / b.evaluate(at));
  }
}

TEST(LambdaSeries, Products) {
  EXPECT_EQ(series(2, {1, 1}) * series(2, {1, -1}), series(2, {1, 0, -1}));
  EXPECT_EQ(series(2, {0, 1}) * series(2, {0, 1}), series(2, {0, 0, 1}));
  EXPECT_EQ(series(3, {0, 1, -1}) * series(3, {0, 1, -1}), series(3, {0, 0, 1, -2}));
  EXPECT_THROW(series(2, {1}) * series(3, {1}), InputError);
}

TEST(LambdaSeries, Inverse) {
  EXPECT_EQ(series(4, {1, 1}).inverse(), series(4, {1, -1, 1, -1, 1}));
  EXPECT_EQ(series(3, {1}).inverse(), series(3, {1}));
  EXPECT_EQ(series(3, {1, -1, 1}).inverse(), series(3, {1, 1, 0, -1}));
  EXPECT_THROW(series(3, {0, 1}).inverse(), MathError);
}

TEST(LambdaSeries, InverseRandomized) {
  Gen g(13);
  for (int i = 0; i < 50; ++i) {
    std::vector<Scalar> c{g.nonzero_scalar(true)};
    for (int k = 1; k <= 4; ++k) c.push_back(g.scalar(true));
    LambdaSeries a(4, c);
    EXPECT_EQ(a * a.inverse(), LambdaSeries(4, Scalar(1)));
  }
}

TEST(LambdaSeries, TextRoundTrip) {
  LambdaSeries s = LambdaSeries::parse("r^2 + 4*r^2*λ + (2*r^2 + 1/4)*λ^2", 2);
  EXPECT_EQ(s[0], r() * r());
  EXPECT_EQ(s[2], Scalar(2) * r() * r() + Scalar::rational(1, 4));
  EXPECT_EQ(LambdaSeries::parse(s.str(), 2), s);
  EXPECT_EQ(LambdaSeries::parse("-3/8*lambda^2", 2).str(), "-3/8*λ^2");
}

TEST(UnivariateJet, Sqrt) {
  EXPECT_EQ(UnivariateJet::constant(4, Scalar(1)).sqrt(), UnivariateJet::constant(4, Scalar(1)));
  UnivariateJet t = UnivariateJet::variable(6);
  UnivariateJet one = UnivariateJet::constant(6, Scalar(1));
  UnivariateJet s = (one - t * t).sqrt();
  EXPECT_EQ(s[2], Scalar::rational(-1, 2));
  EXPECT_EQ(s[4], Scalar::rational(-1, 8));
  EXPECT_EQ(s[6], Scalar::rational(-1, 16));
  EXPECT_EQ(s * s, one - t * t);
  UnivariateJet sq = one + t.scaled(Scalar(2)) + t * t;
  EXPECT_EQ(sq.sqrt(), one + t);
  EXPECT_THROW((t + t).sqrt(), MathError);
}

TEST(UnivariateJet, TrigIdentity) {
  UnivariateJet s = UnivariateJet::sin(9), c = UnivariateJet::cos(9);
  EXPECT_EQ(s * s + c * c, UnivariateJet::constant(9, Scalar(1)));
}
