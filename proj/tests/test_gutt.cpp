#include <gtest/gtest.h>

#include "fedq/error.hpp"
#include "fedq/gutt.hpp"
#include "support/random.hpp"

using namespace fedq;
using fedq::testing::Gen;

namespace {

constexpr int K = 3;

SymPoly random_poly(Gen& g, int dim, int max_degree, int terms) {
  SymPoly p(dim, K);
  for (int i = 0; i < terms; ++i) {
    LambdaSeries c(K);
    c[g.uniform(0, 1)] = g.scalar();
    p.add(g.index(dim, max_degree), c);
  }
  return p;
}

Word random_word(Gen& g, int dim, int len) {
  Word w;
  for (int i = 0; i < len; ++i) w.push_back(static_cast<std::uint8_t>(g.uniform(0, dim - 1)));
  return w;
}

LambdaSeries one() { return LambdaSeries(K, Scalar(1)); }

/// {u, v} = C^k_{ij} ∂_i u ∂_j v x_k.
SymPoly linear_poisson(const SymPoly& u, const SymPoly& v, const LieAlgebra& L) {
  SymPoly r(u.dim(), K);
  for (int i = 0; i < L.dim(); ++i)
    for (int j = 0; j < L.dim(); ++j)
      for (int k = 0; k < L.dim(); ++k) {
        if (L.c(k, i, j).is_zero()) continue;
        SymPoly xk(u.dim(), K);
        xk.add(MultiIndex::unit(k), LambdaSeries(K, L.c(k, i, j)));
        r = r + u.derivative(i) * v.derivative(j) * xk;
      }
  return r;
}

}  // namespace

TEST(LieAlgebra, BuiltinsAreValid) {
  EXPECT_NO_THROW(builtin_sl2().validate());
  EXPECT_NO_THROW(builtin_so3().validate());
  EXPECT_THROW(builtin_lie_algebra("gl7"), InputError);
}

TEST(LieAlgebra, RejectsBrokenStructure) {
  using S = std::vector<std::vector<std::vector<Scalar>>>;
  S c(3, std::vector<std::vector<Scalar>>(3, std::vector<Scalar>(3)));
  c[2][0][1] = Scalar(1);
  EXPECT_THROW(LieAlgebra("bad", {"a", "b", "c"}, c), MathError);
  // [a,b] = c, [a,c] = a, [b,c] = 0: antisymmetric but Jacobi fails.
  c[2][1][0] = Scalar(-1);
  c[0][0][2] = Scalar(1);
  c[0][2][0] = Scalar(-1);
  EXPECT_THROW(LieAlgebra("bad", {"a", "b", "c"}, c), MathError);
}

TEST(LieAlgebra, JsonRoundTrip) {
  LieAlgebra L = builtin_sl2();
  LieAlgebra M = LieAlgebra::from_json(L.to_json());
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) EXPECT_EQ(M.c(k, i, j), L.c(k, i, j));
  EXPECT_THROW(LieAlgebra::from_json("{\"dim\": 2}"), InputError);
  EXPECT_THROW(LieAlgebra::from_json(R"({"dim": 2, "names": ["a","b"], "C": [{"i":0,"j":1,"k":0,"coeff":1}]})"),
               MathError);
}

TEST(Straighten, SingleSwaps) {
  LieAlgebra so3 = builtin_so3(), sl2 = builtin_sl2();
  EXPECT_EQ(pbw_straighten(NCElement::parse("sy*sx", so3, K), so3), NCElement::parse("sx*sy - lambda*sz", so3, K));
  EXPECT_EQ(pbw_straighten(NCElement::parse("F*E", sl2, K), sl2), NCElement::parse("E*F - lambda*H", sl2, K));
}

TEST(Straighten, ConfluentAcrossStrategies) {
  Gen g(201);
  for (const LieAlgebra& L : {builtin_sl2(), builtin_so3()}) {
    for (int i = 0; i < 30; ++i) {
      NCElement a = NCElement::word(3, K, random_word(g, 3, g.uniform(2, 5)), one());
      NCElement left = pbw_straighten(a, L, RewriteOrder::Leftmost);
      EXPECT_EQ(left, pbw_straighten(a, L, RewriteOrder::Rightmost));
      for (const auto& [w, c] : left.terms()) EXPECT_TRUE(std::is_sorted(w.begin(), w.end()));
    }
  }
}

TEST(Symmetrize, Examples) {
  LieAlgebra L = builtin_so3();
  EXPECT_EQ(symmetrize(SymPoly::parse("sx*sy", L, K)), NCElement::parse("(sx*sy + sy*sx)/2", L, K));
  EXPECT_EQ(symmetrize(SymPoly::parse("sx^2", L, K)), NCElement::parse("sx*sx", L, K));
}

TEST(Symmetrize, RoundTrip) {
  Gen g(202);
  for (const LieAlgebra& L : {builtin_sl2(), builtin_so3()})
    for (int i = 0; i < 20; ++i) {
      SymPoly p = random_poly(g, 3, 4, 5);
      EXPECT_EQ(desymmetrize(pbw_straighten(symmetrize(p), L), L), p);
    }
}

TEST(GuttStar, GeneratorProducts) {
  LieAlgebra L = builtin_so3();
  EXPECT_EQ(gutt_mul(SymPoly::parse("sx", L, K), SymPoly::parse("sy", L, K), L),
            SymPoly::parse("sx*sy + lambda*sz/2", L, K));
  for (const LieAlgebra& A : {builtin_sl2(), builtin_so3()})
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        SymPoly xi(3, K), xj(3, K), rhs(3, K);
        xi.add(MultiIndex::unit(i), one());
        xj.add(MultiIndex::unit(j), one());
        for (int k = 0; k < 3; ++k) rhs.add(MultiIndex::unit(k), LambdaSeries::lambda_power(K, 1).scaled(A.c(k, i, j)));
        EXPECT_EQ(gutt_mul(xi, xj, A) - gutt_mul(xj, xi, A), rhs);
      }
}

TEST(GuttStar, FirstOrderIsLinearPoisson) {
  Gen g(203);
  for (const LieAlgebra& L : {builtin_sl2(), builtin_so3()})
    for (int i = 0; i < 10; ++i) {
      SymPoly u = random_poly(g, 3, 2, 3), v = random_poly(g, 3, 2, 3);
      // Keep λ-free inputs so the λ¹ part is exactly the bracket.
      SymPoly u0(3, K), v0(3, K);
      for (const auto& [a, c] : u.terms()) u0.add(a, LambdaSeries(K, c[0]));
      for (const auto& [a, c] : v.terms()) v0.add(a, LambdaSeries(K, c[0]));
      SymPoly comm = gutt_mul(u0, v0, L) - gutt_mul(v0, u0, L);
      SymPoly pb = linear_poisson(u0, v0, L);
      for (const auto& [a, c] : comm.terms()) EXPECT_TRUE(c[0].is_zero());
      for (const auto& [a, c] : pb.terms()) EXPECT_EQ(comm.terms().count(a) ? comm.terms().at(a)[1] : Scalar(), c[0]);
      for (const auto& [a, c] : comm.terms())
        if (c[1] != Scalar()) EXPECT_TRUE(pb.terms().count(a));
    }
}

TEST(GuttStar, Associative) {
  Gen g(204);
  for (const LieAlgebra& L : {builtin_sl2(), builtin_so3()})
    for (int i = 0; i < 10; ++i) {
      SymPoly a = random_poly(g, 3, 2, 3), b = random_poly(g, 3, 2, 3), c = random_poly(g, 3, 2, 3);
      EXPECT_EQ(gutt_mul(gutt_mul(a, b, L), c, L), gutt_mul(a, gutt_mul(b, c, L), L));
    }
}

TEST(Center, Casimirs) {
  for (const LieAlgebra& L : {builtin_sl2(), builtin_so3()}) {
    NCElement z = builtin_casimir(L, K);
    EXPECT_TRUE(check_central(z, L));
    EXPECT_TRUE(check_central(z * z, L));
    EXPECT_FALSE(check_central(NCElement::parse(L.generators()[2], L, K), L));
  }
}

TEST(Center, DegreeBound) {
  LieAlgebra L = builtin_sl2();
  NCElement z = builtin_casimir(L, K);
  EXPECT_THROW(z * z * z * z, InputError);
}
