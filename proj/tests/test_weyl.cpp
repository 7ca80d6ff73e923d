#include <gtest/gtest.h>

#include "fedq/error.hpp"
#include "fedq/weyl.hpp"
#include "support/random.hpp"

using namespace fedq;
using fedq::testing::Gen;

namespace {

const Truncation kT{3, 8};

WeylSection ymono(int dim, Truncation t, std::vector<int> beta, int k = 0, Scalar c = Scalar(1)) {
  beta.resize(static_cast<std::size_t>(dim));
  return WeylSection::monomial(dim, t, MultiIndex{}, MultiIndex::from(beta), 0, k, c);
}

WeylSection constant(int dim, Truncation t, Scalar c) { return ymono(dim, t, {}, 0, c); }

}  // namespace

TEST(Moyal, FirstOrderCommutator) {
  SymplecticData om(2);
  auto y1 = WeylSection::y(2, kT, 0), y2 = WeylSection::y(2, kT, 1);
  EXPECT_EQ(moyal_mul(y1, y2, om) - moyal_mul(y2, y1, om), ymono(2, kT, {}, 1, Scalar(om.upper(0, 1))));
  EXPECT_EQ(om.upper(0, 1), 1);
}

TEST(Moyal, Unit) {
  SymplecticData om(4);
  Gen g(21);
  auto one = constant(4, kT, Scalar(1));
  for (int i = 0; i < 10; ++i) {
    auto a = g.section(4, kT);
    EXPECT_EQ(moyal_mul(one, a, om), a);
    EXPECT_EQ(moyal_mul(a, one, om), a);
  }
}

TEST(Moyal, SquaresByHand) {
  SymplecticData om(2);
  auto a = ymono(2, kT, {2, 0}), b = ymono(2, kT, {0, 2});
  auto expected = ymono(2, kT, {2, 2}) + ymono(2, kT, {1, 1}, 1, Scalar(2)) + ymono(2, kT, {}, 2, Scalar::rational(1, 2));
  EXPECT_EQ(moyal_mul(a, b, om), expected);
}

TEST(Moyal, AssociativeRandomized) {
  Gen g(22);
  for (int dim : {2, 4}) {
    SymplecticData om(dim);
    for (int i = 0; i < 15; ++i) {
      auto a = g.section(dim, kT, 6, 1), b = g.section(dim, kT, 6, 1), c = g.section(dim, kT, 6, 1);
      EXPECT_EQ(moyal_mul(moyal_mul(a, b, om), c, om), moyal_mul(a, moyal_mul(b, c, om), om));
    }
  }
}

TEST(Moyal, FedosovDegreeAdditive) {
  Gen g(23);
  SymplecticData om(2);
  for (int i = 0; i < 20; ++i) {
    auto a = g.section(2, kT, 5, 0), b = g.section(2, kT, 5, 0);
    auto p = moyal_mul(a, b, om);
    if (a.is_zero() || b.is_zero() || p.is_zero()) continue;
    EXPECT_GE(p.min_fedosov_degree(), a.min_fedosov_degree() + b.min_fedosov_degree());
  }
}

TEST(Moyal, FirstOrderIsPoissonBracket) {
  // The λ¹ part of a∘b - b∘a on λ-free, form-free sections is λ{a,b} in y.
  Gen g(24);
  SymplecticData om(2);
  Truncation t{1, 8};
  for (int i = 0; i < 20; ++i) {
    auto a = g.section(2, {0, 6}, 5, 0).truncated(t), b = g.section(2, {0, 6}, 5, 0).truncated(t);
    auto comm = moyal_mul(a, b, om) - moyal_mul(b, a, om);
    SectionBuilder pb(2, t);
    for (const auto& [ka, ca] : a.entries())
      for (const auto& [kb, cb] : b.entries())
        for (int i1 = 0; i1 < 2; ++i1) {
          int j1 = om.partner(i1);
          MultiIndex ba = ka.beta(), bb = kb.beta();
          if (ba[i1] == 0 || bb[j1] == 0) continue;
          long f = static_cast<long>(ba[i1]) * bb[j1] * om.upper(i1, j1);
          ba[i1] -= 1;
          bb[j1] -= 1;
          pb.add(WeylKey(ka.alpha() + kb.alpha(), ba + bb, 0, 1), (ca * cb).scaled(mpq_class(f)));
        }
    EXPECT_EQ(comm, pb.finish());
  }
}

TEST(Moyal, CommutatorOverLambdaMatchesProducts) {
  Gen g(25);
  SymplecticData om(2);
  Truncation wide{kT.order + 1, kT.weight + 2};
  for (int i = 0; i < 15; ++i) {
    auto a = g.section(2, wide, 6, 1), b = g.section(2, wide, 6, 1);
    // Graded commutator: forms of degree one anticommute.
    auto a0 = a.form_part(0), a1 = a.form_part(1), b0 = b.form_part(0), b1 = b.form_part(1);
    auto graded = moyal_mul(a, b, om) - moyal_mul(b0, a, om) - moyal_mul(b1, a0, om) + moyal_mul(b1, a1, om);
    SectionBuilder expect(2, kT);
    for (const auto& [k, c] : graded.entries()) {
      ASSERT_GE(k.k(), 1) << graded.str();
      expect.add(WeylKey(k.alpha(), k.beta(), k.form(), k.k() - 1), c);
    }
    EXPECT_EQ(commutator_over_lambda(a, b, om, kT), expect.finish());
  }
}

TEST(Delta, Basics) {
  auto y1 = WeylSection::y(2, kT, 0);
  auto dx1 = WeylSection::monomial(2, kT, MultiIndex{}, MultiIndex{}, 1u, 0, Scalar(1));
  EXPECT_EQ(delta(y1), dx1);
  EXPECT_EQ(delta_inv(dx1), y1);
}

TEST(Delta, NilpotentAndHodge) {
  Gen g(26);
  for (int dim : {2, 4}) {
    for (int i = 0; i < 20; ++i) {
      auto a = g.section(dim, kT, 10, 2);
      EXPECT_TRUE(delta(delta(a)).is_zero());
      EXPECT_TRUE(delta_inv(delta_inv(a)).is_zero());
      auto sig = WeylSection::from_function(sigma(a), kT);
      // δ⁻¹ raises weight; compare below the top weight.
      Truncation low{kT.order, kT.weight - 1};
      auto lhs = a.truncated(low);
      auto rhs = (sig + delta(delta_inv(a)) + delta_inv(delta(a))).truncated(low);
      EXPECT_EQ(lhs, rhs);
    }
  }
}

TEST(Delta, ExteriorDerivativeSquaresToZero) {
  Gen g(27);
  for (int i = 0; i < 20; ++i) {
    auto a = g.section(4, kT, 10, 1);
    EXPECT_TRUE(exterior_d(exterior_d(a)).is_zero());
  }
}

TEST(Sigma, Basics) {
  FunctionJet f(2, 3, 8);
  f.add(MultiIndex::from({2, 1}), 1, Scalar(3));
  auto a = WeylSection::y(2, kT, 0) + WeylSection::from_function(f, kT);
  EXPECT_EQ(sigma(a), f);
  EXPECT_EQ(sigma(constant(2, kT, Scalar(1))), FunctionJet::constant(2, 3, 8, LambdaSeries(3, Scalar(1))));
}

TEST(Sigma, FastProductPath) {
  Gen g(28);
  for (int dim : {2, 4}) {
    SymplecticData om(dim);
    for (int i = 0; i < 20; ++i) {
      auto a = g.section(dim, kT, 12, 0), b = g.section(dim, kT, 12, 0);
      EXPECT_EQ(sigma_of_product(a, b, om), sigma(moyal_mul(a, b, om)));
    }
  }
}

TEST(LieGenerator, Zero) {
  SymplecticData om(2);
  std::vector<std::vector<Scalar>> zero(2, std::vector<Scalar>(2));
  EXPECT_TRUE(lie_generator(zero, om, kT).is_zero());
}

TEST(LieGenerator, GeneratesLinearFlow) {
  SymplecticData om(2);
  // H = diag(1, -1): flow (e^t x, e^{-t} p).
  std::vector<std::vector<Scalar>> H{{Scalar(1), Scalar(0)}, {Scalar(0), Scalar(-1)}};
  auto A = lie_generator(H, om, kT);
  Gen g(29);
  for (int i = 0; i < 10; ++i) {
    auto a = g.section(2, kT, 6, 0);
    SectionBuilder expect(2, kT);
    for (const auto& [k, c] : a.entries()) {
      MultiIndex b = k.beta();
      expect.add(k, c.scaled(mpq_class(b[0] - b[1])));
    }
    EXPECT_EQ(commutator_over_lambda(A, a, om), expect.finish());
  }
}

TEST(LieGenerator, BracketConsistency) {
  SymplecticData om(2);
  std::vector<std::vector<Scalar>> E{{0, 0}, {1, 0}}, F{{0, 1}, {0, 0}}, H{{1, 0}, {0, -1}};
  auto bracket = [](const auto& X, const auto& Y) {
    std::vector<std::vector<Scalar>> Z(2, std::vector<Scalar>(2));
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) Z[i][j] += X[i][k] * Y[k][j] - Y[i][k] * X[k][j];
    return Z;
  };
  for (const auto* X : {&E, &F, &H})
    for (const auto* Y : {&E, &F, &H})
      EXPECT_EQ(commutator_over_lambda(lie_generator(*X, om, kT), lie_generator(*Y, om, kT), om),
                -lie_generator(bracket(*X, *Y), om, kT));
}

TEST(LieGenerator, RejectsNonHamiltonian) {
  SymplecticData om(2);
  std::vector<std::vector<Scalar>> X{{1, 0}, {0, 1}};
  EXPECT_THROW(lie_generator(X, om, kT), MathError);
}

TEST(Serialization, JsonRoundTrip) {
  Gen g(30);
  auto a = g.section(4, kT, 10, 2, true);
  EXPECT_EQ(WeylSection::from_json(a.to_json()), a);
  EXPECT_THROW(WeylSection::from_json("{\"dim\": 2}"), InputError);
  EXPECT_THROW(WeylSection::from_json("{nope"), InputError);
}
