#include <gtest/gtest.h>

#include "fedq/error.hpp"
#include "fedq/fedosov.hpp"
#include "support/random.hpp"

using namespace fedq;
using fedq::testing::Gen;

namespace {

std::shared_ptr<const FedosovConnection> flat_conn(Truncation t, std::vector<Scalar> pert = {}) {
  return std::make_shared<FedosovConnection>(builtin_chart_r2(t.weight), WeylCurvature::scaled_omega(2, pert), t);
}

std::shared_ptr<const FedosovConnection> sphere_conn(Truncation t, std::vector<Scalar> pert = {}) {
  return std::make_shared<FedosovConnection>(builtin_chart_s2(t.weight), WeylCurvature::scaled_omega(2, pert), t);
}

FunctionJet jet(std::string_view text, Truncation t, std::vector<std::string> coords = {"x", "p"}) {
  return FunctionJet::parse(text, coords, t.order, t.weight);
}

/// Σ_n (λ/2)^n/n! Σ_s C(n,s)(-1)^{n-s} ∂_x^s ∂_p^{n-s} u · ∂_p^s ∂_x^{n-s} v, written out directly.
FunctionJet moyal_oracle(const FunctionJet& u, const FunctionJet& v) {
  FunctionJet r(2, u.order(), u.weight());
  auto d = [](FunctionJet f, int a, int b) {
    for (int i = 0; i < a; ++i) f = f.derivative(0);
    for (int i = 0; i < b; ++i) f = f.derivative(1);
    return f;
  };
  mpq_class coeff = 1;
  for (int n = 0; n <= u.order(); ++n) {
    if (n > 0) coeff /= 2 * n;
    for (int s = 0; s <= n; ++s) {
      mpq_class c = coeff * falling(n, s) / mpz_class(falling(s, s));
      if ((n - s) % 2) c = -c;
      r += (d(u, s, n - s) * d(v, n - s, s)).scaled(Scalar(c)).shifted(n);
    }
  }
  return r;
}

}  // namespace

TEST(FlatStar, CanonicalPair) {
  Truncation t{3, 6};
  FedosovStar star(flat_conn(t));
  EXPECT_EQ(star(jet("x", t), jet("p", t)), jet("x*p + lambda/2", t));
  EXPECT_EQ(star(jet("p", t), jet("x", t)), jet("x*p - lambda/2", t));
}

TEST(FlatStar, MatchesMoyalFormula) {
  Truncation t{3, 8};
  FedosovStar star(flat_conn(t));
  Gen g(101);
  for (int i = 0; i < 10; ++i) {
    auto u = g.jet(2, 3, 8, 6, true), v = g.jet(2, 3, 8, 6, true);
    EXPECT_EQ(star(u, v), moyal_oracle(u, v));
  }
}

TEST(FlatStar, PerturbedGammaIsSqrtSeries) {
  Truncation t{4, 9};
  auto conn = flat_conn(t, {Scalar(1)});
  // 2ε + ε² = λ, so ε = √(1+λ) - 1.
  UnivariateJet eps = (UnivariateJet::constant(4, Scalar(1)) + UnivariateJet::variable(4)).sqrt();
  SymplecticData om(2);
  SectionBuilder b(2, t);
  for (int k = 1; k <= 4; ++k)
    for (int i = 0; i < 2; ++i) {
      int j = om.partner(i);
      b.add(WeylKey(MultiIndex{}, MultiIndex::unit(i), 1u << j, k), eps[k] * Scalar(om.lower(i, j)));
    }
  EXPECT_EQ(conn->gamma(), b.finish());
  EXPECT_EQ(eps[1], Scalar::rational(1, 2));
  EXPECT_EQ(eps[2], Scalar::rational(-1, 8));
}

TEST(FlatStar, GroupInvariance) {
  Truncation t{3, 8};
  FedosovStar star(flat_conn(t));
  std::vector<std::vector<Scalar>> M{{Scalar(2), Scalar(3)}, {Scalar(1), Scalar(2)}};
  Gen g(102);
  for (int i = 0; i < 8; ++i) {
    auto u = g.jet(2, 3, 8), v = g.jet(2, 3, 8);
    EXPECT_EQ(pullback_linear(star(u, v), M), star(pullback_linear(u, M), pullback_linear(v, M)));
  }
}

TEST(Connection, RejectsShortJets) {
  EXPECT_THROW(FedosovConnection(builtin_chart_s2(2), WeylCurvature(2), {2, 6}), InputError);
  EXPECT_THROW(semi_moyal(builtin_chart_s2(6), WeylCurvature(2), {2, 6}), MathError);
}

class SphereConnection : public ::testing::TestWithParam<int> {};

TEST_P(SphereConnection, SolvesTheCurvatureEquation) {
  Truncation t{2, 6};
  std::vector<Scalar> pert;
  if (GetParam()) pert = {Scalar(1)};
  auto conn = sphere_conn(t, pert);
  EXPECT_EQ(conn->weyl_curvature_residual(), conn->omega_tilde().truncated(conn->checked()));
  EXPECT_TRUE(delta_inv(conn->gamma()).is_zero());
  ASSERT_FALSE(conn->gamma().is_zero());
  EXPECT_GE(conn->gamma().min_fedosov_degree(), 3);
}

TEST_P(SphereConnection, FlatSections) {
  Truncation t{2, 6};
  std::vector<Scalar> pert;
  if (GetParam()) pert = {Scalar(1)};
  auto conn = sphere_conn(t, pert);
  Gen g(103 + GetParam());
  for (int i = 0; i < 4; ++i) {
    auto u = g.jet(2, 2, 6, 5, true);
    auto q = conn->quantize(u);
    EXPECT_TRUE(conn->apply_D(q).is_zero()) << conn->apply_D(q).str();
    EXPECT_EQ(sigma(q), u);
  }
}

TEST_P(SphereConnection, StarProductAxioms) {
  Truncation t{2, 6};
  std::vector<Scalar> pert;
  if (GetParam()) pert = {Scalar(1)};
  FedosovStar star(sphere_conn(t, pert));
  Gen g(105 + GetParam());
  SymplecticData om(2);
  for (int i = 0; i < 3; ++i) {
    auto u = g.jet(2, 2, 6, 4, true), v = g.jet(2, 2, 6, 4, true), w = g.jet(2, 2, 6, 4, true);
    EXPECT_EQ(star(star(u, v), w), star(u, star(v, w)));
    EXPECT_EQ(star(star.one(), u), u);
    EXPECT_EQ(star(u, star.one()), u);
    // u * v = uv + λ/2 {u, v} + O(λ²)
    auto diff = star(u, v) - u * v - poisson(u, v, om).scaled(Scalar::rational(1, 2)).shifted(1);
    for (const auto& [a, s] : diff.terms()) {
      EXPECT_TRUE(s[0].is_zero());
      EXPECT_TRUE(s[1].is_zero());
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Perturbation, SphereConnection, ::testing::Values(0, 1));

TEST(Connection, CurvatureSectionMatchesTensor) {
  Truncation t{1, 6};
  Chart chart = builtin_chart_s2(6);
  FedosovConnection conn(chart, WeylCurvature(2), t);
  CurvatureJets R = curvature_from_gamma(chart);
  SectionBuilder b(2, t);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) {
          if (k == l) continue;
          int sign = k < l ? 1 : -1;
          for (const auto& [alpha, c] : R(i, j, k, l).terms())
            b.add(WeylKey(alpha, MultiIndex::unit(i) + MultiIndex::unit(j), (1u << k) | (1u << l), 0),
                  c.scaled(mpq_class(sign, 4)));
        }
  EXPECT_EQ(conn.R(), b.finish());
}

TEST(Connection, CubicTermOfFlatSections) {
  Truncation t{1, 6};
  Chart chart = builtin_chart_s2(6);
  FedosovConnection conn(chart, WeylCurvature(2), t);
  CurvatureJets R = curvature_from_gamma(chart);
  SymplecticData om(2);
  Gen g(107);
  for (int trial = 0; trial < 5; ++trial) {
    FunctionJet u = g.jet(2, 1, 6, 8, true);
    ScalarJet u0 = u.lambda_coefficient(0);
    auto at0 = [](const ScalarJet& j) { return j.coeff(MultiIndex{}); };
    SectionBuilder b(2, t);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) {
          Scalar c = at0(u0.derivative(i).derivative(j).derivative(k));
          for (int m = 0; m < 2; ++m) c -= at0(chart.gamma(m, j, k).derivative(i)) * at0(u0.derivative(m));
          c = c.scaled(mpq_class(1, 6));
          for (int l = 0; l < 2; ++l) {
            int m = om.partner(l);
            c -= (at0(R(i, j, k, l)) * Scalar(om.upper(l, m)) * at0(u0.derivative(m))).scaled(mpq_class(1, 24));
          }
          b.add(WeylKey(MultiIndex{}, MultiIndex::unit(i) + MultiIndex::unit(j) + MultiIndex::unit(k), 0, 0), c);
        }
    SectionBuilder got(2, t);
    WeylSection q = conn.quantize(u);
    for (const auto& [key, c] : q.entries())
      if (key.alpha_degree() == 0 && key.beta_degree() == 3 && key.k() == 0) got.add(key, c);
    EXPECT_EQ(got.finish(), b.finish());
  }
}

TEST(Equivalence, InverseAndTransport) {
  Truncation t{3, 8};
  EquivalenceOp T(2);
  T.add_euler_power(1, 1, Scalar(1));
  T.add_euler_power(2, 2, Scalar::rational(1, 2));
  Gen g(108);
  auto base = std::make_shared<FedosovStar>(flat_conn(t));
  TransportedStar star(base, T);
  for (int i = 0; i < 5; ++i) {
    auto u = g.jet(2, 3, 8), v = g.jet(2, 3, 8), w = g.jet(2, 3, 8);
    EXPECT_EQ(T.apply_inverse(T.apply(u)), u);
    EXPECT_EQ(T.apply(T.apply_inverse(u)), u);
    EXPECT_EQ(star(star(u, v), w), star(u, star(v, w)));
  }
  EXPECT_EQ(T.apply(star.one()), star.one());
  EXPECT_THROW(T.add(1, MultiIndex{}, ScalarJet::constant(2, 0, Scalar(1))), InputError);
}

TEST(Equivalence, EulerSquare) {
  // E² x²p = 9 x²p.
  Truncation t{2, 8};
  EquivalenceOp T(2);
  T.add_euler_power(1, 2, Scalar(1));
  EXPECT_EQ(T.apply(jet("x^2*p", t)), jet("x^2*p + 9*lambda*x^2*p", t));
}
