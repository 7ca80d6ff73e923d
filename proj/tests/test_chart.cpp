#include <gtest/gtest.h>

#include "fedq/chart.hpp"
#include "fedq/error.hpp"
#include "support/random.hpp"

using namespace fedq;

namespace {

Scalar r() { return Scalar::param("r"); }

ScalarJet t_jet(int order) { return ScalarJet::coordinate(2, order, 0); }

/// Christoffel symbols of a diagonal metric diag(g0, g1), computed directly.
ScalarJet christoffel(const std::vector<ScalarJet>& g, const std::vector<ScalarJet>& ginv, int k, int i, int j) {
  auto dg = [&](int a, int b, int c) {  // ∂_c g_{ab}
    return a == b ? g[static_cast<std::size_t>(a)].derivative(c) : ScalarJet(2, g[0].order() - 1);
  };
  int l = k;
  ScalarJet v = dg(j, l, i) + dg(i, l, j) - dg(i, j, l);
  return (ginv[static_cast<std::size_t>(l)].truncated(v.order()) * v).scaled(Scalar::rational(1, 2));
}

std::vector<ScalarJet> bracket(const std::vector<ScalarJet>& A, const std::vector<ScalarJet>& B) {
  std::vector<ScalarJet> out;
  int order = A[0].order() - 1;
  for (int j = 0; j < 2; ++j) {
    ScalarJet v(2, order);
    for (int i = 0; i < 2; ++i)
      v = v + A[i].truncated(order) * B[j].derivative(i) - B[i].truncated(order) * A[j].derivative(i);
    out.push_back(v);
  }
  return out;
}

}  // namespace

TEST(ChartR2, FlatAndCanonical) {
  Chart c = builtin_chart_r2(4);
  EXPECT_TRUE(c.is_flat());
  EXPECT_TRUE(curvature_from_gamma(c).is_zero());
  auto x = FunctionJet::parse("x", c.coords(), 2, 4), p = FunctionJet::parse("p", c.coords(), 2, 4);
  EXPECT_EQ(poisson(x, p, c.omega()), FunctionJet::parse("1", c.coords(), 2, 4));
}

TEST(ChartS2, GammaVanishesAtOrigin) {
  Chart c = builtin_chart_s2(6);
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) EXPECT_TRUE(c.gamma(k, i, j).coeff(MultiIndex{}).is_zero());
  EXPECT_NO_THROW(c.validate());
}

TEST(ChartS2, GammaMatchesRoundMetric) {
  const int N = 7;
  Chart c = builtin_chart_s2(N - 1);
  ScalarJet t = t_jet(N);
  ScalarJet r2 = ScalarJet::constant(2, N, r() * r());
  // g = r²/(r²-t²) dt² + (r²-t²) dφ², inverses by geometric series in t²/r².
  ScalarJet q = (t * t).scaled(Scalar(1) / (r() * r()));
  ScalarJet inv(2, N);
  ScalarJet pw = ScalarJet::constant(2, N, Scalar(1));
  for (int m = 0; 2 * m <= N; ++m) {
    inv = inv + pw;
    pw = pw * q;
  }
  std::vector<ScalarJet> g{inv, r2 - t * t};
  std::vector<ScalarJet> ginv{ScalarJet::constant(2, N, Scalar(1)) - q, inv.scaled(Scalar(1) / (r() * r()))};
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) EXPECT_EQ(c.gamma(k, i, j), christoffel(g, ginv, k, i, j).truncated(N - 1)) << k << i << j;
  // first-order values
  EXPECT_EQ(c.gamma(0, 0, 0).coeff(MultiIndex::from({1, 0})), Scalar(1) / (r() * r()));
  EXPECT_EQ(c.gamma(0, 1, 1).coeff(MultiIndex::from({1, 0})), Scalar(1));
  EXPECT_EQ(c.gamma(1, 0, 1).coeff(MultiIndex::from({1, 0})), Scalar(-1) / (r() * r()));
}

TEST(ChartS2, CurvatureSymmetriesAndScalarCurvature) {
  Chart c = builtin_chart_s2(5);
  CurvatureJets R = curvature_from_gamma(c);
  EXPECT_FALSE(R.is_zero());
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) {
          EXPECT_EQ(R(i, j, k, l), -R(i, j, l, k));
          EXPECT_EQ(R(i, j, k, l), R(j, i, k, l));
        }
  // Raise back with ω^{mi}: R^m_{jkl} = ω^{mi} R_{ijkl}; Ricci_{jl} = R^k_{jkl}.
  SymplecticData om = c.omega();
  auto Rup = [&](int m, int j, int k, int l) {
    int i = om.partner(m);
    return R(i, j, k, l).scaled(Scalar(om.upper(m, i)));
  };
  Scalar scal;
  Scalar ginv[2] = {Scalar(1), Scalar(1) / (r() * r())};  // at the origin
  for (int j = 0; j < 2; ++j) {
    Scalar ric;
    for (int k = 0; k < 2; ++k) ric += Rup(k, j, k, j).coeff(MultiIndex{});
    scal += ginv[j] * ric;
  }
  EXPECT_EQ(scal, Scalar(2) / (r() * r()));
}

TEST(ChartS2, InsufficientJetOrder) {
  EXPECT_THROW(curvature_from_gamma(builtin_chart_s2(0)), InputError);
}

TEST(MomentS2, SecondDerivatives) {
  MomentData m = moment_jets_s2(4);
  const ScalarJet& px = m.phi[0];
  EXPECT_EQ(px.coeff(MultiIndex{}), r());
  EXPECT_TRUE(m.phi[1].coeff(MultiIndex{}).is_zero());
  EXPECT_TRUE(m.phi[2].coeff(MultiIndex{}).is_zero());
  // ∂²f = 2 × Taylor coefficient
  EXPECT_EQ(px.coeff(MultiIndex::from({2, 0})).scaled(2), Scalar(-1) / r());
  EXPECT_EQ(px.coeff(MultiIndex::from({0, 2})).scaled(2), -r());
  EXPECT_TRUE(px.coeff(MultiIndex::from({1, 1})).is_zero());
}

TEST(MomentS2, PoissonRelationsAndRotationFields) {
  const int N = 6;
  MomentData m = moment_jets_s2(N);
  SymplecticData om(2);
  auto T = rotation_fields_s2(N);
  for (int a = 0; a < 3; ++a) {
    auto V = hamiltonian_field(m.phi[static_cast<std::size_t>(a)], om);
    for (int j = 0; j < 2; ++j) EXPECT_EQ(V[j], -T[a][j].truncated(N - 1)) << a << j;
  }
  // so(3): {Φx, Φy} = Φz cyclically.
  auto pb = [&](int a, int b) {
    auto u = FunctionJet::from_scalar_jet(m.phi[static_cast<std::size_t>(a)], 0, N);
    auto v = FunctionJet::from_scalar_jet(m.phi[static_cast<std::size_t>(b)], 0, N);
    return poisson(u, v, om).truncated(0, N - 2);
  };
  for (int a = 0; a < 3; ++a)
    EXPECT_EQ(pb(a, (a + 1) % 3), FunctionJet::from_scalar_jet(m.phi[static_cast<std::size_t>((a + 2) % 3)], 0, N - 2));
  // [T_y, T_z] = -T_x, i.e. T_X = -{Φ(X), ·} is an anti-homomorphism.
  auto c = bracket(T[1], T[2]);
  for (int j = 0; j < 2; ++j) EXPECT_EQ(c[j], -T[0][j].truncated(N - 1));
}

TEST(MomentR2, ClassicalMomentMap) {
  MomentData m = moment_jets_r2(4);
  SymplecticData om(2);
  auto f = [&](int a) { return FunctionJet::from_scalar_jet(m.phi[static_cast<std::size_t>(a)], 0, 4); };
  EXPECT_EQ(poisson(f(0), f(1), om), f(2));
  EXPECT_TRUE(m.phi[2].coeff(MultiIndex{}).is_zero());
  for (int a = 0; a < 3; ++a) {
    auto V = hamiltonian_field(m.phi[static_cast<std::size_t>(a)], om);
    for (int j = 0; j < 2; ++j) {
      ScalarJet lin(2, 3);
      for (int k = 0; k < 2; ++k) lin.add(MultiIndex::unit(k), m.linear[a][j][k]);
      EXPECT_EQ(V[j], lin);
    }
  }
}

TEST(ChartFile, RoundTripAndValidation) {
  Chart c = builtin_chart_s2(4);
  Chart d = Chart::from_json(c.to_json());
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) EXPECT_EQ(c.gamma(k, i, j), d.gamma(k, i, j));
  // Γ^0_{11} alone breaks total symmetry of ω_{il}Γ^l_{jk}.
  const char* bad = R"({"dim":2,"jet_order":1,"omega":"standard",
    "gamma_jets":[{"k":0,"i":1,"j":1,"alpha":[0,0],"coeff":"1"}]})";
  EXPECT_NO_THROW(Chart::from_json(bad));
  const char* bad2 = R"({"dim":2,"jet_order":1,"omega":"standard",
    "gamma_jets":[{"k":0,"i":0,"j":0,"alpha":[0,0],"coeff":"1"}]})";
  EXPECT_THROW(Chart::from_json(bad2), MathError);
  EXPECT_THROW(Chart::from_json(R"({"dim":2})"), InputError);
}
