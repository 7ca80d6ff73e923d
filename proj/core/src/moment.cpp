#include "fedq/moment.hpp"

#include <json.hpp>

#include "fedq/error.hpp"

namespace fedq {

bool MuTensor::is_zero() const {
  for (const auto& row : m)
    for (const auto& e : row)
      if (!e.is_zero()) return false;
  return true;
}

MuTensor mu_from_connection(const FedosovConnection& conn, const Conventions& conv) {
  if (!conn.chart().is_flat()) throw MathError("μ is only defined for the semi-Moyal connection (Γ = 0)");
  const int n = conn.dim();
  const Truncation t = conn.trunc();
  const SymplecticData& om = conn.omega();
  std::vector<std::vector<FunctionJet>> g(n, std::vector<FunctionJet>(n, FunctionJet(n, t.order, t.weight)));
  for (const auto& [key, c] : conn.gamma().entries()) {
    if (key.beta_degree() != 1 || key.form_degree() != 1) continue;
    int k = 0, j = 0;
    while (key.beta()[k] == 0) ++k;
    while (!(key.form() & (1u << j))) ++j;
    g[k][j].add(key.alpha(), key.k(), c);
  }
  MuTensor mu;
  mu.m.assign(n, std::vector<FunctionJet>(n, FunctionJet(n, t.order, t.weight)));
  for (int i = 0; i < n; ++i) {
    int k = om.partner(i);
    Scalar f(-conv.mu_sign * om.upper(i, k));
    for (int j = 0; j < n; ++j) mu.m[i][j] = g[k][j].scaled(f);
  }
  return mu;
}

FunctionJet solve_correction(const FunctionJet& H, const MuTensor& mu) {
  const int n = H.dim();
  if (mu.dim() != n) throw InputError("μ and H have different dimensions");
  const int K = H.order(), W = H.weight();
  auto fit = [&](const FunctionJet& f) { return f.truncated(K, W); };
  // A = -2μ + μ², A^j_i.
  std::vector<std::vector<FunctionJet>> A(n, std::vector<FunctionJet>(n, FunctionJet(n, K, W)));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      FunctionJet a = fit(mu.m[j][i]).scaled(Scalar(-2));
      for (int l = 0; l < n; ++l) a += fit(mu.m[j][l]) * fit(mu.m[l][i]);
      A[j][i] = a;
    }
  std::vector<FunctionJet> v(n, FunctionJet(n, K, W));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) v[i] += A[j][i] * H.derivative(j);
  for (int i = 0; i < n; ++i)
    for (int k = i + 1; k < n; ++k)
      if (!(v[i].derivative(k) - v[k].derivative(i)).truncated(K, W - 1).is_zero())
        throw MathError("correction covector (-2μ+μ²)∂H is not closed");
  FunctionJet out(n, K, W);
  for (int i = 0; i < n; ++i)
    for (const auto& [alpha, s] : v[i].terms())
      out.add(alpha + MultiIndex::unit(i), s.scaled(Scalar(mpq_class(1, alpha.degree() + 1))));
  return out;
}

std::string QuantumMomentMap::to_json(const std::vector<std::string>& coords) const {
  nlohmann::ordered_json j;
  for (std::size_t a = 0; a < generators.size(); ++a) j[generators[a]] = phi_star[a].str(coords);
  return j.dump(2);
}

namespace {

/// Σ_k C^k_{ab} f_k.
FunctionJet bracket_image(const LieAlgebra& L, int a, int b, const std::vector<FunctionJet>& f) {
  FunctionJet r(f[0].dim(), f[0].order(), f[0].weight());
  for (int k = 0; k < L.dim(); ++k)
    if (!L.c(k, a, b).is_zero()) r += f[k].scaled(L.c(k, a, b));
  return r;
}

}  // namespace

QuantumMomentMap fix_constants(const std::vector<FunctionJet>& candidates, const std::vector<FunctionJet>& classical,
                               const StarProduct& star, const LieAlgebra& L) {
  const int n = L.dim();
  if (static_cast<int>(candidates.size()) != n || static_cast<int>(classical.size()) != n)
    throw InputError("need one moment map component per generator");
  const Truncation t = star.trunc();
  const int Kb = std::max(t.order - 1, 0), Wb = std::max(t.weight - 2, 0);

  std::vector<FunctionJet> cand;
  for (const auto& c : candidates) cand.push_back(c.truncated(t.order, t.weight));

  // Rows: pairs a < b. Σ_k C^k_{ab} c_k = E_ab, one right-hand side per λ order.
  std::vector<std::vector<Scalar>> A;
  std::vector<std::vector<Scalar>> B;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      FunctionJet E = star.bracket_over_lambda(cand[a], cand[b]) - bracket_image(L, a, b, cand).truncated(Kb, Wb);
      if (!E.is_constant())
        throw MathError("no quantum moment map at this order: [Φ(" + L.generators()[a] + "), Φ(" +
                        L.generators()[b] + ")] deviates by a non-constant jet");
      std::vector<Scalar> row(n);
      for (int k = 0; k < n; ++k) row[k] = L.c(k, a, b);
      A.push_back(row);
      LambdaSeries e = E.constant_term();
      std::vector<Scalar> rhs(Kb + 1);
      for (int k = 0; k <= Kb && k <= e.order(); ++k) rhs[k] = e[k];
      B.push_back(rhs);
    }

  // Gaussian elimination.
  const int rows = static_cast<int>(A.size());
  std::vector<int> pivot_col;
  int r = 0;
  for (int col = 0; col < n && r < rows; ++col) {
    int p = r;
    while (p < rows && A[p][col].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(A[p], A[r]);
    std::swap(B[p], B[r]);
    Scalar inv = Scalar(1) / A[r][col];
    for (auto& x : A[r]) x *= inv;
    for (auto& x : B[r]) x *= inv;
    for (int q = 0; q < rows; ++q) {
      if (q == r || A[q][col].is_zero()) continue;
      Scalar f = A[q][col];
      for (int c = 0; c < n; ++c) A[q][c] -= f * A[r][c];
      for (std::size_t c = 0; c < B[q].size(); ++c) B[q][c] -= f * B[r][c];
    }
    pivot_col.push_back(col);
    ++r;
  }
  if (r < n) throw MathError("non-unique moment map (H¹≠0)");
  for (int q = r; q < rows; ++q)
    for (const auto& x : B[q])
      if (!x.is_zero()) throw MathError("no quantum moment map at this order");

  QuantumMomentMap qmm;
  qmm.generators = L.generators();
  qmm.classical = classical;
  qmm.phi_star = cand;
  for (int q = 0; q < r; ++q) {
    LambdaSeries c(t.order);
    for (int k = 0; k <= Kb; ++k) c[k] = B[q][k];
    qmm.phi_star[pivot_col[q]] += FunctionJet::constant(star.dim(), t.order, t.weight, c);
  }
  return qmm;
}

std::vector<CheckResult> verify_qmm(const QuantumMomentMap& qmm, const StarProduct& star, const LieAlgebra& L,
                                    const std::vector<FunctionJet>& samples) {
  const Truncation t = star.trunc();
  const int Kb = std::max(t.order - 1, 0), Wb = std::max(t.weight - 2, 0);
  const SymplecticData om(star.dim());
  std::vector<CheckResult> out;

  CheckResult action{"action", true, ""};
  for (int a = 0; a < L.dim() && action.pass; ++a) {
    FunctionJet phi = qmm.phi_star[a].truncated(t.order, t.weight);
    FunctionJet cl = qmm.classical[a].truncated(t.order, t.weight);
    for (std::size_t s = 0; s < samples.size(); ++s) {
      FunctionJet u = samples[s].truncated(t.order, t.weight);
      FunctionJet diff = star.bracket_over_lambda(phi, u) - poisson(cl, u, om).truncated(Kb, Wb);
      if (!diff.is_zero()) {
        action.pass = false;
        action.detail = "[Φ_*(" + L.generators()[a] + "), u_" + std::to_string(s) + "]_*/λ - X·u = " + diff.str({});
        break;
      }
    }
  }
  out.push_back(action);

  CheckResult hom{"bracket", true, ""};
  std::vector<FunctionJet> phis;
  for (const auto& p : qmm.phi_star) phis.push_back(p.truncated(t.order, t.weight));
  for (int a = 0; a < L.dim() && hom.pass; ++a)
    for (int b = a + 1; b < L.dim(); ++b) {
      FunctionJet diff = star.bracket_over_lambda(phis[a], phis[b]) - bracket_image(L, a, b, phis).truncated(Kb, Wb);
      if (!diff.is_zero()) {
        hom.pass = false;
        hom.detail = "[Φ_*(" + L.generators()[a] + "), Φ_*(" + L.generators()[b] + ")]_*/λ - Φ_*([,]) = " + diff.str({});
        break;
      }
    }
  out.push_back(hom);
  return out;
}

}  // namespace fedq
