#include "fedq/fedosov.hpp"

#include "fedq/error.hpp"

namespace fedq {

namespace {

unsigned form_bits(int i, int j) { return (1u << i) | (1u << j); }

}  // namespace

WeylCurvature WeylCurvature::scaled_omega(int dim, const std::vector<Scalar>& coeffs, const Conventions& conv) {
  SymplecticData om(dim);
  WeylCurvature w(dim);
  Scalar factor = Scalar(conv.pert_sign) * Scalar(conv.pert_half > 0 ? 1 : 2);
  for (std::size_t n = 0; n < coeffs.size(); ++n) {
    if (coeffs[n].is_zero()) continue;
    for (int i = 0; i < om.pairs(); ++i) {
      int j = om.partner(i);
      w.add(static_cast<int>(n) + 1, i, j, ScalarJet::constant(dim, 0, coeffs[n] * factor * Scalar(om.lower(i, j))));
    }
  }
  return w;
}

void WeylCurvature::add(int n, int i, int j, const ScalarJet& f) {
  if (n < 1) throw InputError("Weyl curvature perturbation must start at λ^1");
  if (i == j || i < 0 || j < 0 || i >= dim_ || j >= dim_) throw InputError("bad 2-form component index");
  ScalarJet g = f;
  if (i > j) {
    std::swap(i, j);
    g = -g;
  }
  auto key = std::make_tuple(n, i, j);
  auto it = parts_.find(key);
  if (it == parts_.end()) {
    if (!g.is_zero()) parts_.emplace(key, g);
    return;
  }
  ScalarJet sum(dim_, std::max(it->second.order(), g.order()));
  sum = it->second.truncated(sum.order()) + g.truncated(sum.order());
  if (sum.is_zero())
    parts_.erase(it);
  else
    it->second = sum;
}

WeylSection WeylCurvature::section(Truncation t) const {
  SectionBuilder b(dim_, t);
  for (const auto& [key, f] : parts_) {
    auto [n, i, j] = key;
    for (const auto& [alpha, c] : f.terms()) b.add(WeylKey(alpha, MultiIndex{}, form_bits(i, j), n), c);
  }
  WeylSection s = b.finish();
  if (!exterior_d(s).truncated({t.order, t.weight - 1}).is_zero())
    throw MathError("Weyl curvature perturbation is not closed");
  return s;
}

// ---------------------------------------------------------------------------

FedosovConnection::FedosovConnection(const Chart& chart, const WeylCurvature& omega_tilde, Truncation trunc)
    : chart_(chart), trunc_(trunc), omega_(chart.dim()) {
  const int n = chart.dim();
  if (trunc.order < 0 || trunc.weight < 1 || trunc.weight > kMaxExponent - 1)
    throw InputError("truncation out of range (need weight between 1 and " + std::to_string(kMaxExponent - 1) + ")");
  if (omega_tilde.dim() != n) throw InputError("Weyl curvature dimension does not match the chart");
  if (chart.jet_order() < trunc.weight - 2)
    throw InputError("chart jet order " + std::to_string(chart.jet_order()) + " is too small for weight " +
                     std::to_string(trunc.weight) + " (need at least " + std::to_string(trunc.weight - 2) + ")");
  chart.validate();

  // G one weight higher when the jets allow it, so that R is exact at the top.
  Truncation tg{trunc.order, std::min(trunc.weight + 1, chart.jet_order() + 2)};
  SectionBuilder gb(n, tg);
  for (int p = 0; p < n; ++p) {
    int l = omega_.partner(p);
    Scalar w(omega_.lower(p, l));
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k)
        for (const auto& [alpha, c] : chart.gamma(l, i, k).terms())
          gb.add(WeylKey(alpha, MultiIndex::unit(p) + MultiIndex::unit(i), 1u << k, 0),
                 (c * w).scaled(mpq_class(1, 2)));
  }
  WeylSection g_wide = gb.finish();
  G_ = g_wide.truncated(trunc);
  R_ = exterior_d(g_wide).truncated(trunc) + commutator_over_lambda(g_wide, g_wide, omega_, trunc).scaled(Scalar::rational(1, 2));
  omega_tilde_ = omega_tilde.section(trunc);

  const Truncation low = checked();
  gamma_ = WeylSection(n, trunc);
  WeylSection pending = (R_ + omega_tilde_).truncated(low);
  for (int d = 3; d <= trunc.weight; ++d) {
    WeylSection part = delta_inv(pending.fedosov_part(d - 1).truncated(trunc));
    if (part.is_zero()) continue;
    WeylSection feed = exterior_d(part).truncated(low);
    feed += commutator_over_lambda(G_, part, omega_, low);
    feed += commutator_over_lambda(gamma_, part, omega_, low);
    feed += commutator_over_lambda(part, part, omega_, low).scaled(Scalar::rational(1, 2));
    pending += feed;
    gamma_ += part;
  }
}

WeylSection FedosovConnection::bracket_terms(const WeylSection& a, Truncation out) const {
  WeylSection r = exterior_d(a).truncated(out);
  r += commutator_over_lambda(G_, a, omega_, out);
  r += commutator_over_lambda(gamma_, a, omega_, out);
  return r;
}

WeylSection FedosovConnection::apply_D(const WeylSection& a) const {
  return bracket_terms(a, checked()) - delta(a).truncated(checked());
}

WeylSection FedosovConnection::weyl_curvature_residual() const {
  const Truncation low = checked();
  WeylSection r = delta(gamma_).truncated(low) - R_.truncated(low) - exterior_d(gamma_).truncated(low);
  r -= commutator_over_lambda(G_, gamma_, omega_, low);
  r -= commutator_over_lambda(gamma_, gamma_, omega_, low).scaled(Scalar::rational(1, 2));
  return r;
}

WeylSection FedosovConnection::quantize(const FunctionJet& u) const {
  if (u.dim() != dim()) throw InputError("function jet dimension does not match the chart");
  const Truncation low = checked();
  WeylSection base = WeylSection::from_function(u, trunc_);
  WeylSection q(dim(), trunc_);
  WeylSection pending(dim(), low);
  for (int d = 0; d <= trunc_.weight; ++d) {
    WeylSection part = base.fedosov_part(d);
    if (d > 0) part += delta_inv(pending.fedosov_part(d - 1).truncated(trunc_));
    if (part.is_zero()) continue;
    pending += bracket_terms(part, low);
    q += part;
  }
  return q;
}

std::shared_ptr<const FedosovConnection> semi_moyal(const Chart& flat, const WeylCurvature& omega_tilde,
                                                    Truncation trunc) {
  if (!flat.is_flat()) throw MathError("semi-Moyal connection requires Γ = 0");
  return std::make_shared<FedosovConnection>(flat, omega_tilde, trunc);
}

// ---------------------------------------------------------------------------

FunctionJet StarProduct::bracket_over_lambda(const FunctionJet& u, const FunctionJet& v) const {
  FunctionJet c = multiply(u, v) - multiply(v, u);
  Truncation t = trunc();
  FunctionJet r(dim(), std::max(t.order - 1, 0), std::max(t.weight - 2, 0));
  for (const auto& [a, s] : c.terms()) {
    if (!s[0].is_zero()) throw InternalError("star commutator has a λ⁰ term");
    for (int k = 1; k <= s.order(); ++k) r.add(a, k - 1, s[k]);
  }
  return r;
}

FunctionJet StarProduct::one() const {
  Truncation t = trunc();
  return FunctionJet::constant(dim(), t.order, t.weight, LambdaSeries(t.order, Scalar(1)));
}

const WeylSection& FedosovStar::basis(const MultiIndex& alpha) const {
  std::lock_guard lock(mutex_);
  auto it = basis_.find(alpha);
  if (it != basis_.end()) return it->second;
  Truncation t = conn_->trunc();
  FunctionJet mono(dim(), t.order, t.weight);
  mono.add(alpha, 0, Scalar(1));
  return basis_.emplace(alpha, conn_->quantize(mono)).first->second;
}

WeylSection FedosovStar::quantize(const FunctionJet& u) const {
  if (u.dim() != dim()) throw InputError("function jet dimension does not match the star product");
  Truncation t = conn_->trunc();
  SectionBuilder b(dim(), t);
  for (const auto& [alpha, s] : u.terms()) {
    if (alpha.degree() > t.weight) continue;
    const WeylSection& q = basis(alpha);
    for (int k = 0; k <= std::min(s.order(), t.order); ++k) {
      if (s[k].is_zero()) continue;
      for (const auto& [key, c] : q.entries())
        b.add(WeylKey(key.alpha(), key.beta(), key.form(), key.k() + k), c * s[k]);
    }
  }
  return b.finish();
}

FunctionJet FedosovStar::multiply(const FunctionJet& u, const FunctionJet& v) const {
  return sigma_of_product(quantize(u), quantize(v), conn_->omega());
}

// ---------------------------------------------------------------------------

void EquivalenceOp::add(int n, const MultiIndex& beta, const ScalarJet& coeff) {
  if (n < 1) throw InputError("equivalence terms must carry at least one power of λ");
  if (beta.degree() == 0) throw InputError("equivalence terms must differentiate (T(1) = 1)");
  if (coeff.dim() != dim_) throw InputError("equivalence coefficient has the wrong dimension");
  for (const auto& [alpha, c] : coeff.terms())
    if (2 * n + alpha.degree() < beta.degree())
      throw InputError("equivalence term lowers the weight and cannot be applied exactly to truncated jets");
  if (!coeff.is_zero()) terms_.push_back({n, beta, coeff});
}

void EquivalenceOp::add_euler_power(int n, int m, const Scalar& c) {
  if (m < 1) throw InputError("Euler power must be positive");
  // E^m = Σ_j S(m, j) Σ_{|β| = j} (j!/β!) x^β ∂^β with Stirling numbers S.
  std::vector<std::vector<mpq_class>> S(static_cast<std::size_t>(m) + 1, std::vector<mpq_class>(static_cast<std::size_t>(m) + 1));
  S[0][0] = 1;
  for (int a = 1; a <= m; ++a)
    for (int j = 1; j <= a; ++j) S[a][j] = mpq_class(j) * S[a - 1][j] + S[a - 1][j - 1];
  Scalar cm(1);
  for (int a = 0; a < m; ++a) cm *= c;
  for (int j = 1; j <= m; ++j)
    for (const MultiIndex& beta : multi_indices_of_degree(dim_, j)) {
      ScalarJet coeff(dim_, j);
      mpq_class w = S[m][j] * mpq_class(falling(j, j)) / mpq_class(beta.factorial());
      coeff.add(beta, cm.scaled(w));
      add(n, beta, coeff);
    }
}

FunctionJet EquivalenceOp::apply(const FunctionJet& u) const {
  if (u.dim() != dim_) throw InputError("function jet dimension does not match the equivalence");
  FunctionJet r = u;
  for (const auto& t : terms_) {
    FunctionJet d = u;
    for (int i = 0; i < dim_; ++i)
      for (int e = 0; e < t.beta[i]; ++e) d = d.derivative(i);
    r += (FunctionJet::from_scalar_jet(t.coeff, u.order(), u.weight()) * d).shifted(t.n);
  }
  return r;
}

FunctionJet EquivalenceOp::apply_inverse(const FunctionJet& u) const {
  FunctionJet acc = u, term = u;
  for (int m = 1; m <= u.order(); ++m) {
    term = -(apply(term) - term);
    if (term.is_zero()) break;
    acc += term;
  }
  return acc;
}

FunctionJet TransportedStar::multiply(const FunctionJet& u, const FunctionJet& v) const {
  return t_.apply(base_->multiply(t_.apply_inverse(u), t_.apply_inverse(v)));
}

FunctionJet pullback_linear(const FunctionJet& u, const std::vector<std::vector<Scalar>>& M) {
  const int n = u.dim();
  if (static_cast<int>(M.size()) != n) throw InputError("linear map has the wrong size");
  std::vector<FunctionJet> lin;
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(M[i].size()) != n) throw InputError("linear map has the wrong size");
    FunctionJet l(n, u.order(), u.weight());
    for (int j = 0; j < n; ++j) l.add(MultiIndex::unit(j), 0, M[i][j]);
    lin.push_back(l);
  }
  FunctionJet r(n, u.order(), u.weight());
  for (const auto& [alpha, s] : u.terms()) {
    FunctionJet m = FunctionJet::constant(n, u.order(), u.weight(), s);
    for (int i = 0; i < n; ++i)
      for (int e = 0; e < alpha[i]; ++e) m = m * lin[i];
    r += m;
  }
  return r;
}

}  // namespace fedq
