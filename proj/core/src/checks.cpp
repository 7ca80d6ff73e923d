#include "fedq/checks.hpp"

#include <fstream>
#include <sstream>

#include "fedq/error.hpp"

namespace fedq {

Scalar Sampler::rational(int range) {
  mpq_class q(uniform(-range, range), uniform(1, range));
  q.canonicalize();
  return Scalar(q);
}

Scalar Sampler::scalar(bool with_r) {
  Scalar s = rational();
  if (with_r && uniform(0, 4) < 2) s += Scalar::param("r", uniform(-2, 2)) * rational();
  return s;
}

MultiIndex Sampler::index(int dim, int max_degree) {
  MultiIndex m;
  const int d = uniform(0, max_degree);
  for (int i = 0; i < d; ++i) m[uniform(0, dim - 1)] += 1;
  return m;
}

FunctionJet Sampler::jet(int dim, Truncation t, int terms, bool with_r) {
  FunctionJet u(dim, t.order, t.weight);
  for (int i = 0; i < terms; ++i) {
    const int k = uniform(0, t.order);
    u.add(index(dim, std::max(t.weight - 2 * k, 0)), k, scalar(with_r));
  }
  return u;
}

FunctionJet Sampler::classical_jet(int dim, Truncation t, int terms, bool with_r) {
  FunctionJet u(dim, t.order, t.weight);
  for (int i = 0; i < terms; ++i) u.add(index(dim, t.weight), 0, scalar(with_r));
  return u;
}

WeylSection Sampler::section(int dim, Truncation t, int terms) {
  SectionBuilder b(dim, t);
  for (int i = 0; i < terms; ++i) {
    const int k = uniform(0, t.order);
    const int left = std::max(t.weight - 2 * k, 0);
    MultiIndex a = index(dim, left);
    MultiIndex y = index(dim, left - a.degree());
    unsigned form = 0;
    for (int j = uniform(0, 2); j > 0; --j) form |= 1u << uniform(0, dim - 1);
    b.add(WeylKey(a, y, form, k), scalar(true));
  }
  return b.finish();
}

SymPoly Sampler::poly(int dim, int order, int max_degree, int terms) {
  SymPoly p(dim, order);
  for (int i = 0; i < terms; ++i) {
    LambdaSeries c(order);
    c[uniform(0, std::min(order, 1))] = rational();
    p.add(index(dim, max_degree), c);
  }
  return p;
}

std::vector<std::vector<Scalar>> Sampler::sl2_matrix() {
  Scalar a;
  while (a.is_zero()) a = rational();
  Scalar b = rational(), c = rational();
  return {{a, b}, {c, (Scalar(1) + b * c) / a}};
}

namespace {

CheckResult pass(std::string name) { return {std::move(name), true, ""}; }

void fail(CheckResult& r, std::string detail) {
  if (!r.pass) return;
  r.pass = false;
  r.detail = std::move(detail);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::vector<CheckResult> star_axioms(const StarProduct& star, Sampler& s, int samples) {
  const int n = star.dim();
  const Truncation t = star.trunc();
  const SymplecticData om(n);
  CheckResult assoc = pass("associativity"), unit = pass("unit"), first = pass("first-order");
  for (int i = 0; i < samples; ++i) {
    FunctionJet u = s.jet(n, t, 5), v = s.jet(n, t, 5), w = s.jet(n, t, 5);
    FunctionJet lhs = star(star(u, v), w), rhs = star(u, star(v, w));
    if (!(lhs == rhs)) fail(assoc, "sample " + std::to_string(i) + ": (u*v)*w - u*(v*w) = " + (lhs - rhs).str({}));
    if (!(star(star.one(), u) == u) || !(star(u, star.one()) == u)) fail(unit, "sample " + std::to_string(i));
    FunctionJet a = s.classical_jet(n, t, 5), b = s.classical_jet(n, t, 5);
    ScalarJet got = star.bracket_over_lambda(a, b).lambda_coefficient(0);
    ScalarJet want = poisson(a, b, om).truncated(t.order - 1, t.weight - 2).lambda_coefficient(0);
    if (!(got == want)) fail(first, "sample " + std::to_string(i) + ": C1(u,v) - C1(v,u) differs from {u,v}");
  }
  return {assoc, unit, first};
}

std::vector<CheckResult> fedosov_internals(const FedosovConnection& conn, Sampler& s, int samples) {
  const int n = conn.dim();
  const Truncation t = conn.trunc();
  CheckResult nil = pass("delta-nilpotent"), hodge = pass("hodge"), gauge = pass("gauge"), deg = pass("gamma-degree"),
              flat = pass("flat-sections"), symbol = pass("symbol");
  const Truncation low{t.order, t.weight - 1};
  for (int i = 0; i < samples; ++i) {
    WeylSection a = s.section(n, t, 10);
    if (!delta(delta(a)).is_zero() || !delta_inv(delta_inv(a)).is_zero())
      fail(nil, "section " + std::to_string(i) + ": " + a.str());
    WeylSection rhs = WeylSection::from_function(sigma(a), t) + delta(delta_inv(a)) + delta_inv(delta(a));
    if (!(a.truncated(low) == rhs.truncated(low)))
      fail(hodge, "section " + std::to_string(i) + ": " + (a - rhs).truncated(low).str());
  }
  if (!delta_inv(conn.gamma()).is_zero()) fail(gauge, "δ⁻¹γ = " + delta_inv(conn.gamma()).str());
  if (!conn.gamma().is_zero() && conn.gamma().min_fedosov_degree() < 3)
    fail(deg, "γ has Fedosov degree " + std::to_string(conn.gamma().min_fedosov_degree()));
  for (int i = 0; i < std::max(samples / 4, 1); ++i) {
    FunctionJet u = s.jet(n, t, 5);
    WeylSection q = conn.quantize(u);
    WeylSection dq = conn.apply_D(q);
    if (!dq.is_zero()) fail(flat, "D(Q(u)) = " + dq.str());
    if (!(sigma(q) == u)) fail(symbol, "σ(Q(u)) - u = " + (sigma(q) - u).str({}));
  }
  return {nil, hodge, gauge, deg, flat, symbol};
}

CheckResult cubic_term(const FedosovConnection& conn, const std::vector<FunctionJet>& us, const Conventions& conv) {
  const Chart& chart = conn.chart();
  const int n = conn.dim();
  const Truncation t = conn.trunc();
  CheckResult r = pass("cubic-term");
  if (t.weight < 3) {
    fail(r, "weight bound below 3");
    return r;
  }
  const CurvatureJets R = curvature_from_gamma(chart);
  const SymplecticData& om = conn.omega();
  auto at0 = [](const ScalarJet& j) { return j.coeff(MultiIndex{}); };
  for (std::size_t s = 0; s < us.size(); ++s) {
    ScalarJet u0 = us[s].lambda_coefficient(0);
    SectionBuilder want(n, t);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          Scalar c = at0(u0.derivative(i).derivative(j).derivative(k));
          for (int m = 0; m < n; ++m) c -= at0(chart.gamma(m, j, k).derivative(i)) * at0(u0.derivative(m));
          c = c.scaled(mpq_class(1, 6));
          for (int l = 0; l < n; ++l) {
            const int m = om.partner(l);
            c -= (at0(R(i, j, k, l)) * Scalar(om.upper(l, m)) * at0(u0.derivative(m)))
                     .scaled(mpq_class(conv.curvature_sign, 24));
          }
          want.add(WeylKey(MultiIndex{}, MultiIndex::unit(i) + MultiIndex::unit(j) + MultiIndex::unit(k), 0, 0), c);
        }
    SectionBuilder got(n, t);
    WeylSection q = conn.quantize(us[s]);
    for (const auto& [key, c] : q.entries())
      if (key.alpha_degree() == 0 && key.beta_degree() == 3 && key.form() == 0 && key.k() == 0) got.add(key, c);
    WeylSection g = got.finish(), w = want.finish();
    if (!(g == w)) fail(r, "jet " + std::to_string(s) + ": Q(u) - formula = " + (g - w).str());
  }
  return r;
}

std::vector<CheckResult> gutt_checks(const LieAlgebra& L, Sampler& s, int samples) {
  constexpr int K = 3;
  const int n = L.dim();
  CheckResult structure = pass("structure"), comm = pass("commutators"), center = pass("center"),
              sym = pass("symmetrize");
  try {
    L.validate();
  } catch (const MathError& e) {
    fail(structure, e.what());
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      SymPoly xi(n, K), xj(n, K), rhs(n, K);
      xi.add(MultiIndex::unit(i), LambdaSeries(K, Scalar(1)));
      xj.add(MultiIndex::unit(j), LambdaSeries(K, Scalar(1)));
      for (int k = 0; k < n; ++k) rhs.add(MultiIndex::unit(k), LambdaSeries::lambda_power(K, 1).scaled(L.c(k, i, j)));
      if (!(gutt_mul(xi, xj, L) - gutt_mul(xj, xi, L) == rhs))
        fail(comm, L.generators()[i] + "*" + L.generators()[j] + " - " + L.generators()[j] + "*" + L.generators()[i]);
    }
  try {
    NCElement z = builtin_casimir(L, K);
    NCElement p = z;
    // Commutators with a generator add one letter.
    for (int d = 2; d < kDefaultMaxDegree; d += 2) {
      if (!check_central(p, L)) fail(center, "Z^" + std::to_string(d / 2) + " is not central");
      if (d + 2 < kDefaultMaxDegree) p = p * z;
    }
  } catch (const InputError& e) {
    center.detail = std::string("skipped: ") + e.what();
  }
  for (int i = 0; i < samples; ++i) {
    SymPoly p = s.poly(n, K, 4, 5);
    if (!(desymmetrize(pbw_straighten(symmetrize(p), L), L) == p)) fail(sym, "round trip failed on " + p.str(L.generators()));
  }
  return {structure, comm, center, sym};
}

std::vector<FunctionJet> qmm_samples(int dim, Truncation t, Sampler& s, int samples) {
  std::vector<FunctionJet> out;
  for (int i = 0; i < dim; ++i) {
    FunctionJet x(dim, t.order, t.weight);
    x.add(MultiIndex::unit(i), 0, Scalar(1));
    out.push_back(x);
  }
  for (int i = 0; i < samples; ++i) out.push_back(s.jet(dim, t, 6));
  return out;
}

std::vector<CheckResult> invariance_checks(Sampler& s, int order, int samples) {
  CheckResult constancy = pass("constancy"), equivalence = pass("equivalence"), group = pass("group-invariance");

  const std::vector<std::pair<std::string, std::vector<Scalar>>> golden{
      {"r2-sl2", {}}, {"s2-so3", {}}, {"s2-so3", {Scalar(1)}}};
  for (const auto& [name, pert] : golden) {
    PipelineOptions o;
    o.example = name;
    o.order = order;
    o.omega_pert = pert;
    Pipeline p = build_pipeline(o);
    NCElement z = builtin_casimir(p.example->algebra, p.work.order);
    FunctionJet j = push_casimir(z, p.qmm, *p.star, p.report);
    if (!verify_constancy(j)) fail(constancy, name + ": Φ_*(Z) = " + j.str(p.example->chart.coords()));
  }

  PipelineOptions o;
  o.example = "r2-sl2";
  o.order = order;
  Pipeline p = build_pipeline(o);
  // Polynomials in the Euler operator are the SL(2)-equivariant ones.
  EquivalenceOp T(2);
  T.add_euler_power(1, 1, s.rational());
  T.add_euler_power(2, 1, s.rational());
  T.add_euler_power(2, 2, s.rational());
  auto moved = std::make_shared<TransportedStar>(p.star, T);
  QuantumMomentMap q = p.qmm;
  for (auto& f : q.phi_star) f = T.apply(f);
  const LieAlgebra& L = p.example->algebra;
  for (const auto& r : verify_qmm(q, *moved, L, qmm_samples(2, p.work, s, samples)))
    if (!r.pass) fail(equivalence, "transported map: " + r.detail);
  NCElement z = builtin_casimir(L, p.work.order);
  LambdaSeries c0 = evaluate_casimir(z, L, p.qmm, *p.star, p.report);
  LambdaSeries c1 = evaluate_casimir(z, L, q, *moved, p.report);
  if (!(c0 == c1)) fail(equivalence, "c = " + c0.str() + " but transported c = " + c1.str());

  const Truncation t = Truncation::for_order(order);
  FedosovStar moyal(std::make_shared<FedosovConnection>(builtin_chart_r2(t.weight), WeylCurvature(2), t));
  for (int m = 0; m < 5; ++m) {
    auto M = s.sl2_matrix();
    for (int i = 0; i < std::max(samples / 5, 2); ++i) {
      FunctionJet u = s.jet(2, t, 5), v = s.jet(2, t, 5);
      FunctionJet lhs = pullback_linear(moyal(u, v), M);
      FunctionJet rhs = moyal(pullback_linear(u, M), pullback_linear(v, M));
      if (!(lhs == rhs))
        fail(group, "g = [[" + M[0][0].str() + ", " + M[0][1].str() + "], [" + M[1][0].str() + ", " + M[1][1].str() +
                        "]]: g(u*v) - gu*gv = " + (lhs - rhs).str({}));
    }
  }
  return {constancy, equivalence, group};
}

Chart load_chart(const std::string& source, int jet_order) {
  if (source == "r2") return builtin_chart_r2(jet_order);
  if (source == "s2") return builtin_chart_s2(jet_order);
  return Chart::from_json(read_file(source));
}

LieAlgebra load_lie_algebra(const std::string& source) {
  if (source == "sl2" || source == "so3") return builtin_lie_algebra(source);
  return LieAlgebra::from_json(read_file(source));
}

std::vector<std::string> suite_names() { return {"associativity", "qmm-axioms", "gutt-center", "hodge", "invariance"}; }

std::vector<CheckResult> run_suite(const std::string& name, const SuiteOptions& o) {
  if (o.order < 1) throw InputError("order must be at least 1");
  Sampler s(o.seed);
  auto connection = [&] {
    const Truncation t = Truncation::for_order(o.order);
    Chart chart = load_chart(o.chart, t.weight);
    return std::make_shared<FedosovConnection>(chart, WeylCurvature::scaled_omega(chart.dim(), o.omega_pert, o.conventions), t);
  };
  if (name == "associativity") return star_axioms(FedosovStar(connection()), s, o.samples);
  if (name == "hodge") {
    auto conn = connection();
    auto out = fedosov_internals(*conn, s, o.samples);
    std::vector<FunctionJet> us;
    for (int i = 0; i < 3; ++i) us.push_back(s.jet(conn->dim(), conn->trunc(), 8));
    out.push_back(cubic_term(*conn, us, o.conventions));
    return out;
  }
  if (name == "qmm-axioms") {
    PipelineOptions po;
    po.example = o.example;
    po.order = o.order;
    po.omega_pert = o.omega_pert;
    po.conventions = o.conventions;
    Pipeline p = build_pipeline(po);
    return verify_qmm(p.qmm, *p.star, p.example->algebra, qmm_samples(p.star->dim(), p.work, s, o.samples));
  }
  if (name == "gutt-center") return gutt_checks(load_lie_algebra(o.liealg), s, o.samples);
  if (name == "invariance") return invariance_checks(s, o.order, o.samples);
  throw InputError("unknown suite '" + name + "' (associativity, qmm-axioms, gutt-center, hodge, invariance)");
}

}  // namespace fedq
