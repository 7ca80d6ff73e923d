#include "fedq/invariants.hpp"

#include <json.hpp>

#include "fedq/error.hpp"

namespace fedq {

bool verify_constancy(const FunctionJet& j) { return j.is_constant(); }

FunctionJet push_casimir(const NCElement& z, const QuantumMomentMap& qmm, const StarProduct& star, Truncation out) {
  const Truncation t = star.trunc();
  FunctionJet sum(star.dim(), t.order, t.weight);
  for (const auto& [w, c] : z.terms()) {
    FunctionJet prod = star.one();
    for (auto g : w) {
      if (g >= qmm.phi_star.size()) throw InputError("word uses a generator the moment map does not know");
      prod = star(prod, qmm.phi_star[g].truncated(t.order, t.weight));
    }
    LambdaSeries s(t.order);
    for (int k = 0; k <= std::min(t.order, c.order()); ++k) s[k] = c[k];
    sum += prod.scaled(s);
  }
  return sum.truncated(out.order, out.weight);
}

LambdaSeries evaluate_casimir(const NCElement& z, const LieAlgebra& L, const QuantumMomentMap& qmm,
                              const StarProduct& star, Truncation out) {
  if (!check_central(z, L)) throw MathError("element " + z.str(L.generators()) + " is not central");
  FunctionJet j = push_casimir(z, qmm, star, out);
  if (!verify_constancy(j)) throw MathError("Φ_*(Z) is not constant: " + j.str({}));
  return j.constant_term();
}

namespace {

std::string omega_text(const std::vector<Scalar>& pert) {
  std::string s = "ω";
  for (std::size_t i = 0; i < pert.size(); ++i) {
    if (pert[i].is_zero()) continue;
    std::string lam = i == 0 ? "λ" : "λ^" + std::to_string(i + 1);
    s += " + (" + pert[i].str() + ")*" + lam + "*ω";
  }
  return s;
}

}  // namespace

std::string InvariantReport::text() const {
  std::string flipped;
  for (const auto& f : conventions.flipped()) flipped += (flipped.empty() ? "" : ", ") + f;
  std::string out;
  out += "casimir: " + casimir + "\n";
  out += "chart: " + chart + "\n";
  out += "omega: " + omega_text(omega_pert) + "\n";
  out += "order: " + std::to_string(trunc.order) + "\n";
  out += "weight: " + std::to_string(trunc.weight) + "\n";
  out += "c = " + c.str() + "\n";
  out += std::string("constancy: ") + (constancy ? "verified" : "FAILED") + "\n";
  out += "conventions: " + conventions.hash_hex() + " (" + (flipped.empty() ? "defaults" : flipped) + ")\n";
  return out;
}

std::string InvariantReport::json() const {
  nlohmann::ordered_json j;
  j["casimir"] = casimir;
  j["chart"] = chart;
  auto om = nlohmann::ordered_json::array();
  for (const auto& p : omega_pert) om.push_back(p.str());
  j["omega"] = om;
  j["order"] = trunc.order;
  j["weight"] = trunc.weight;
  auto cs = nlohmann::ordered_json::array();
  for (const auto& x : c.coeffs()) cs.push_back(x.str());
  j["c"] = cs;
  j["c_text"] = c.str();
  j["constancy"] = constancy;
  j["conventions"] = {{"hash", conventions.hash_hex()}, {"flipped", conventions.flipped()}};
  return j.dump(2);
}

std::optional<int> compare(const InvariantReport& a, const InvariantReport& b) {
  const int n = std::min(a.c.order(), b.c.order());
  for (int k = 0; k <= n; ++k)
    if (!(a.c[k] == b.c[k])) return k;
  return std::nullopt;
}

Example builtin_example(const std::string& name, int jet_order) {
  if (name == "r2-sl2") return {name, builtin_chart_r2(jet_order), builtin_sl2(), moment_jets_r2(jet_order)};
  if (name == "s2-so3") return {name, builtin_chart_s2(jet_order), builtin_so3(), moment_jets_s2(jet_order)};
  throw InputError("unknown example '" + name + "' (built-ins: r2-sl2, s2-so3)");
}

Pipeline build_pipeline(const PipelineOptions& options) {
  if (options.order < 1) throw InputError("order must be at least 1");
  Pipeline p;
  p.options = options;
  p.report = {options.order, options.weight.value_or(2 * options.order)};
  if (p.report.weight < 2) throw InputError("weight must be at least 2");
  p.work = {p.report.order + 1, p.report.weight + 2};
  p.example = std::make_shared<Example>(builtin_example(options.example, p.work.weight));
  const Chart& chart = p.example->chart;
  const int n = chart.dim();
  WeylCurvature omega_tilde = WeylCurvature::scaled_omega(n, options.omega_pert, options.conventions);
  p.connection = std::make_shared<FedosovConnection>(chart, omega_tilde, p.work);
  p.star = std::make_shared<FedosovStar>(p.connection);

  Chart flat(chart.name() + "-flat", n, chart.jet_order(), chart.coords(), chart.params());
  auto semi = semi_moyal(flat, omega_tilde, p.work);
  p.mu = mu_from_connection(*semi, options.conventions);

  std::vector<FunctionJet> classical, candidates;
  for (const auto& phi : p.example->moment.phi) {
    FunctionJet H = FunctionJet::from_scalar_jet(phi, p.work.order, p.work.weight);
    classical.push_back(H);
    candidates.push_back(H + solve_correction(H, p.mu));
  }
  p.qmm = fix_constants(candidates, classical, *p.star, p.example->algebra);
  return p;
}

InvariantReport run_invariant(const Pipeline& p) {
  const LieAlgebra& L = p.example->algebra;
  NCElement z = builtin_casimir(L, p.work.order);
  InvariantReport r;
  r.casimir = z.str(L.generators());
  r.chart = p.example->chart.name();
  r.omega_pert = p.options.omega_pert;
  r.trunc = p.report;
  r.conventions = p.options.conventions;
  r.c = evaluate_casimir(z, L, p.qmm, *p.star, p.report);
  r.constancy = true;
  return r;
}

}  // namespace fedq
