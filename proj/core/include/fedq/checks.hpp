#pragma once

// Seeded property suites over the whole engine. Each returns one CheckResult
// per property; the first counterexample found lands in `detail`.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "fedq/invariants.hpp"

namespace fedq {

/// Seeded source of random jets, sections and matrices.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  Scalar rational(int range = 5);
  /// Rational, sometimes times a power of r.
  Scalar scalar(bool with_r);
  MultiIndex index(int dim, int max_degree);
  FunctionJet jet(int dim, Truncation t, int terms, bool with_r = true);
  /// Jets without λ, for statements about the λ¹ coefficient.
  FunctionJet classical_jet(int dim, Truncation t, int terms, bool with_r = true);
  WeylSection section(int dim, Truncation t, int terms);
  SymPoly poly(int dim, int order, int max_degree, int terms);
  /// Rational 2×2 matrix of determinant one.
  std::vector<std::vector<Scalar>> sl2_matrix();

 private:
  std::mt19937_64 rng_;
};

/// Associativity, two-sided unit, and [u, v]_*/λ = {u, v} at λ⁰.
std::vector<CheckResult> star_axioms(const StarProduct& star, Sampler& s, int samples);

/// δ² = 0, δ⁻¹² = 0, the Hodge identity, δ⁻¹γ = 0, deg γ ≥ 3, D(Q(u)) = 0
/// and σ(Q(u)) = u.
std::vector<CheckResult> fedosov_internals(const FedosovConnection& conn, Sampler& s, int samples);

/// The λ⁰ y³ part of Q(u) at o against
/// Σ [(∂³u - ∂_iΓ^m_{jk} ∂_m u)/6 - s R_{ijkl} ω^{lm} ∂_m u / 24] y^i y^j y^k,
/// with s the curvature-sign convention.
CheckResult cubic_term(const FedosovConnection& conn, const std::vector<FunctionJet>& us, const Conventions& conv);

/// Structure constants, commutators of generators, centrality of the
/// Casimir's powers within the degree bound, desymmetrize∘symmetrize = id.
std::vector<CheckResult> gutt_checks(const LieAlgebra& L, Sampler& s, int samples);

/// Random jets for verify_qmm, coordinates included.
std::vector<FunctionJet> qmm_samples(int dim, Truncation t, Sampler& s, int samples);

/// Constancy of Φ_*(Z), c unchanged under a random equivalence of the plane
/// pipeline, and g(u*v) = gu * gv for random rational SL(2) matrices.
std::vector<CheckResult> invariance_checks(Sampler& s, int order, int samples);

/// Builtin "r2" / "s2", or a chart file.
Chart load_chart(const std::string& source, int jet_order);
/// Builtin "sl2" / "so3", or a Lie algebra file.
LieAlgebra load_lie_algebra(const std::string& source);

struct SuiteOptions {
  std::string chart = "s2";
  std::string example = "s2-so3";
  std::string liealg = "sl2";
  int order = 3;
  std::vector<Scalar> omega_pert;
  std::uint64_t seed = 1;
  int samples = 20;
  Conventions conventions;
};

/// associativity, qmm-axioms, gutt-center, hodge, invariance.
std::vector<std::string> suite_names();
std::vector<CheckResult> run_suite(const std::string& name, const SuiteOptions& o);

}  // namespace fedq
