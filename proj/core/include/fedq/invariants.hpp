#pragma once

// c_*: Casimir elements pushed through a quantum moment map, with the
// constancy gate, plus the end-to-end pipeline for the built-in examples.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fedq/moment.hpp"

namespace fedq {

/// True iff no positive-order Taylor coefficient survives at any λ order.
bool verify_constancy(const FunctionJet& j);

/// Σ_w c_w Φ_*(w_1) * ... * Φ_*(w_n), truncated to `out`.
FunctionJet push_casimir(const NCElement& z, const QuantumMomentMap& qmm, const StarProduct& star, Truncation out);

/// The constant value of push_casimir. Throws MathError when z is not central
/// or when the pushed jet is not constant (the message carries the jet).
LambdaSeries evaluate_casimir(const NCElement& z, const LieAlgebra& L, const QuantumMomentMap& qmm,
                              const StarProduct& star, Truncation out);

struct InvariantReport {
  std::string casimir;
  std::string chart;
  std::vector<Scalar> omega_pert;
  Truncation trunc;
  LambdaSeries c;
  bool constancy = false;
  Conventions conventions;

  std::string text() const;
  std::string json() const;
};

/// std::nullopt when equal, otherwise the first λ order at which they differ.
std::optional<int> compare(const InvariantReport& a, const InvariantReport& b);

/// A chart with a transitive Hamiltonian action.
struct Example {
  std::string name;
  Chart chart;
  LieAlgebra algebra;
  MomentData moment;
};

/// "r2-sl2" or "s2-so3", with Γ jets of the given order.
Example builtin_example(const std::string& name, int jet_order);

struct PipelineOptions {
  std::string example = "r2-sl2";
  int order = 2;
  /// Weight bound; 2·order when unset.
  std::optional<int> weight;
  std::vector<Scalar> omega_pert;
  Conventions conventions;
};

/// Everything the invariant computation builds. The connection, star product
/// and moment map live one λ order (two weight steps) above `report`, which is
/// where every stored statement is exact.
struct Pipeline {
  PipelineOptions options;
  Truncation report;
  Truncation work;
  std::shared_ptr<Example> example;
  std::shared_ptr<const FedosovConnection> connection;
  std::shared_ptr<const FedosovStar> star;
  MuTensor mu;
  QuantumMomentMap qmm;
};

Pipeline build_pipeline(const PipelineOptions& options);

/// Throws MathError on a failed constancy gate.
InvariantReport run_invariant(const Pipeline& p);

}  // namespace fedq
