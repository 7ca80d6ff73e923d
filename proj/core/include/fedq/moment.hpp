#pragma once

// Quantum moment maps through the semi-Moyal reduction: μ from the linear
// part of γ, the correction ∂_i H̄ = (-2μ + μ²)^j_i ∂_j H, and constants fixed
// by the bracket homomorphism.

#include <string>
#include <vector>

#include "fedq/conventions.hpp"
#include "fedq/fedosov.hpp"
#include "fedq/gutt.hpp"

namespace fedq {

/// μ^i_j as function jets.
struct MuTensor {
  std::vector<std::vector<FunctionJet>> m;

  int dim() const { return static_cast<int>(m.size()); }
  bool is_zero() const;
};

/// μ^i_j = -s ω^{ik} γ^{(1)}_{kj}, with γ^{(1)}_{kj} the coefficient of
/// y^k dx^j and s the mu-sign convention. Throws MathError unless Γ = 0.
MuTensor mu_from_connection(const FedosovConnection& conn, const Conventions& conv = {});

/// H̄ with ∂_i H̄ = v_i := (-2μ + μ²)^j_i ∂_j H and H̄(o) = 0. Throws
/// MathError when v is not closed.
FunctionJet solve_correction(const FunctionJet& H, const MuTensor& mu);

struct QuantumMomentMap {
  std::vector<std::string> generators;
  /// Φ_*(X_a).
  std::vector<FunctionJet> phi_star;
  /// Φ(X_a).
  std::vector<FunctionJet> classical;

  /// {generator: jet} in the jet text format.
  std::string to_json(const std::vector<std::string>& coords) const;
};

/// Adds the constants c(X) that make [Φ_*(X), Φ_*(Y)]_* = λ Φ_*([X, Y]) hold.
/// Constants are determined through order K - 1 of the star product.
QuantumMomentMap fix_constants(const std::vector<FunctionJet>& candidates, const std::vector<FunctionJet>& classical,
                               const StarProduct& star, const LieAlgebra& L);

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// (a) [Φ_*(X), u]_* = λ {Φ(X), u} for every sample u and generator;
/// (b) [Φ_*(X_a), Φ_*(X_b)]_* = λ C^k_{ab} Φ_*(X_k) for every pair.
/// Both compared through order K - 1 of the star product.
std::vector<CheckResult> verify_qmm(const QuantumMomentMap& qmm, const StarProduct& star, const LieAlgebra& L,
                                    const std::vector<FunctionJet>& samples);

}  // namespace fedq
