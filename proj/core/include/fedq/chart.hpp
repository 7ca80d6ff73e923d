#pragma once

// Darboux charts: constant standard ω plus Taylor jets of a torsion-free
// symplectic connection at the origin.

#include <string>
#include <string_view>
#include <vector>

#include "fedq/jet.hpp"
#include "fedq/symplectic.hpp"

namespace fedq {

class Chart {
 public:
  Chart(std::string name, int dim, int jet_order, std::vector<std::string> coords,
        std::vector<std::string> params = {});

  const std::string& name() const { return name_; }
  int dim() const { return dim_; }
  int jet_order() const { return jet_order_; }
  const std::vector<std::string>& coords() const { return coords_; }
  const std::vector<std::string>& params() const { return params_; }
  SymplecticData omega() const { return SymplecticData(dim_); }

  /// Γ^k_{ij}.
  const ScalarJet& gamma(int k, int i, int j) const { return gamma_[index(k, i, j)]; }
  /// Sets Γ^k_{ij} and Γ^k_{ji}.
  void set_gamma(int k, int i, int j, const ScalarJet& g);
  bool is_flat() const;

  /// Throws MathError unless Γ is torsion free and ω_{il}Γ^l_{jk} is totally
  /// symmetric at every retained order.
  void validate() const;

  std::string to_json() const;
  static Chart from_json(std::string_view text);

 private:
  std::string name_;
  int dim_;
  int jet_order_;
  std::vector<std::string> coords_;
  std::vector<std::string> params_;
  std::vector<ScalarJet> gamma_;

  std::size_t index(int k, int i, int j) const {
    return static_cast<std::size_t>((k * dim_ + i) * dim_ + j);
  }
};

/// R_{ijkl} jets.
class CurvatureJets {
 public:
  CurvatureJets(int dim, int order);
  int dim() const { return dim_; }
  int order() const { return order_; }
  const ScalarJet& operator()(int i, int j, int k, int l) const { return r_[index(i, j, k, l)]; }
  ScalarJet& operator()(int i, int j, int k, int l) { return r_[index(i, j, k, l)]; }
  bool is_zero() const;

 private:
  int dim_;
  int order_;
  std::vector<ScalarJet> r_;

  std::size_t index(int i, int j, int k, int l) const {
    return static_cast<std::size_t>(((i * dim_ + j) * dim_ + k) * dim_ + l);
  }
};

/// R^m_{jkl} = ∂_k Γ^m_{lj} - ∂_l Γ^m_{kj} + Γ^m_{kp}Γ^p_{lj} - Γ^m_{lp}Γ^p_{kj},
/// lowered as R_{ijkl} = ω_{im} R^m_{jkl}. The result has jet order J - 1.
CurvatureJets curvature_from_gamma(const Chart& c);

/// ℝ² with coordinates (x, p) and Γ = 0.
Chart builtin_chart_r2(int jet_order);
/// The sphere of radius r near o = (θ = π/2, φ = 0) in the canonical
/// coordinates t = -r cos θ, φ, with the Levi-Civita connection of the round
/// metric.
Chart builtin_chart_s2(int jet_order);

/// A Lie algebra action on a chart together with its classical moment map.
struct MomentData {
  std::vector<std::string> generators;
  /// Φ(X_a) jets.
  std::vector<ScalarJet> phi;
  /// Linear part of the action on the chart coordinates, when the action is
  /// linear (ℝ² only); used for the group-invariance checks.
  std::vector<std::vector<std::vector<Scalar>>> linear;
};

MomentData moment_jets_r2(int jet_order);
MomentData moment_jets_s2(int jet_order);

/// Hamiltonian vector field components ω^{ij} ∂_i f, so that
/// {f, u} = Σ_j V^j ∂_j u.
std::vector<ScalarJet> hamiltonian_field(const ScalarJet& f, const SymplecticData& omega);

/// The rotation fields T_x, T_y, T_z on the sphere chart, in the
/// right-handed convention (T_z = ∂_φ).
std::vector<std::vector<ScalarJet>> rotation_fields_s2(int jet_order);

}  // namespace fedq
