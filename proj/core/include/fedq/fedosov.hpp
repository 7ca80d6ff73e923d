#pragma once

// Fedosov connections D = -δ + ∂ + [γ, ·]/λ on a chart, flat sections Q(u)
// and the resulting star products.

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include "fedq/chart.hpp"
#include "fedq/conventions.hpp"
#include "fedq/weyl.hpp"

namespace fedq {

/// Ω̃ = Σ_{n>=1} λ^n Ω_n, each Ω_n a closed 2-form stored by its components
/// F_{ij}, i < j, as the coefficient of dx^i ∧ dx^j.
class WeylCurvature {
 public:
  explicit WeylCurvature(int dim) : dim_(dim) {}

  /// Ω̃ = Σ_n c_n λ^n ω, read through the perturbation conventions.
  static WeylCurvature scaled_omega(int dim, const std::vector<Scalar>& coeffs, const Conventions& conv = {});

  int dim() const { return dim_; }
  void add(int n, int i, int j, const ScalarJet& f);
  bool is_zero() const { return parts_.empty(); }
  /// The 2-form section; throws MathError when some Ω_n is not closed.
  WeylSection section(Truncation t) const;

 private:
  int dim_;
  std::map<std::tuple<int, int, int>, ScalarJet> parts_;
};

class FedosovConnection {
 public:
  /// Solves δγ = R + Ω̃ + dγ + [G, γ]/λ + γ²/λ with δ⁻¹γ = 0 degree by degree.
  /// The chart must carry Γ jets of order at least weight - 2.
  FedosovConnection(const Chart& chart, const WeylCurvature& omega_tilde, Truncation trunc);

  const Chart& chart() const { return chart_; }
  int dim() const { return chart_.dim(); }
  Truncation trunc() const { return trunc_; }
  /// Truncation at which D-closedness statements are exact.
  Truncation checked() const { return {trunc_.order, trunc_.weight - 1}; }
  const SymplecticData& omega() const { return omega_; }

  /// G = ½ Γ_{pik} y^p y^i dx^k with Γ_{pik} = ω_{pl} Γ^l_{ik}.
  const WeylSection& G() const { return G_; }
  /// dG + G²/λ.
  const WeylSection& R() const { return R_; }
  const WeylSection& gamma() const { return gamma_; }
  const WeylSection& omega_tilde() const { return omega_tilde_; }

  /// Da at checked().
  WeylSection apply_D(const WeylSection& a) const;
  /// δγ - R - dγ - [G, γ]/λ - γ²/λ at checked(); equals Ω̃ for a solution.
  WeylSection weyl_curvature_residual() const;
  /// The unique D-flat section with σ(Q(u)) = u.
  WeylSection quantize(const FunctionJet& u) const;

 private:
  Chart chart_;
  Truncation trunc_;
  SymplecticData omega_;
  WeylSection G_, R_, gamma_, omega_tilde_;

  WeylSection bracket_terms(const WeylSection& a, Truncation out) const;
};

/// The flat connection (Γ = 0) with the given Weyl curvature. Throws MathError
/// if the chart is not flat.
std::shared_ptr<const FedosovConnection> semi_moyal(const Chart& flat, const WeylCurvature& omega_tilde,
                                                    Truncation trunc);

/// Anything that multiplies function jets.
class StarProduct {
 public:
  virtual ~StarProduct() = default;
  virtual int dim() const = 0;
  virtual Truncation trunc() const = 0;
  virtual FunctionJet multiply(const FunctionJet& u, const FunctionJet& v) const = 0;
  FunctionJet operator()(const FunctionJet& u, const FunctionJet& v) const { return multiply(u, v); }
  /// [u, v]_* / λ, exact at order K - 1.
  FunctionJet bracket_over_lambda(const FunctionJet& u, const FunctionJet& v) const;
  FunctionJet one() const;
};

/// u * v = σ(Q(u) ∘ Q(v)). Q is linear over λ, so flat sections of the
/// monomials x^α are cached and reused.
class FedosovStar final : public StarProduct {
 public:
  explicit FedosovStar(std::shared_ptr<const FedosovConnection> conn) : conn_(std::move(conn)) {}

  int dim() const override { return conn_->dim(); }
  Truncation trunc() const override { return conn_->trunc(); }
  FunctionJet multiply(const FunctionJet& u, const FunctionJet& v) const override;
  WeylSection quantize(const FunctionJet& u) const;
  const FedosovConnection& connection() const { return *conn_; }

 private:
  std::shared_ptr<const FedosovConnection> conn_;
  mutable std::mutex mutex_;
  mutable std::map<MultiIndex, WeylSection> basis_;

  const WeylSection& basis(const MultiIndex& alpha) const;
};

/// T = Id + Σ_{n>=1} λ^n T_n with T_n differential operators Σ c(x) ∂^β,
/// β ≠ 0, so that T(1) = 1.
class EquivalenceOp {
 public:
  struct Term {
    int n;
    MultiIndex beta;
    ScalarJet coeff;
  };

  explicit EquivalenceOp(int dim) : dim_(dim) {}
  int dim() const { return dim_; }
  const std::vector<Term>& terms() const { return terms_; }

  /// Adds λ^n c(x) ∂^β. Throws InputError for n < 1 or β = 0.
  void add(int n, const MultiIndex& beta, const ScalarJet& coeff);
  /// Adds λ^n (c·E)^m for the Euler operator E = Σ x^i ∂_i.
  void add_euler_power(int n, int m, const Scalar& c);

  FunctionJet apply(const FunctionJet& u) const;
  FunctionJet apply_inverse(const FunctionJet& u) const;

 private:
  int dim_;
  std::vector<Term> terms_;
};

/// u *' v = T(T⁻¹u * T⁻¹v).
class TransportedStar final : public StarProduct {
 public:
  TransportedStar(std::shared_ptr<const StarProduct> base, EquivalenceOp t)
      : base_(std::move(base)), t_(std::move(t)) {}
  int dim() const override { return base_->dim(); }
  Truncation trunc() const override { return base_->trunc(); }
  FunctionJet multiply(const FunctionJet& u, const FunctionJet& v) const override;
  const EquivalenceOp& op() const { return t_; }

 private:
  std::shared_ptr<const StarProduct> base_;
  EquivalenceOp t_;
};

/// u ∘ M: substitutes x ↦ M x in a polynomial jet.
FunctionJet pullback_linear(const FunctionJet& u, const std::vector<std::vector<Scalar>>& M);

}  // namespace fedq
