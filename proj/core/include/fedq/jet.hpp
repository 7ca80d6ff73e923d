#pragma once

// Taylor jets at the chart origin. ScalarJet carries geometric data (Γ, R,
// vector fields); FunctionJet carries λ-dependent functions u(x, λ).

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "fedq/multi_index.hpp"
#include "fedq/series.hpp"
#include "fedq/symplectic.hpp"

namespace fedq {

/// Σ c_α x^α with |α| <= order.
class ScalarJet {
 public:
  ScalarJet() = default;
  ScalarJet(int dim, int order) : dim_(dim), order_(order) {}

  static ScalarJet constant(int dim, int order, const Scalar& c);
  static ScalarJet coordinate(int dim, int order, int i);

  int dim() const { return dim_; }
  int order() const { return order_; }
  const std::map<MultiIndex, Scalar>& terms() const { return terms_; }
  Scalar coeff(const MultiIndex& a) const;
  /// Adds c x^α, dropping it beyond the order.
  void add(const MultiIndex& a, const Scalar& c);
  bool is_zero() const { return terms_.empty(); }

  ScalarJet operator+(const ScalarJet& o) const;
  ScalarJet operator-(const ScalarJet& o) const;
  ScalarJet operator-() const { return scaled(Scalar(-1)); }
  ScalarJet operator*(const ScalarJet& o) const;
  ScalarJet scaled(const Scalar& c) const;
  /// ∂/∂x^i; the order drops by one.
  ScalarJet derivative(int i) const;
  ScalarJet truncated(int order) const;

  bool operator==(const ScalarJet& o) const;

 private:
  int dim_ = 0;
  int order_ = 0;
  std::map<MultiIndex, Scalar> terms_;
};

/// Σ λ^k u_{k,α} x^α, keeping only |α| + 2k <= weight and k <= order.
class FunctionJet {
 public:
  FunctionJet() = default;
  FunctionJet(int dim, int order, int weight);

  static FunctionJet constant(int dim, int order, int weight, const LambdaSeries& c);
  static FunctionJet from_scalar_jet(const ScalarJet& j, int order, int weight);
  /// Polynomial in the named coordinates, λ and formal parameters.
  static FunctionJet parse(std::string_view text, const std::vector<std::string>& coords, int order, int weight);

  int dim() const { return dim_; }
  int order() const { return order_; }
  int weight() const { return weight_; }
  const std::map<MultiIndex, LambdaSeries>& terms() const { return terms_; }

  Scalar coeff(const MultiIndex& a, int k) const;
  LambdaSeries series(const MultiIndex& a) const;
  void add(const MultiIndex& a, int k, const Scalar& c);
  void add(const MultiIndex& a, const LambdaSeries& s);
  bool is_zero() const { return terms_.empty(); }
  /// True when no positive-order Taylor coefficient survives.
  bool is_constant() const;
  LambdaSeries constant_term() const { return series(MultiIndex{}); }
  ScalarJet lambda_coefficient(int k) const;

  FunctionJet operator+(const FunctionJet& o) const;
  FunctionJet operator-(const FunctionJet& o) const;
  FunctionJet operator-() const { return scaled(Scalar(-1)); }
  /// Pointwise (commutative) product.
  FunctionJet operator*(const FunctionJet& o) const;
  FunctionJet& operator+=(const FunctionJet& o);
  FunctionJet scaled(const Scalar& c) const;
  FunctionJet scaled(const LambdaSeries& c) const;
  /// Multiplies by λ^s.
  FunctionJet shifted(int s) const;
  FunctionJet derivative(int i) const;
  FunctionJet truncated(int order, int weight) const;

  bool operator==(const FunctionJet& o) const;

  /// Human-readable polynomial using the given coordinate names.
  std::string str(const std::vector<std::string>& coords) const;
  std::string to_json() const;
  static FunctionJet from_json(std::string_view text);

 private:
  int dim_ = 0;
  int order_ = 0;
  int weight_ = 0;
  std::map<MultiIndex, LambdaSeries> terms_;

  void check(const FunctionJet& o) const;
  void prune();
};

/// {u, v} = ω^{ij} ∂_i u ∂_j v.
FunctionJet poisson(const FunctionJet& u, const FunctionJet& v, const SymplecticData& omega);
/// Σ_i X^i ∂_i u.
FunctionJet apply_vector_field(const std::vector<ScalarJet>& X, const FunctionJet& u);

}  // namespace fedq
