#pragma once

// Sections of the Weyl bundle with forms, as jets at the chart origin:
//   a = Σ c · λ^k x^α y^β dx^S.
// Truncation keeps k <= order and the weight |α| + |β| + 2k <= weight.
// The Moyal product is weight additive, d and δ lower the weight by one and
// δ⁻¹ raises it by one, so every recursion below stays exact under this
// truncation.

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fedq/jet.hpp"
#include "fedq/multi_index.hpp"
#include "fedq/scalar.hpp"
#include "fedq/symplectic.hpp"

namespace fedq {

struct Truncation {
  int order = 0;   // max λ power K
  int weight = 0;  // max |α| + |β| + 2k

  bool operator==(const Truncation&) const = default;
  /// Default weight bound 2K.
  static Truncation for_order(int k) { return {k, 2 * k}; }
};

/// Packed (α, β, S, k). α occupies the most significant bits so that sorting
/// by key is lexicographic in (α, β, S, k).
class WeylKey {
 public:
  WeylKey() = default;
  WeylKey(const MultiIndex& alpha, const MultiIndex& beta, unsigned form, int k);
  explicit WeylKey(std::uint64_t bits) : bits_(bits) {}

  MultiIndex alpha() const;
  MultiIndex beta() const;
  unsigned form() const { return static_cast<unsigned>((bits_ >> 8) & 0xffu); }
  int k() const { return static_cast<int>(bits_ & 0xffu); }
  int alpha_degree() const;
  int beta_degree() const;
  int form_degree() const;
  int weight() const { return alpha_degree() + beta_degree() + 2 * k(); }
  int fedosov_degree() const { return beta_degree() + 2 * k(); }
  std::uint64_t bits() const { return bits_; }

  auto operator<=>(const WeylKey&) const = default;

 private:
  std::uint64_t bits_ = 0;
};

/// Sign of dx^S ∧ dx^T rewritten in increasing order; 0 when S and T meet.
int wedge_sign(unsigned s, unsigned t);

class WeylSection {
 public:
  using Entry = std::pair<WeylKey, Scalar>;

  WeylSection() = default;
  WeylSection(int dim, Truncation trunc);

  /// x-jet u placed at y = 0, no forms.
  static WeylSection from_function(const FunctionJet& u, Truncation trunc);
  static WeylSection monomial(int dim, Truncation trunc, const MultiIndex& alpha, const MultiIndex& beta,
                              unsigned form, int k, const Scalar& c);
  /// The fiber coordinate y^i.
  static WeylSection y(int dim, Truncation trunc, int i);

  int dim() const { return dim_; }
  const Truncation& trunc() const { return trunc_; }
  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool is_zero() const { return entries_.empty(); }
  Scalar coeff(const WeylKey& key) const;
  bool admits(const WeylKey& key) const { return key.k() <= trunc_.order && key.weight() <= trunc_.weight; }

  WeylSection operator+(const WeylSection& o) const;
  WeylSection operator-(const WeylSection& o) const;
  WeylSection operator-() const { return scaled(Scalar(-1)); }
  WeylSection& operator+=(const WeylSection& o);
  WeylSection& operator-=(const WeylSection& o);
  WeylSection scaled(const Scalar& c) const;
  /// Multiplies by λ^s (entries with negative resulting power are an error).
  WeylSection shifted(int s) const;
  WeylSection truncated(Truncation t) const;

  /// Entries with Fedosov degree |β| + 2k equal to d.
  WeylSection fedosov_part(int d) const;
  /// Smallest Fedosov degree present, or -1 for zero.
  int min_fedosov_degree() const;
  WeylSection form_part(int degree) const;
  /// Entries with the given y-degree.
  WeylSection y_part(int degree) const;

  bool operator==(const WeylSection& o) const;

  std::string str() const;
  std::string to_json() const;
  static WeylSection from_json(std::string_view text);

 private:
  int dim_ = 0;
  Truncation trunc_;
  std::vector<Entry> entries_;  // sorted by key, no zero coefficients

  friend class SectionBuilder;
};

/// Accumulates coefficients by key and produces a canonical section.
class SectionBuilder {
 public:
  SectionBuilder(int dim, Truncation trunc) : dim_(dim), trunc_(trunc) {}
  void add(const WeylKey& key, const Scalar& c);
  void add(const WeylSection& s);
  WeylSection finish();

 private:
  int dim_;
  Truncation trunc_;
  std::unordered_map<std::uint64_t, Scalar> acc_;
};

/// Fiberwise Moyal product a ∘ b with the wedge product on forms, truncated
/// to `out` (defaults to a's truncation).
WeylSection moyal_mul(const WeylSection& a, const WeylSection& b, const SymplecticData& omega);
WeylSection moyal_mul(const WeylSection& a, const WeylSection& b, const SymplecticData& omega, Truncation out);
/// Graded commutator divided by λ: (a∘b - (-1)^{|a||b|} b∘a)/λ. Only the odd
/// Moyal terms survive, so this is computed directly and stays exact.
WeylSection commutator_over_lambda(const WeylSection& a, const WeylSection& b, const SymplecticData& omega,
                                   Truncation out);
inline WeylSection commutator_over_lambda(const WeylSection& a, const WeylSection& b, const SymplecticData& omega) {
  return commutator_over_lambda(a, b, omega, a.trunc());
}

/// δa = dx^k ∧ ∂a/∂y^k.
WeylSection delta(const WeylSection& a);
/// On y^β dx^S with p = |β|, q = |S|, p + q > 0: (1/(p+q)) y^k ι_k.
WeylSection delta_inv(const WeylSection& a);
/// Exterior derivative in x: da = dx^i ∧ ∂a/∂x^i.
WeylSection exterior_d(const WeylSection& a);
/// Restriction to y = 0 and form degree 0.
FunctionJet sigma(const WeylSection& a);
/// σ(a ∘ b) for form-degree-0 sections without building the full product.
FunctionJet sigma_of_product(const WeylSection& a, const WeylSection& b, const SymplecticData& omega);

/// Linear vector field X (X^k_j, acting as y ↦ X y) as the quadratic section
/// A(X) = -1/2 ω_{ik} X^k_j y^i y^j, normalized so that [A(X), a]/λ is the
/// derivative of a along X y. Throws MathError unless ωX is symmetric.
WeylSection lie_generator(const std::vector<std::vector<Scalar>>& X, const SymplecticData& omega, Truncation trunc);

}  // namespace fedq
