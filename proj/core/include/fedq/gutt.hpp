#pragma once

// U(g_λ) with [ξ, η]_λ = λ[ξ, η]: noncommutative words, PBW straightening,
// symmetrization and the Gutt star product on polynomials over g*.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "fedq/multi_index.hpp"
#include "fedq/series.hpp"

namespace fedq {

class LieAlgebra {
 public:
  /// Throws MathError unless C is antisymmetric and satisfies Jacobi.
  LieAlgebra(std::string name, std::vector<std::string> generators,
             std::vector<std::vector<std::vector<Scalar>>> structure);

  const std::string& name() const { return name_; }
  int dim() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& generators() const { return names_; }
  int index_of(std::string_view generator) const;  // -1 if absent
  /// C^k_{ij}: [x_i, x_j] = Σ_k C^k_{ij} x_k.
  const Scalar& c(int k, int i, int j) const { return c_[k][i][j]; }

  void validate() const;

  /// {dim, names, C: [{i, j, k, coeff}]}.
  static LieAlgebra from_json(std::string_view text);
  std::string to_json() const;

 private:
  std::string name_;
  std::vector<std::string> names_;
  std::vector<std::vector<std::vector<Scalar>>> c_;  // [k][i][j]
};

/// sl(2) with [H, E] = 2E, [H, F] = -2F, [E, F] = H; generators E, F, H.
LieAlgebra builtin_sl2();
/// so(3) with [sx, sy] = sz and cyclic.
LieAlgebra builtin_so3();
/// "sl2" or "so3"; throws InputError otherwise.
LieAlgebra builtin_lie_algebra(std::string_view name);

using Word = std::vector<std::uint8_t>;

inline constexpr int kDefaultMaxDegree = 6;

/// Finite sum of words with λ-series coefficients.
class NCElement {
 public:
  NCElement() = default;
  NCElement(int dim, int order, int max_degree = kDefaultMaxDegree)
      : dim_(dim), order_(order), max_degree_(max_degree) {}

  static NCElement word(int dim, int order, const Word& w, const LambdaSeries& c);
  static NCElement scalar(int dim, int order, const LambdaSeries& c);
  /// Generators, λ, formal parameters, + - * / ^ (division by constants only).
  static NCElement parse(std::string_view text, const LieAlgebra& L, int order, int max_degree = kDefaultMaxDegree);

  int dim() const { return dim_; }
  int order() const { return order_; }
  int max_degree() const { return max_degree_; }
  const std::map<Word, LambdaSeries>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;

  void add(const Word& w, const LambdaSeries& c);
  NCElement operator+(const NCElement& o) const;
  NCElement operator-(const NCElement& o) const;
  NCElement operator-() const;
  /// Concatenation; throws InputError beyond the degree bound.
  NCElement operator*(const NCElement& o) const;
  NCElement scaled(const LambdaSeries& c) const;
  bool operator==(const NCElement& o) const;

  std::string str(const std::vector<std::string>& names) const;

 private:
  int dim_ = 0;
  int order_ = 0;
  int max_degree_ = kDefaultMaxDegree;
  std::map<Word, LambdaSeries> terms_;

  void check(const NCElement& o) const;
};

/// Commutative polynomial on g* with λ-series coefficients.
class SymPoly {
 public:
  SymPoly() = default;
  SymPoly(int dim, int order) : dim_(dim), order_(order) {}

  static SymPoly parse(std::string_view text, const LieAlgebra& L, int order);

  int dim() const { return dim_; }
  int order() const { return order_; }
  const std::map<MultiIndex, LambdaSeries>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;

  void add(const MultiIndex& a, const LambdaSeries& c);
  SymPoly operator+(const SymPoly& o) const;
  SymPoly operator-(const SymPoly& o) const;
  SymPoly operator-() const;
  SymPoly operator*(const SymPoly& o) const;
  SymPoly scaled(const LambdaSeries& c) const;
  SymPoly derivative(int i) const;
  bool operator==(const SymPoly& o) const;

  std::string str(const std::vector<std::string>& names) const;

 private:
  int dim_ = 0;
  int order_ = 0;
  std::map<MultiIndex, LambdaSeries> terms_;
};

enum class RewriteOrder { Leftmost, Rightmost };

/// Rewrites every word into nondecreasing generator order with
/// x_i x_j → x_j x_i + λ C^k_{ij} x_k.
NCElement pbw_straighten(const NCElement& a, const LieAlgebra& L, RewriteOrder order = RewriteOrder::Leftmost);

/// Monomials to the average of their word permutations.
NCElement symmetrize(const SymPoly& p, int max_degree = kDefaultMaxDegree);
/// Inverse of symmetrize on straightened elements, by back-substitution in
/// total degree.
SymPoly desymmetrize(const NCElement& a, const LieAlgebra& L);

SymPoly gutt_mul(const SymPoly& f, const SymPoly& g, const LieAlgebra& L, int max_degree = kDefaultMaxDegree);

/// True iff z x_i - x_i z straightens to zero for every generator.
bool check_central(const NCElement& z, const LieAlgebra& L);

/// The quadratic Casimir of a built-in algebra as an explicit word sum.
NCElement builtin_casimir(const LieAlgebra& L, int order);

}  // namespace fedq
