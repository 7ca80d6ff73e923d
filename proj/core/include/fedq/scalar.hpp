#pragma once

// Exact scalars: quotients of Laurent polynomials with rational coefficients in
// a handful of named formal parameters (the sphere radius "r" in practice).

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace fedq {

inline constexpr std::size_t kMaxParams = 4;

namespace params {

/// Returns the id of `name`, registering it on first use. Thread-safe.
/// Throws InputError for reserved names ("lambda", "λ") or when more than
/// kMaxParams distinct names are requested.
int intern(std::string_view name);
std::optional<int> lookup(std::string_view name);
std::string name(int id);
bool is_reserved(std::string_view name);

}  // namespace params

/// Exponent vector over the registered parameters; exponents may be negative.
struct ParamMonomial {
  std::array<std::int16_t, kMaxParams> exp{};

  auto operator<=>(const ParamMonomial&) const = default;
  bool is_one() const;
  ParamMonomial operator*(const ParamMonomial& o) const;
  ParamMonomial inverse() const;
};

/// Laurent polynomial in the parameters with rational coefficients.
/// Terms are kept sorted by monomial, without zero coefficients.
class Poly {
 public:
  using Term = std::pair<ParamMonomial, mpq_class>;

  Poly() = default;
  explicit Poly(const mpq_class& c);
  Poly(const ParamMonomial& m, const mpq_class& c);

  static Poly param(int id, int power = 1);

  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;
  bool is_constant() const;
  bool is_single_term() const { return terms_.size() == 1; }
  const std::vector<Term>& terms() const { return terms_; }
  const Term& leading() const { return terms_.back(); }

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly scaled(const mpq_class& c) const;
  Poly shifted(const ParamMonomial& m) const;

  bool operator==(const Poly& o) const = default;

  /// Componentwise minimum exponent over all terms (zero poly -> all zeros).
  ParamMonomial min_exponents() const;
  std::string str() const;
  mpq_class evaluate(const std::map<int, mpq_class>& values) const;

 private:
  std::vector<Term> terms_;
  friend class Scalar;
};

/// Exact element of Q(params). Canonical form: when the denominator is a
/// single term it is folded into the numerator (denominator 1); otherwise
/// common monomial factors are cancelled, univariate gcds are removed and
/// the denominator's leading coefficient is 1. Equality is decided by
/// cross-multiplication, so canonical form is not relied upon for it.
class Scalar {
 public:
  Scalar() = default;
  Scalar(int v) : num_(mpq_class(v)) { if (v == 0) num_ = Poly(); }  // NOLINT: implicit on purpose
  Scalar(long v) : num_(mpq_class(v)) { if (v == 0) num_ = Poly(); }  // NOLINT
  Scalar(const mpq_class& v);                                          // NOLINT
  Scalar(Poly num, Poly den);

  static Scalar param(std::string_view name, int power = 1);
  static Scalar rational(long num, long den);
  /// Parses the text format, e.g. "3*r^2/2" or "(r^2+1)/(2*r)".
  static Scalar parse(std::string_view text);

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return den_.is_one() && num_.is_one(); }
  bool is_rational() const { return den_.is_one() && num_.is_constant(); }
  std::optional<mpq_class> as_rational() const;
  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }

  Scalar operator-() const;
  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  /// Throws MathError on division by zero.
  Scalar operator/(const Scalar& o) const;
  Scalar scaled(const mpq_class& c) const;
  Scalar pow(long e) const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);

  bool operator==(const Scalar& o) const;

  std::string str() const;
  /// Substitutes rational values for every parameter.
  mpq_class evaluate(const std::map<std::string, mpq_class>& values) const;

 private:
  Poly num_;
  Poly den_ = Poly(mpq_class(1));

  void normalize();
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace fedq
