#pragma once

// Truncated power series over Scalar: LambdaSeries in the deformation
// parameter and UnivariateJet in a single chart variable.

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "fedq/scalar.hpp"

namespace fedq {

/// a_0 + a_1 λ + ... + a_K λ^K. Always holds exactly K+1 coefficients.
class LambdaSeries {
 public:
  LambdaSeries() : coeffs_(1) {}
  explicit LambdaSeries(int order);
  LambdaSeries(int order, const Scalar& constant);
  LambdaSeries(int order, std::vector<Scalar> coeffs);

  /// λ^k at the given order (zero if k > order).
  static LambdaSeries lambda_power(int order, int k);
  /// Parses a polynomial in λ ("lambda" also accepted) with Scalar coefficients.
  static LambdaSeries parse(std::string_view text, int order);

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  const Scalar& operator[](int k) const { return coeffs_.at(static_cast<std::size_t>(k)); }
  Scalar& operator[](int k) { return coeffs_.at(static_cast<std::size_t>(k)); }
  const std::vector<Scalar>& coeffs() const { return coeffs_; }
  bool is_zero() const;
  /// Index of the first nonzero coefficient, or -1.
  int valuation() const;

  LambdaSeries operator-() const;
  LambdaSeries operator+(const LambdaSeries& o) const;
  LambdaSeries operator-(const LambdaSeries& o) const;
  /// Cauchy product truncated at K. Throws InputError on order mismatch.
  LambdaSeries operator*(const LambdaSeries& o) const;
  LambdaSeries& operator+=(const LambdaSeries& o);
  LambdaSeries& operator-=(const LambdaSeries& o);
  LambdaSeries scaled(const Scalar& c) const;
  /// Multiplies by λ^s (s may be negative when the low coefficients vanish).
  LambdaSeries shifted(int s) const;
  LambdaSeries truncated(int order) const;
  /// Multiplicative inverse mod λ^{K+1}. Throws MathError if a_0 = 0.
  LambdaSeries inverse() const;

  bool operator==(const LambdaSeries& o) const;

  std::string str() const;

 private:
  std::vector<Scalar> coeffs_;

  void check(const LambdaSeries& o) const;
};

std::ostream& operator<<(std::ostream& os, const LambdaSeries& s);

/// c_0 + c_1 t + ... + c_N t^N in one variable t.
class UnivariateJet {
 public:
  explicit UnivariateJet(int order) : coeffs_(static_cast<std::size_t>(order) + 1) {}
  UnivariateJet(int order, std::vector<Scalar> coeffs);

  static UnivariateJet variable(int order);
  static UnivariateJet constant(int order, const Scalar& c);
  /// Taylor series of sin t and cos t.
  static UnivariateJet sin(int order);
  static UnivariateJet cos(int order);

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  const Scalar& operator[](int k) const { return coeffs_.at(static_cast<std::size_t>(k)); }
  Scalar& operator[](int k) { return coeffs_.at(static_cast<std::size_t>(k)); }

  UnivariateJet operator+(const UnivariateJet& o) const;
  UnivariateJet operator-(const UnivariateJet& o) const;
  UnivariateJet operator*(const UnivariateJet& o) const;
  UnivariateJet scaled(const Scalar& c) const;
  /// Principal square root; the constant term must be 1.
  UnivariateJet sqrt() const;
  /// Requires a nonzero constant term.
  UnivariateJet inverse() const;

  bool operator==(const UnivariateJet& o) const { return coeffs_ == o.coeffs_; }

 private:
  std::vector<Scalar> coeffs_;

  void check(const UnivariateJet& o) const;
};

}  // namespace fedq
