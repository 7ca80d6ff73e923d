#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace fedq {

/// Largest supported chart dimension 2n.
inline constexpr int kMaxDim = 6;
/// Exponents are stored in 4 bits inside packed keys.
inline constexpr int kMaxExponent = 15;

struct MultiIndex {
  std::array<std::uint8_t, kMaxDim> e{};

  static MultiIndex unit(int i) {
    MultiIndex m;
    m.e[static_cast<std::size_t>(i)] = 1;
    return m;
  }
  static MultiIndex from(const std::vector<int>& v);

  int degree() const {
    int d = 0;
    for (auto x : e) d += x;
    return d;
  }
  int operator[](int i) const { return e[static_cast<std::size_t>(i)]; }
  std::uint8_t& operator[](int i) { return e[static_cast<std::size_t>(i)]; }

  MultiIndex operator+(const MultiIndex& o) const {
    MultiIndex r;
    for (std::size_t i = 0; i < e.size(); ++i) r.e[i] = static_cast<std::uint8_t>(e[i] + o.e[i]);
    return r;
  }
  /// True when every component of o is <= the matching component here.
  bool contains(const MultiIndex& o) const {
    for (std::size_t i = 0; i < e.size(); ++i)
      if (o.e[i] > e[i]) return false;
    return true;
  }
  MultiIndex operator-(const MultiIndex& o) const {
    MultiIndex r;
    for (std::size_t i = 0; i < e.size(); ++i) r.e[i] = static_cast<std::uint8_t>(e[i] - o.e[i]);
    return r;
  }
  /// α! = Π α_i!
  mpz_class factorial() const;
  std::vector<int> to_vector(int dim) const;

  auto operator<=>(const MultiIndex&) const = default;
};

/// All multi-indices in `dim` variables with total degree exactly d, in
/// lexicographically decreasing order.
std::vector<MultiIndex> multi_indices_of_degree(int dim, int d);

/// Binomial-style falling factorial n (n-1) ... (n-k+1).
inline long falling(int n, int k) {
  long r = 1;
  for (int i = 0; i < k; ++i) r *= (n - i);
  return r;
}

}  // namespace fedq
