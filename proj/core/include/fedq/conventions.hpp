#pragma once

// Sign and normalization switches that the source formulas leave open.
// Every report carries the hash of the active set.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace fedq {

struct Conventions {
  /// Sign of the Weyl-curvature perturbation Ω̃.
  int pert_sign = 1;
  /// Overall sign of μ relative to the linear part of γ.
  int mu_sign = 1;
  /// +1 reads Ω̃ = c·ω with ω = ½ω_{ij}dx^i∧dx^j; -1 reads the components as
  /// c·ω_{ij}dx^i∧dx^j, doubling the perturbation.
  int pert_half = 1;
  /// Sign in front of the curvature term of the cubic quantization formula.
  int curvature_sign = 1;

  static std::vector<std::string> names();
  int get(std::string_view name) const;
  /// Parses "name=+1" / "name=-1". Throws InputError on unknown names.
  void set(std::string_view assignment);
  /// Toggles that differ from the defaults, as "name=-1" strings.
  std::vector<std::string> flipped() const;
  /// FNV-1a over the canonical "name=value;" listing.
  std::uint64_t hash() const;
  std::string hash_hex() const;

  bool operator==(const Conventions&) const = default;
};

}  // namespace fedq
