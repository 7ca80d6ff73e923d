#pragma once

#include <vector>

#include "fedq/error.hpp"
#include "fedq/multi_index.hpp"

namespace fedq {

/// Constant Darboux form in the ordering (q1..qn, p1..pn).
/// Poisson tensor: ω^{q_a p_a} = +1, so {q,p} = 1. The lower matrix is
/// the inverse, ω^{ik} ω_{kj} = δ^i_j, which makes ω_{q_a p_a} = -1.
class SymplecticData {
 public:
  explicit SymplecticData(int dim) : dim_(dim) {
    if (dim <= 0 || dim % 2 != 0 || dim > kMaxDim) throw InputError("chart dimension must be even and at most 6");
  }

  int dim() const { return dim_; }
  int pairs() const { return dim_ / 2; }

  int upper(int i, int j) const {
    int n = pairs();
    if (i < n && j == i + n) return 1;
    if (i >= n && j == i - n) return -1;
    return 0;
  }
  int lower(int i, int j) const { return -upper(i, j); }

  /// The unique j with ω^{ij} ≠ 0.
  int partner(int i) const { return i < pairs() ? i + pairs() : i - pairs(); }

  bool operator==(const SymplecticData& o) const { return dim_ == o.dim_; }

 private:
  int dim_;
};

}  // namespace fedq
