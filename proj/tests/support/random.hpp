#pragma once

// Seeded generators for property tests.

#include <cstdint>
#include <random>
#include <vector>

#include "fedq/jet.hpp"
#include "fedq/weyl.hpp"

namespace fedq::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

  mpq_class rational(int range = 5) {
    int num = uniform(-range, range);
    int den = uniform(1, range);
    mpq_class q(num, den);
    q.canonicalize();
    return q;
  }

  /// Rational, or a small Laurent polynomial in r when `with_r` is set.
  Scalar scalar(bool with_r = false) {
    Scalar s(rational());
    if (with_r && coin(0.4)) s += Scalar::param("r", uniform(-2, 2)) * Scalar(rational());
    return s;
  }

  Scalar nonzero_scalar(bool with_r = false) {
    for (;;) {
      Scalar s = scalar(with_r);
      if (!s.is_zero()) return s;
    }
  }

  MultiIndex index(int dim, int max_degree) {
    MultiIndex m;
    int d = uniform(0, max_degree);
    for (int i = 0; i < d; ++i) m[uniform(0, dim - 1)] += 1;
    return m;
  }

  FunctionJet jet(int dim, int order, int weight, int terms = 6, bool with_r = false) {
    FunctionJet u(dim, order, weight);
    for (int i = 0; i < terms; ++i) {
      int k = uniform(0, order);
      u.add(index(dim, std::max(weight - 2 * k, 0)), k, scalar(with_r));
    }
    return u;
  }

  WeylSection section(int dim, Truncation t, int terms = 8, int max_form = 2, bool with_r = false) {
    SectionBuilder b(dim, t);
    for (int i = 0; i < terms; ++i) {
      int k = uniform(0, t.order);
      int left = std::max(t.weight - 2 * k, 0);
      MultiIndex a = index(dim, left);
      MultiIndex y = index(dim, left - a.degree());
      unsigned form = 0;
      int fd = uniform(0, max_form);
      for (int j = 0; j < fd; ++j) form |= 1u << uniform(0, dim - 1);
      b.add(WeylKey(a, y, form, k), scalar(with_r));
    }
    return b.finish();
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace fedq::testing

namespace fedq {
inline void PrintTo(const WeylSection& s, std::ostream* os) { *os << s.str(); }
inline void PrintTo(const FunctionJet& u, std::ostream* os) { *os << u.str({}); }
}  // namespace fedq
