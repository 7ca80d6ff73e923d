#include "fedq/weyl.hpp"

#include <algorithm>
#include <bit>
#include <map>

#include <json.hpp>

#include "fedq/error.hpp"

namespace fedq {

namespace {

constexpr int alpha_shift(int i) { return 60 - 4 * i; }
constexpr int beta_shift(int i) { return 36 - 4 * i; }

int nibble_sum(std::uint64_t bits) {
  int s = 0;
  for (int i = 0; i < kMaxDim; ++i) s += static_cast<int>((bits >> (4 * i)) & 0xfu);
  return s;
}

/// Sign for moving dx^i to its sorted place from the far left of dx^S.
int insertion_sign(unsigned s, int i) {
  return (std::popcount(s & ((1u << i) - 1u)) % 2 == 0) ? 1 : -1;
}

}  // namespace

// ---------------------------------------------------------------------------
// WeylKey

WeylKey::WeylKey(const MultiIndex& alpha, const MultiIndex& beta, unsigned form, int k) {
  if (k < 0 || k > 255) throw InternalError("λ power out of range in WeylKey");
  std::uint64_t b = 0;
  for (int i = 0; i < kMaxDim; ++i) {
    if (alpha[i] > kMaxExponent || beta[i] > kMaxExponent) throw InputError("exponent exceeds 15");
    b |= static_cast<std::uint64_t>(alpha[i]) << alpha_shift(i);
    b |= static_cast<std::uint64_t>(beta[i]) << beta_shift(i);
  }
  b |= static_cast<std::uint64_t>(form & 0xffu) << 8;
  b |= static_cast<std::uint64_t>(k);
  bits_ = b;
}

MultiIndex WeylKey::alpha() const {
  MultiIndex m;
  for (int i = 0; i < kMaxDim; ++i) m[i] = static_cast<std::uint8_t>((bits_ >> alpha_shift(i)) & 0xfu);
  return m;
}

MultiIndex WeylKey::beta() const {
  MultiIndex m;
  for (int i = 0; i < kMaxDim; ++i) m[i] = static_cast<std::uint8_t>((bits_ >> beta_shift(i)) & 0xfu);
  return m;
}

int WeylKey::alpha_degree() const { return nibble_sum(bits_ >> alpha_shift(kMaxDim - 1)); }
int WeylKey::beta_degree() const { return nibble_sum((bits_ >> beta_shift(kMaxDim - 1)) & 0xffffffu); }
int WeylKey::form_degree() const { return std::popcount(form()); }

int wedge_sign(unsigned s, unsigned t) {
  if (s & t) return 0;
  int inversions = 0;
  for (unsigned rest = t; rest; rest &= rest - 1) {
    int j = std::countr_zero(rest);
    inversions += std::popcount(s >> (j + 1));
  }
  return inversions % 2 == 0 ? 1 : -1;
}

// ---------------------------------------------------------------------------
// SectionBuilder

void SectionBuilder::add(const WeylKey& key, const Scalar& c) {
  if (c.is_zero() || key.k() > trunc_.order || key.weight() > trunc_.weight) return;
  auto [it, fresh] = acc_.try_emplace(key.bits(), c);
  if (!fresh) it->second += c;
}

void SectionBuilder::add(const WeylSection& s) {
  for (const auto& [k, c] : s.entries()) add(k, c);
}

WeylSection SectionBuilder::finish() {
  WeylSection out(dim_, trunc_);
  out.entries_.reserve(acc_.size());
  for (auto& [bits, c] : acc_)
    if (!c.is_zero()) out.entries_.emplace_back(WeylKey(bits), std::move(c));
  acc_.clear();
  std::sort(out.entries_.begin(), out.entries_.end(),
            [](const WeylSection::Entry& a, const WeylSection::Entry& b) { return a.first < b.first; });
  return out;
}

// ---------------------------------------------------------------------------
// WeylSection

WeylSection::WeylSection(int dim, Truncation trunc) : dim_(dim), trunc_(trunc) {
  if (dim <= 0 || dim > kMaxDim || dim % 2 != 0) throw InputError("section dimension must be even and at most 6");
  if (trunc.order < 0 || trunc.weight < 0 || trunc.weight > kMaxExponent)
    throw InputError("section truncation out of range");
}

WeylSection WeylSection::from_function(const FunctionJet& u, Truncation trunc) {
  SectionBuilder b(u.dim(), trunc);
  for (const auto& [a, s] : u.terms())
    for (int k = 0; k <= s.order(); ++k)
      if (!s[k].is_zero()) b.add(WeylKey(a, MultiIndex{}, 0, k), s[k]);
  return b.finish();
}

WeylSection WeylSection::monomial(int dim, Truncation trunc, const MultiIndex& alpha, const MultiIndex& beta,
                                  unsigned form, int k, const Scalar& c) {
  SectionBuilder b(dim, trunc);
  b.add(WeylKey(alpha, beta, form, k), c);
  return b.finish();
}

WeylSection WeylSection::y(int dim, Truncation trunc, int i) {
  return monomial(dim, trunc, MultiIndex{}, MultiIndex::unit(i), 0, 0, Scalar(1));
}

Scalar WeylSection::coeff(const WeylKey& key) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), key,
                             [](const Entry& e, const WeylKey& k) { return e.first < k; });
  if (it == entries_.end() || it->first != key) return Scalar();
  return it->second;
}

WeylSection& WeylSection::operator+=(const WeylSection& o) {
  if (o.entries_.empty()) return *this;
  if (dim_ != o.dim_ || !(trunc_ == o.trunc_)) throw InputError("adding sections with different dimension or truncation");
  std::vector<Entry> merged;
  merged.reserve(entries_.size() + o.entries_.size());
  auto i = entries_.begin();
  auto j = o.entries_.begin();
  while (i != entries_.end() || j != o.entries_.end()) {
    if (j == o.entries_.end() || (i != entries_.end() && i->first < j->first)) {
      merged.push_back(std::move(*i++));
    } else if (i == entries_.end() || j->first < i->first) {
      merged.push_back(*j++);
    } else {
      Scalar c = i->second + j->second;
      if (!c.is_zero()) merged.emplace_back(i->first, std::move(c));
      ++i;
      ++j;
    }
  }
  entries_ = std::move(merged);
  return *this;
}

WeylSection& WeylSection::operator-=(const WeylSection& o) { return *this += -o; }

WeylSection WeylSection::operator+(const WeylSection& o) const {
  WeylSection r = *this;
  return r += o;
}

WeylSection WeylSection::operator-(const WeylSection& o) const {
  WeylSection r = *this;
  return r += -o;
}

WeylSection WeylSection::scaled(const Scalar& c) const {
  WeylSection r(dim_, trunc_);
  if (c.is_zero()) return r;
  r.entries_.reserve(entries_.size());
  for (const auto& [k, v] : entries_) r.entries_.emplace_back(k, v * c);
  return r;
}

WeylSection WeylSection::shifted(int s) const {
  SectionBuilder b(dim_, trunc_);
  for (const auto& [key, c] : entries_) {
    int k = key.k() + s;
    if (k < 0) throw MathError("λ-shift would produce a negative power");
    b.add(WeylKey(key.alpha(), key.beta(), key.form(), k), c);
  }
  return b.finish();
}

WeylSection WeylSection::truncated(Truncation t) const {
  WeylSection r(dim_, t);
  for (const auto& e : entries_)
    if (r.admits(e.first)) r.entries_.push_back(e);
  return r;
}

WeylSection WeylSection::fedosov_part(int d) const {
  WeylSection r(dim_, trunc_);
  for (const auto& e : entries_)
    if (e.first.fedosov_degree() == d) r.entries_.push_back(e);
  return r;
}

int WeylSection::min_fedosov_degree() const {
  int m = -1;
  for (const auto& e : entries_) {
    int d = e.first.fedosov_degree();
    if (m < 0 || d < m) m = d;
  }
  return m;
}

WeylSection WeylSection::form_part(int degree) const {
  WeylSection r(dim_, trunc_);
  for (const auto& e : entries_)
    if (e.first.form_degree() == degree) r.entries_.push_back(e);
  return r;
}

WeylSection WeylSection::y_part(int degree) const {
  WeylSection r(dim_, trunc_);
  for (const auto& e : entries_)
    if (e.first.beta_degree() == degree) r.entries_.push_back(e);
  return r;
}

bool WeylSection::operator==(const WeylSection& o) const {
  if (dim_ != o.dim_) return false;
  if (entries_.size() != o.entries_.size()) return false;
  for (std::size_t i = 0; i < entries_.size(); ++i)
    if (entries_[i].first != o.entries_[i].first || !(entries_[i].second == o.entries_[i].second)) return false;
  return true;
}

std::string WeylSection::str() const {
  if (entries_.empty()) return "0";
  std::string out;
  for (const auto& [key, c] : entries_) {
    std::string t = "(" + c.str() + ")";
    if (key.k() == 1) t += "*λ";
    if (key.k() > 1) t += "*λ^" + std::to_string(key.k());
    MultiIndex a = key.alpha();
    MultiIndex b = key.beta();
    for (int i = 0; i < dim_; ++i) {
      if (a[i]) t += "*x" + std::to_string(i + 1) + (a[i] > 1 ? "^" + std::to_string(a[i]) : "");
    }
    for (int i = 0; i < dim_; ++i) {
      if (b[i]) t += "*y" + std::to_string(i + 1) + (b[i] > 1 ? "^" + std::to_string(b[i]) : "");
    }
    std::string forms;
    for (int i = 0; i < dim_; ++i)
      if (key.form() & (1u << i)) forms += (forms.empty() ? "" : "∧") + std::string("dx") + std::to_string(i + 1);
    if (!forms.empty()) t += "*" + forms;
    out += (out.empty() ? "" : " + ") + t;
  }
  return out;
}

std::string WeylSection::to_json() const {
  nlohmann::ordered_json j;
  j["dim"] = dim_;
  j["order"] = trunc_.order;
  j["weight"] = trunc_.weight;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& [key, c] : entries_) {
    nlohmann::ordered_json e;
    e["alpha"] = key.alpha().to_vector(dim_);
    e["beta"] = key.beta().to_vector(dim_);
    std::vector<int> form;
    for (int i = 0; i < dim_; ++i)
      if (key.form() & (1u << i)) form.push_back(i);
    e["form"] = form;
    e["k"] = key.k();
    e["coeff"] = c.str();
    arr.push_back(e);
  }
  j["entries"] = arr;
  return j.dump(2);
}

WeylSection WeylSection::from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("section file: ") + e.what());
  }
  try {
    int dim = j.at("dim").get<int>();
    Truncation t{j.at("order").get<int>(), j.at("weight").get<int>()};
    SectionBuilder b(dim, t);
    WeylSection probe(dim, t);
    std::size_t idx = 0;
    for (const auto& e : j.at("entries")) {
      std::string where = "section file: entries[" + std::to_string(idx++) + "]";
      auto alpha = e.at("alpha").get<std::vector<int>>();
      auto beta = e.at("beta").get<std::vector<int>>();
      if (static_cast<int>(alpha.size()) != dim || static_cast<int>(beta.size()) != dim)
        throw InputError(where + ": index length differs from dim");
      unsigned form = 0;
      int sign = 1;
      for (int f : e.at("form").get<std::vector<int>>()) {
        if (f < 0 || f >= dim) throw InputError(where + ": form index out of range");
        if (form & (1u << f)) {
          sign = 0;
          break;
        }
        if (std::popcount(form >> (f + 1)) % 2) sign = -sign;
        form |= 1u << f;
      }
      Scalar c;
      try {
        c = Scalar::parse(e.at("coeff").get<std::string>());
      } catch (const InputError& err) {
        throw InputError(where + ".coeff: " + err.what());
      }
      WeylKey key(MultiIndex::from(alpha), MultiIndex::from(beta), form, e.at("k").get<int>());
      if (!probe.admits(key)) throw InputError(where + ": entry outside the declared truncation");
      if (sign != 0) b.add(key, c.scaled(mpq_class(sign)));
    }
    return b.finish();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("section file: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Moyal kernel

namespace {

struct Unpacked {
  MultiIndex a, b;
  unsigned form;
  int k;
  int w;
  const Scalar* c;
};

std::vector<Unpacked> unpack(const WeylSection& s) {
  std::vector<Unpacked> out;
  out.reserve(s.size());
  for (const auto& [key, c] : s.entries()) out.push_back({key.alpha(), key.beta(), key.form(), key.k(), key.weight(), &c});
  std::stable_sort(out.begin(), out.end(), [](const Unpacked& x, const Unpacked& y) { return x.w < y.w; });
  return out;
}

/// One (s_a, t_a) choice per Darboux pair a, contracting
/// ∂_q^s ∂_p^t on the left factor with ∂_p^s ∂_q^t on the right one.
struct Contraction {
  const SymplecticData* omega;
  const Unpacked* x;
  const Unpacked* y;
  int budget;
  bool commutator;
  const Scalar* product = nullptr;
  Scalar product_value;
  SectionBuilder* out;
  MultiIndex alpha;
  unsigned form;
  int sign;
  int base_k;

  void run(int pair, MultiIndex beta, int m, mpz_class num, mpz_class den) {
    if (pair == omega->pairs()) {
      if (commutator && m % 2 == 0) return;
      if (!product) {
        product_value = (*x->c) * (*y->c);
        product = &product_value;
      }
      mpq_class q(num * (commutator ? 2 : 1) * sign, den);
      q.canonicalize();
      int k = base_k + m - (commutator ? 1 : 0);
      out->add(WeylKey(alpha, beta, form, k), product->scaled(q));
      return;
    }
    const int qi = pair;
    const int pi = pair + omega->pairs();
    const int smax = std::min<int>(x->b[qi], y->b[pi]);
    const int tmax = std::min<int>(x->b[pi], y->b[qi]);
    for (int s = 0; s <= smax && m + s <= budget; ++s) {
      for (int t = 0; s + t <= budget - m && t <= tmax; ++t) {
        mpz_class n2 = num * falling(x->b[qi], s) * falling(x->b[pi], t) * falling(y->b[pi], s) * falling(y->b[qi], t);
        if (t % 2) n2 = -n2;
        mpz_class d2 = den;
        d2 <<= static_cast<mp_bitcnt_t>(s + t);
        for (int i = 2; i <= s; ++i) d2 *= i;
        for (int i = 2; i <= t; ++i) d2 *= i;
        MultiIndex nb = beta;
        nb[qi] = static_cast<std::uint8_t>(x->b[qi] - s + y->b[qi] - t);
        nb[pi] = static_cast<std::uint8_t>(x->b[pi] - t + y->b[pi] - s);
        run(pair + 1, nb, m + s + t, n2, d2);
      }
    }
  }
};

void check_compatible(const WeylSection& a, const WeylSection& b, const SymplecticData& omega) {
  if (a.dim() != b.dim() || a.dim() != omega.dim()) throw InputError("sections of different dimension");
}

WeylSection moyal_kernel(const WeylSection& A, const WeylSection& B, const SymplecticData& omega, Truncation out,
                         bool commutator) {
  check_compatible(A, B, omega);
  SectionBuilder acc(A.dim(), out);
  const int kmax = out.order + (commutator ? 1 : 0);
  const int wmax = out.weight + (commutator ? 2 : 0);
  auto xs = unpack(A);
  auto ys = unpack(B);
  for (const auto& x : xs) {
    if (x.w > wmax) break;
    for (const auto& y : ys) {
      if (x.w + y.w > wmax) break;
      if (x.k + y.k > kmax) continue;
      int sign = wedge_sign(x.form, y.form);
      if (sign == 0) continue;
      Contraction c;
      c.omega = &omega;
      c.x = &x;
      c.y = &y;
      c.budget = kmax - x.k - y.k;
      c.commutator = commutator;
      c.out = &acc;
      c.alpha = x.a + y.a;
      c.form = x.form | y.form;
      c.sign = sign;
      c.base_k = x.k + y.k;
      c.run(0, MultiIndex{}, 0, mpz_class(1), mpz_class(1));
    }
  }
  return acc.finish();
}

}  // namespace

WeylSection moyal_mul(const WeylSection& a, const WeylSection& b, const SymplecticData& omega) {
  return moyal_kernel(a, b, omega, a.trunc(), false);
}

WeylSection moyal_mul(const WeylSection& a, const WeylSection& b, const SymplecticData& omega, Truncation out) {
  return moyal_kernel(a, b, omega, out, false);
}

WeylSection commutator_over_lambda(const WeylSection& a, const WeylSection& b, const SymplecticData& omega,
                                   Truncation out) {
  return moyal_kernel(a, b, omega, out, true);
}

// ---------------------------------------------------------------------------
// δ, δ⁻¹, d, σ

WeylSection delta(const WeylSection& a) {
  SectionBuilder b(a.dim(), a.trunc());
  for (const auto& [key, c] : a.entries()) {
    MultiIndex beta = key.beta();
    unsigned form = key.form();
    for (int i = 0; i < a.dim(); ++i) {
      if (beta[i] == 0 || (form & (1u << i))) continue;
      MultiIndex nb = beta;
      nb[i] -= 1;
      int sign = insertion_sign(form, i);
      b.add(WeylKey(key.alpha(), nb, form | (1u << i), key.k()), c.scaled(mpq_class(sign * beta[i])));
    }
  }
  return b.finish();
}

WeylSection delta_inv(const WeylSection& a) {
  SectionBuilder b(a.dim(), a.trunc());
  for (const auto& [key, c] : a.entries()) {
    unsigned form = key.form();
    if (form == 0) continue;
    int pq = key.beta_degree() + key.form_degree();
    MultiIndex beta = key.beta();
    for (int i = 0; i < a.dim(); ++i) {
      if (!(form & (1u << i))) continue;
      MultiIndex nb = beta;
      nb[i] += 1;
      int sign = insertion_sign(form, i);
      b.add(WeylKey(key.alpha(), nb, form & ~(1u << i), key.k()), c.scaled(mpq_class(sign, pq)));
    }
  }
  return b.finish();
}

WeylSection exterior_d(const WeylSection& a) {
  SectionBuilder b(a.dim(), a.trunc());
  for (const auto& [key, c] : a.entries()) {
    MultiIndex alpha = key.alpha();
    unsigned form = key.form();
    for (int i = 0; i < a.dim(); ++i) {
      if (alpha[i] == 0 || (form & (1u << i))) continue;
      MultiIndex na = alpha;
      na[i] -= 1;
      int sign = insertion_sign(form, i);
      b.add(WeylKey(na, key.beta(), form | (1u << i), key.k()), c.scaled(mpq_class(sign * alpha[i])));
    }
  }
  return b.finish();
}

FunctionJet sigma(const WeylSection& a) {
  FunctionJet u(a.dim(), a.trunc().order, a.trunc().weight);
  for (const auto& [key, c] : a.entries())
    if (key.form() == 0 && key.beta_degree() == 0) u.add(key.alpha(), key.k(), c);
  return u;
}

FunctionJet sigma_of_product(const WeylSection& a, const WeylSection& b, const SymplecticData& omega) {
  check_compatible(a, b, omega);
  const Truncation t = a.trunc();
  const int n = omega.pairs();
  std::map<MultiIndex, std::vector<const WeylSection::Entry*>> by_beta;
  for (const auto& e : b.entries())
    if (e.first.form() == 0) by_beta[e.first.beta()].push_back(&e);
  FunctionJet out(a.dim(), t.order, t.weight);
  for (const auto& [ka, ca] : a.entries()) {
    if (ka.form() != 0) continue;
    MultiIndex beta = ka.beta();
    const int m = beta.degree();
    if (ka.k() + m > t.order) continue;
    MultiIndex swapped;
    mpz_class num = 1;
    for (int p = 0; p < n; ++p) {
      int s = beta[p];
      int tt = beta[p + n];
      swapped[p] = static_cast<std::uint8_t>(tt);
      swapped[p + n] = static_cast<std::uint8_t>(s);
      for (int i = 2; i <= s; ++i) num *= i;
      for (int i = 2; i <= tt; ++i) num *= i;
      if (tt % 2) num = -num;
    }
    auto it = by_beta.find(swapped);
    if (it == by_beta.end()) continue;
    mpz_class den = 1;
    den <<= static_cast<mp_bitcnt_t>(m);
    mpq_class q(num, den);
    q.canonicalize();
    MultiIndex alpha = ka.alpha();
    for (const auto* eb : it->second) {
      int k = ka.k() + eb->first.k() + m;
      MultiIndex ab = alpha + eb->first.alpha();
      if (k > t.order || ab.degree() + 2 * k > t.weight) continue;
      out.add(ab, k, (ca * eb->second).scaled(q));
    }
  }
  return out;
}

WeylSection lie_generator(const std::vector<std::vector<Scalar>>& X, const SymplecticData& omega, Truncation trunc) {
  const int dim = omega.dim();
  if (static_cast<int>(X.size()) != dim) throw InputError("vector field matrix has the wrong size");
  for (const auto& row : X)
    if (static_cast<int>(row.size()) != dim) throw InputError("vector field matrix has the wrong size");
  // M_{ij} = ω_{ik} X^k_j
  std::vector<std::vector<Scalar>> M(static_cast<std::size_t>(dim), std::vector<Scalar>(static_cast<std::size_t>(dim)));
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      int k = omega.partner(i);
      M[i][j] = X[k][j].scaled(mpq_class(omega.lower(i, k)));
    }
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j)
      if (!(M[i][j] == M[j][i])) throw MathError("linear vector field is not hamiltonian (ωX is not symmetric)");
  SectionBuilder b(dim, trunc);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      b.add(WeylKey(MultiIndex{}, MultiIndex::unit(i) + MultiIndex::unit(j), 0, 0), M[i][j].scaled(mpq_class(-1, 2)));
  return b.finish();
}

}  // namespace fedq
