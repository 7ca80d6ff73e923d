#include "fedq/jet.hpp"

#include <algorithm>

#include <json.hpp>

#include "fedq/error.hpp"
#include "fedq/expr.hpp"

namespace fedq {

MultiIndex MultiIndex::from(const std::vector<int>& v) {
  if (v.size() > kMaxDim) throw InputError("multi-index longer than the maximal dimension");
  MultiIndex m;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] < 0 || v[i] > kMaxExponent) throw InputError("multi-index entry out of range");
    m.e[i] = static_cast<std::uint8_t>(v[i]);
  }
  return m;
}

mpz_class MultiIndex::factorial() const {
  mpz_class f = 1;
  for (auto x : e)
    for (int i = 2; i <= x; ++i) f *= i;
  return f;
}

std::vector<int> MultiIndex::to_vector(int dim) const {
  return std::vector<int>(e.begin(), e.begin() + dim);
}

std::vector<MultiIndex> multi_indices_of_degree(int dim, int d) {
  std::vector<MultiIndex> out;
  MultiIndex cur;
  auto rec = [&](auto&& self, int i, int left) -> void {
    if (i == dim - 1) {
      cur[i] = static_cast<std::uint8_t>(left);
      out.push_back(cur);
      return;
    }
    for (int v = left; v >= 0; --v) {
      cur[i] = static_cast<std::uint8_t>(v);
      self(self, i + 1, left - v);
    }
    cur[i] = 0;
  };
  if (dim > 0) rec(rec, 0, d);
  return out;
}

// ---------------------------------------------------------------------------
// ScalarJet

ScalarJet ScalarJet::constant(int dim, int order, const Scalar& c) {
  ScalarJet j(dim, order);
  j.add(MultiIndex{}, c);
  return j;
}

ScalarJet ScalarJet::coordinate(int dim, int order, int i) {
  ScalarJet j(dim, order);
  j.add(MultiIndex::unit(i), Scalar(1));
  return j;
}

Scalar ScalarJet::coeff(const MultiIndex& a) const {
  auto it = terms_.find(a);
  return it == terms_.end() ? Scalar() : it->second;
}

void ScalarJet::add(const MultiIndex& a, const Scalar& c) {
  if (c.is_zero() || a.degree() > order_) return;
  auto [it, fresh] = terms_.try_emplace(a, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

ScalarJet ScalarJet::operator+(const ScalarJet& o) const {
  ScalarJet r(dim_, std::min(order_, o.order_));
  for (const auto& [a, c] : terms_) r.add(a, c);
  for (const auto& [a, c] : o.terms_) r.add(a, c);
  return r;
}

ScalarJet ScalarJet::operator-(const ScalarJet& o) const { return *this + (-o); }

ScalarJet ScalarJet::operator*(const ScalarJet& o) const {
  ScalarJet r(dim_, std::min(order_, o.order_));
  for (const auto& [a, c] : terms_)
    for (const auto& [b, d] : o.terms_)
      if (a.degree() + b.degree() <= r.order_) r.add(a + b, c * d);
  return r;
}

ScalarJet ScalarJet::scaled(const Scalar& c) const {
  ScalarJet r(dim_, order_);
  if (c.is_zero()) return r;
  for (const auto& [a, v] : terms_) r.terms_.emplace(a, v * c);
  return r;
}

ScalarJet ScalarJet::derivative(int i) const {
  ScalarJet r(dim_, std::max(order_ - 1, 0));
  for (const auto& [a, c] : terms_) {
    if (a[i] == 0) continue;
    MultiIndex b = a;
    b[i] -= 1;
    r.add(b, c.scaled(mpq_class(a[i])));
  }
  return r;
}

ScalarJet ScalarJet::truncated(int order) const {
  ScalarJet r(dim_, order);
  for (const auto& [a, c] : terms_) r.add(a, c);
  return r;
}

bool ScalarJet::operator==(const ScalarJet& o) const {
  if (dim_ != o.dim_) return false;
  return (*this - o).is_zero();
}

// ---------------------------------------------------------------------------
// FunctionJet

FunctionJet::FunctionJet(int dim, int order, int weight) : dim_(dim), order_(order), weight_(weight) {
  if (dim <= 0 || dim > kMaxDim) throw InputError("jet dimension out of range");
  if (order < 0 || weight < 0 || weight > kMaxExponent) throw InputError("jet truncation out of range");
}

FunctionJet FunctionJet::constant(int dim, int order, int weight, const LambdaSeries& c) {
  FunctionJet j(dim, order, weight);
  j.add(MultiIndex{}, c);
  return j;
}

FunctionJet FunctionJet::from_scalar_jet(const ScalarJet& s, int order, int weight) {
  FunctionJet j(s.dim(), order, weight);
  for (const auto& [a, c] : s.terms()) j.add(a, 0, c);
  return j;
}

FunctionJet FunctionJet::parse(std::string_view text, const std::vector<std::string>& coords, int order, int weight) {
  const int dim = static_cast<int>(coords.size());
  auto tree = expr::parse(text);
  expr::Algebra<FunctionJet> alg;
  alg.number = [&](const mpq_class& q) { return constant(dim, order, weight, LambdaSeries(order, Scalar(q))); };
  alg.ident = [&](const std::string& name, std::size_t) {
    for (int i = 0; i < dim; ++i) {
      if (coords[static_cast<std::size_t>(i)] == name) {
        FunctionJet j(dim, order, weight);
        j.add(MultiIndex::unit(i), 0, Scalar(1));
        return j;
      }
    }
    if (params::is_reserved(name)) return constant(dim, order, weight, LambdaSeries::lambda_power(order, 1));
    return constant(dim, order, weight, LambdaSeries(order, Scalar::param(name)));
  };
  alg.divide = [&](const FunctionJet& a, const FunctionJet& b, std::size_t col) {
    if (!b.is_constant() || b.constant_term()[0].is_zero())
      throw expr::ParseError("only division by constants with nonzero λ^0 part is supported", col);
    return a.scaled(b.constant_term().inverse());
  };
  alg.power = [&](const FunctionJet& a, long e, std::size_t col) {
    FunctionJet base = a;
    if (e < 0) {
      if (!a.is_constant() || a.constant_term()[0].is_zero())
        throw expr::ParseError("negative powers need a constant base", col);
      base = constant(dim, order, weight, a.constant_term().inverse());
      e = -e;
    }
    FunctionJet r = constant(dim, order, weight, LambdaSeries(order, Scalar(1)));
    for (long i = 0; i < e; ++i) r = r * base;
    return r;
  };
  return expr::evaluate(*tree, alg);
}

Scalar FunctionJet::coeff(const MultiIndex& a, int k) const {
  auto it = terms_.find(a);
  if (it == terms_.end() || k > order_) return Scalar();
  return it->second[k];
}

LambdaSeries FunctionJet::series(const MultiIndex& a) const {
  auto it = terms_.find(a);
  return it == terms_.end() ? LambdaSeries(order_) : it->second;
}

void FunctionJet::add(const MultiIndex& a, int k, const Scalar& c) {
  if (c.is_zero() || k > order_ || a.degree() + 2 * k > weight_) return;
  auto [it, fresh] = terms_.try_emplace(a, LambdaSeries(order_));
  it->second[k] += c;
  if (it->second.is_zero()) terms_.erase(it);
}

void FunctionJet::add(const MultiIndex& a, const LambdaSeries& s) {
  for (int k = 0; k <= std::min(order_, s.order()); ++k) add(a, k, s[k]);
}

bool FunctionJet::is_constant() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.first.degree() == 0; });
}

ScalarJet FunctionJet::lambda_coefficient(int k) const {
  ScalarJet j(dim_, weight_);
  for (const auto& [a, s] : terms_)
    if (k <= order_) j.add(a, s[k]);
  return j;
}

void FunctionJet::check(const FunctionJet& o) const {
  if (dim_ != o.dim_ || order_ != o.order_ || weight_ != o.weight_)
    throw InputError("function jets with different dimension or truncation");
}

void FunctionJet::prune() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->second.is_zero()) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
}

FunctionJet& FunctionJet::operator+=(const FunctionJet& o) {
  check(o);
  for (const auto& [a, s] : o.terms_) {
    auto [it, fresh] = terms_.try_emplace(a, s);
    if (!fresh) it->second += s;
  }
  prune();
  return *this;
}

FunctionJet FunctionJet::operator+(const FunctionJet& o) const {
  FunctionJet r = *this;
  return r += o;
}

FunctionJet FunctionJet::operator-(const FunctionJet& o) const {
  FunctionJet r = *this;
  return r += -o;
}

FunctionJet FunctionJet::operator*(const FunctionJet& o) const {
  check(o);
  FunctionJet r(dim_, order_, weight_);
  for (const auto& [a, s] : terms_) {
    for (const auto& [b, t] : o.terms_) {
      int d = a.degree() + b.degree();
      if (d > weight_) continue;
      MultiIndex ab = a + b;
      for (int i = 0; i <= order_; ++i) {
        if (s[i].is_zero()) continue;
        for (int j = 0; i + j <= order_ && d + 2 * (i + j) <= weight_; ++j)
          if (!t[j].is_zero()) r.add(ab, i + j, s[i] * t[j]);
      }
    }
  }
  return r;
}

FunctionJet FunctionJet::scaled(const Scalar& c) const {
  FunctionJet r(dim_, order_, weight_);
  if (c.is_zero()) return r;
  for (const auto& [a, s] : terms_) r.terms_.emplace(a, s.scaled(c));
  return r;
}

FunctionJet FunctionJet::scaled(const LambdaSeries& c) const {
  FunctionJet r(dim_, order_, weight_);
  for (const auto& [a, s] : terms_) r.add(a, s * c.truncated(order_));
  return r;
}

FunctionJet FunctionJet::shifted(int s) const {
  FunctionJet r(dim_, order_, weight_);
  for (const auto& [a, ser] : terms_)
    for (int k = 0; k <= order_; ++k)
      if (!ser[k].is_zero()) r.add(a, k + s, ser[k]);
  return r;
}

FunctionJet FunctionJet::derivative(int i) const {
  FunctionJet r(dim_, order_, weight_);
  for (const auto& [a, s] : terms_) {
    if (a[i] == 0) continue;
    MultiIndex b = a;
    b[i] -= 1;
    r.add(b, s.scaled(Scalar(mpq_class(a[i]))));
  }
  return r;
}

FunctionJet FunctionJet::truncated(int order, int weight) const {
  FunctionJet r(dim_, order, weight);
  for (const auto& [a, s] : terms_)
    for (int k = 0; k <= std::min(order, order_); ++k) r.add(a, k, s[k]);
  return r;
}

bool FunctionJet::operator==(const FunctionJet& o) const {
  if (dim_ != o.dim_ || order_ != o.order_ || weight_ != o.weight_) return false;
  return (*this - o).is_zero();
}

std::string FunctionJet::str(const std::vector<std::string>& coords) const {
  struct Item {
    int deg;
    MultiIndex a;
    int k;
    const Scalar* c;
  };
  std::vector<Item> items;
  for (const auto& [a, s] : terms_)
    for (int k = 0; k <= order_; ++k)
      if (!s[k].is_zero()) items.push_back({a.degree(), a, k, &s[k]});
  std::stable_sort(items.begin(), items.end(), [](const Item& x, const Item& y) {
    if (x.deg != y.deg) return x.deg < y.deg;
    if (x.a != y.a) return x.a > y.a;
    return x.k < y.k;
  });
  std::string out;
  for (const auto& it : items) {
    std::vector<std::string> factors;
    if (it.k == 1) factors.emplace_back("λ");
    if (it.k > 1) factors.push_back("λ^" + std::to_string(it.k));
    for (int i = 0; i < dim_; ++i) {
      int e = it.a[i];
      std::string name = i < static_cast<int>(coords.size()) ? coords[static_cast<std::size_t>(i)] : "x" + std::to_string(i + 1);
      if (e == 1) factors.push_back(name);
      if (e > 1) factors.push_back(name + "^" + std::to_string(e));
    }
    std::string cs = it.c->str();
    bool compound = !it.c->den().is_one() || it.c->num().terms().size() > 1;
    bool negative = false;
    if (!compound && cs.front() == '-') {
      negative = true;
      cs = cs.substr(1);
    }
    if (compound && it.c->den().is_one()) cs = "(" + cs + ")";
    std::string term;
    if (factors.empty()) {
      term = cs;
    } else {
      term = cs == "1" ? "" : cs + "*";
      for (std::size_t f = 0; f < factors.size(); ++f) term += (f ? "*" : "") + factors[f];
    }
    if (out.empty()) {
      out = (negative ? "-" : "") + term;
    } else {
      out += (negative ? " - " : " + ") + term;
    }
  }
  return out.empty() ? "0" : out;
}

std::string FunctionJet::to_json() const {
  nlohmann::ordered_json j;
  j["dim"] = dim_;
  j["order"] = order_;
  j["weight"] = weight_;
  auto terms = nlohmann::ordered_json::array();
  for (const auto& [a, s] : terms_) {
    for (int k = 0; k <= order_; ++k) {
      if (s[k].is_zero()) continue;
      nlohmann::ordered_json t;
      t["alpha"] = a.to_vector(dim_);
      t["k"] = k;
      t["coeff"] = s[k].str();
      terms.push_back(t);
    }
  }
  j["terms"] = terms;
  return j.dump(2);
}

FunctionJet FunctionJet::from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("jet file: ") + e.what());
  }
  try {
    FunctionJet out(j.at("dim").get<int>(), j.at("order").get<int>(), j.at("weight").get<int>());
    std::size_t idx = 0;
    for (const auto& t : j.at("terms")) {
      auto alpha = t.at("alpha").get<std::vector<int>>();
      if (static_cast<int>(alpha.size()) != out.dim_)
        throw InputError("jet file: terms[" + std::to_string(idx) + "].alpha has wrong length");
      int k = t.at("k").get<int>();
      if (k < 0) throw InputError("jet file: terms[" + std::to_string(idx) + "].k is negative");
      Scalar c;
      try {
        c = Scalar::parse(t.at("coeff").get<std::string>());
      } catch (const InputError& e) {
        throw InputError("jet file: terms[" + std::to_string(idx) + "].coeff: " + e.what());
      }
      out.add(MultiIndex::from(alpha), k, c);
      ++idx;
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("jet file: ") + e.what());
  }
}

FunctionJet poisson(const FunctionJet& u, const FunctionJet& v, const SymplecticData& omega) {
  FunctionJet r(u.dim(), u.order(), u.weight());
  for (int i = 0; i < omega.dim(); ++i) {
    int j = omega.partner(i);
    int w = omega.upper(i, j);
    r += (u.derivative(i) * v.derivative(j)).scaled(Scalar(w));
  }
  return r;
}

FunctionJet apply_vector_field(const std::vector<ScalarJet>& X, const FunctionJet& u) {
  FunctionJet r(u.dim(), u.order(), u.weight());
  for (std::size_t i = 0; i < X.size(); ++i)
    r += FunctionJet::from_scalar_jet(X[i], u.order(), u.weight()) * u.derivative(static_cast<int>(i));
  return r;
}

}  // namespace fedq
