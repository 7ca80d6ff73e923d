#include "fedq/gutt.hpp"

#include <algorithm>
#include <optional>

#include <json.hpp>

#include "fedq/error.hpp"
#include "fedq/expr.hpp"

namespace fedq {

LieAlgebra::LieAlgebra(std::string name, std::vector<std::string> generators,
                       std::vector<std::vector<std::vector<Scalar>>> structure)
    : name_(std::move(name)), names_(std::move(generators)), c_(std::move(structure)) {
  const int n = dim();
  if (n < 1 || n > static_cast<int>(kMaxDim)) throw InputError("Lie algebra dimension must be between 1 and 6");
  if (static_cast<int>(c_.size()) != n) throw InputError("structure constants have the wrong shape");
  for (const auto& row : c_) {
    if (static_cast<int>(row.size()) != n) throw InputError("structure constants have the wrong shape");
    for (const auto& col : row)
      if (static_cast<int>(col.size()) != n) throw InputError("structure constants have the wrong shape");
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (names_[i] == names_[j]) throw InputError("duplicate generator name '" + names_[i] + "'");
  validate();
}

int LieAlgebra::index_of(std::string_view generator) const {
  for (int i = 0; i < dim(); ++i)
    if (names_[i] == generator) return i;
  return -1;
}

void LieAlgebra::validate() const {
  const int n = dim();
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (!(c(k, i, j) == -c(k, j, i)))
          throw MathError("structure constants are not antisymmetric in [" + names_[i] + ", " + names_[j] + "]");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          Scalar s;
          for (int m = 0; m < n; ++m)
            s += c(m, i, j) * c(l, m, k) + c(m, j, k) * c(l, m, i) + c(m, k, i) * c(l, m, j);
          if (!s.is_zero())
            throw MathError("structure constants violate the Jacobi identity at (" + names_[i] + ", " + names_[j] +
                            ", " + names_[k] + ")");
        }
}

LieAlgebra LieAlgebra::from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("Lie algebra file: ") + e.what());
  }
  try {
    int n = j.at("dim").get<int>();
    if (n < 1 || n > static_cast<int>(kMaxDim)) throw InputError("Lie algebra file: dim must be between 1 and 6");
    auto names = j.at("names").get<std::vector<std::string>>();
    if (static_cast<int>(names.size()) != n) throw InputError("Lie algebra file: need one name per generator");
    std::vector<std::vector<std::vector<Scalar>>> c(n, std::vector<std::vector<Scalar>>(n, std::vector<Scalar>(n)));
    std::size_t idx = 0;
    for (const auto& e : j.at("C")) {
      std::string where = "Lie algebra file: C[" + std::to_string(idx++) + "]";
      int a = e.at("i").get<int>(), b = e.at("j").get<int>(), k = e.at("k").get<int>();
      if (a < 0 || b < 0 || k < 0 || a >= n || b >= n || k >= n) throw InputError(where + ": index out of range");
      const auto& v = e.at("coeff");
      Scalar s;
      try {
        s = v.is_string() ? Scalar::parse(v.get<std::string>()) : Scalar(v.get<long>());
      } catch (const InputError& err) {
        throw InputError(where + ".coeff: " + err.what());
      }
      c[k][a][b] += s;
    }
    return LieAlgebra(j.value("name", std::string("file")), names, c);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("Lie algebra file: ") + e.what());
  }
}

std::string LieAlgebra::to_json() const {
  nlohmann::ordered_json j;
  j["name"] = name_;
  j["dim"] = dim();
  j["names"] = names_;
  auto arr = nlohmann::ordered_json::array();
  for (int i = 0; i < dim(); ++i)
    for (int jj = 0; jj < dim(); ++jj)
      for (int k = 0; k < dim(); ++k)
        if (!c(k, i, jj).is_zero()) arr.push_back({{"i", i}, {"j", jj}, {"k", k}, {"coeff", c(k, i, jj).str()}});
  j["C"] = arr;
  return j.dump(2);
}

namespace {

using Structure = std::vector<std::vector<std::vector<Scalar>>>;

Structure zero_structure(int n) { return Structure(n, std::vector<std::vector<Scalar>>(n, std::vector<Scalar>(n))); }

void set_bracket(Structure& c, int i, int j, int k, const Scalar& v) {
  c[k][i][j] = v;
  c[k][j][i] = -v;
}

}  // namespace

LieAlgebra builtin_sl2() {
  Structure c = zero_structure(3);
  set_bracket(c, 0, 1, 2, Scalar(1));   // [E, F] = H
  set_bracket(c, 2, 0, 0, Scalar(2));   // [H, E] = 2E
  set_bracket(c, 2, 1, 1, Scalar(-2));  // [H, F] = -2F
  return LieAlgebra("sl2", {"E", "F", "H"}, c);
}

LieAlgebra builtin_so3() {
  Structure c = zero_structure(3);
  set_bracket(c, 0, 1, 2, Scalar(1));
  set_bracket(c, 1, 2, 0, Scalar(1));
  set_bracket(c, 2, 0, 1, Scalar(1));
  return LieAlgebra("so3", {"sx", "sy", "sz"}, c);
}

LieAlgebra builtin_lie_algebra(std::string_view name) {
  if (name == "sl2") return builtin_sl2();
  if (name == "so3") return builtin_so3();
  throw InputError("unknown Lie algebra '" + std::string(name) + "' (built-ins: sl2, so3)");
}

// ---------------------------------------------------------------------------

NCElement NCElement::word(int dim, int order, const Word& w, const LambdaSeries& c) {
  NCElement e(dim, order, std::max(kDefaultMaxDegree, static_cast<int>(w.size())));
  e.add(w, c);
  return e;
}

NCElement NCElement::scalar(int dim, int order, const LambdaSeries& c) { return word(dim, order, {}, c); }

NCElement NCElement::parse(std::string_view text, const LieAlgebra& L, int order, int max_degree) {
  const int n = L.dim();
  auto tree = expr::parse(text);
  auto constant = [&](const LambdaSeries& s) {
    NCElement e(n, order, max_degree);
    e.add({}, s);
    return e;
  };
  auto constant_part = [](const NCElement& e) -> std::optional<LambdaSeries> {
    if (e.is_zero()) return LambdaSeries(e.order());
    if (e.terms().size() != 1 || !e.terms().begin()->first.empty()) return std::nullopt;
    return e.terms().begin()->second;
  };
  expr::Algebra<NCElement> alg;
  alg.number = [&](const mpq_class& q) { return constant(LambdaSeries(order, Scalar(q))); };
  alg.ident = [&](const std::string& name, std::size_t) {
    int i = L.index_of(name);
    if (i >= 0) {
      NCElement e(n, order, max_degree);
      e.add({static_cast<std::uint8_t>(i)}, LambdaSeries(order, Scalar(1)));
      return e;
    }
    if (params::is_reserved(name)) return constant(LambdaSeries::lambda_power(order, 1));
    return constant(LambdaSeries(order, Scalar::param(name)));
  };
  alg.divide = [&](const NCElement& a, const NCElement& b, std::size_t col) {
    auto c = constant_part(b);
    if (!c || (*c)[0].is_zero())
      throw expr::ParseError("only division by constants with nonzero λ^0 part is supported", col);
    return a.scaled(c->inverse());
  };
  alg.power = [&](const NCElement& a, long e, std::size_t col) {
    if (e < 0) throw expr::ParseError("negative powers are not supported in word sums", col);
    NCElement r = constant(LambdaSeries(order, Scalar(1)));
    for (long i = 0; i < e; ++i) r = r * a;
    return r;
  };
  return expr::evaluate(*tree, alg);
}

int NCElement::degree() const {
  int d = 0;
  for (const auto& [w, c] : terms_) d = std::max(d, static_cast<int>(w.size()));
  return d;
}

void NCElement::add(const Word& w, const LambdaSeries& c) {
  if (static_cast<int>(w.size()) > max_degree_)
    throw InputError("word of length " + std::to_string(w.size()) + " exceeds the degree bound " +
                     std::to_string(max_degree_));
  LambdaSeries s = c.truncated(order_);
  if (s.is_zero()) return;
  auto [it, fresh] = terms_.try_emplace(w, s);
  if (!fresh) {
    it->second += s;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void NCElement::check(const NCElement& o) const {
  if (dim_ != o.dim_ || order_ != o.order_) throw InternalError("mixing NC elements of different shapes");
}

NCElement NCElement::operator+(const NCElement& o) const {
  check(o);
  NCElement r = *this;
  r.max_degree_ = std::max(max_degree_, o.max_degree_);
  for (const auto& [w, c] : o.terms_) r.add(w, c);
  return r;
}

NCElement NCElement::operator-(const NCElement& o) const { return *this + (-o); }

NCElement NCElement::operator-() const { return scaled(LambdaSeries(order_, Scalar(-1))); }

NCElement NCElement::operator*(const NCElement& o) const {
  check(o);
  NCElement r(dim_, order_, std::max(max_degree_, o.max_degree_));
  for (const auto& [w1, c1] : terms_)
    for (const auto& [w2, c2] : o.terms_) {
      Word w = w1;
      w.insert(w.end(), w2.begin(), w2.end());
      r.add(w, c1 * c2);
    }
  return r;
}

NCElement NCElement::scaled(const LambdaSeries& c) const {
  NCElement r(dim_, order_, max_degree_);
  for (const auto& [w, s] : terms_) r.add(w, s * c.truncated(order_));
  return r;
}

bool NCElement::operator==(const NCElement& o) const {
  return dim_ == o.dim_ && order_ == o.order_ && terms_ == o.terms_;
}

namespace {

std::string coefficient_prefix(const LambdaSeries& c, bool bare) {
  if (bare && c == LambdaSeries(c.order(), Scalar(1))) return "";
  return "(" + c.str() + ")" + (bare ? "*" : "");
}

}  // namespace

std::string NCElement::str(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [w, c] : terms_) {
    std::string t = coefficient_prefix(c, !w.empty());
    for (std::size_t i = 0; i < w.size(); ++i) t += (i ? "*" : "") + names.at(w[i]);
    out += (out.empty() ? "" : " + ") + t;
  }
  return out;
}

// ---------------------------------------------------------------------------

SymPoly SymPoly::parse(std::string_view text, const LieAlgebra& L, int order) {
  const int n = L.dim();
  auto tree = expr::parse(text);
  auto constant = [&](const LambdaSeries& s) {
    SymPoly p(n, order);
    p.add(MultiIndex{}, s);
    return p;
  };
  expr::Algebra<SymPoly> alg;
  alg.number = [&](const mpq_class& q) { return constant(LambdaSeries(order, Scalar(q))); };
  alg.ident = [&](const std::string& name, std::size_t) {
    int i = L.index_of(name);
    if (i >= 0) {
      SymPoly p(n, order);
      p.add(MultiIndex::unit(i), LambdaSeries(order, Scalar(1)));
      return p;
    }
    if (params::is_reserved(name)) return constant(LambdaSeries::lambda_power(order, 1));
    return constant(LambdaSeries(order, Scalar::param(name)));
  };
  alg.divide = [&](const SymPoly& a, const SymPoly& b, std::size_t col) {
    if (b.degree() > 0 || b.is_zero() || b.terms().begin()->second[0].is_zero())
      throw expr::ParseError("only division by constants with nonzero λ^0 part is supported", col);
    return a.scaled(b.terms().begin()->second.inverse());
  };
  alg.power = [&](const SymPoly& a, long e, std::size_t col) {
    if (e < 0) throw expr::ParseError("negative powers are not supported in polynomials", col);
    SymPoly r = constant(LambdaSeries(order, Scalar(1)));
    for (long i = 0; i < e; ++i) r = r * a;
    return r;
  };
  return expr::evaluate(*tree, alg);
}

int SymPoly::degree() const {
  int d = 0;
  for (const auto& [a, c] : terms_) d = std::max(d, a.degree());
  return d;
}

void SymPoly::add(const MultiIndex& a, const LambdaSeries& c) {
  LambdaSeries s = c.truncated(order_);
  if (s.is_zero()) return;
  auto [it, fresh] = terms_.try_emplace(a, s);
  if (!fresh) {
    it->second += s;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

SymPoly SymPoly::operator+(const SymPoly& o) const {
  if (dim_ != o.dim_ || order_ != o.order_) throw InternalError("mixing polynomials of different shapes");
  SymPoly r = *this;
  for (const auto& [a, c] : o.terms_) r.add(a, c);
  return r;
}

SymPoly SymPoly::operator-(const SymPoly& o) const { return *this + o.scaled(LambdaSeries(order_, Scalar(-1))); }

SymPoly SymPoly::operator-() const { return scaled(LambdaSeries(order_, Scalar(-1))); }

SymPoly SymPoly::operator*(const SymPoly& o) const {
  if (dim_ != o.dim_ || order_ != o.order_) throw InternalError("mixing polynomials of different shapes");
  SymPoly r(dim_, order_);
  for (const auto& [a, c] : terms_)
    for (const auto& [b, d] : o.terms_) {
      if (a.degree() + b.degree() > static_cast<int>(kMaxExponent)) throw InputError("polynomial degree too large");
      r.add(a + b, c * d);
    }
  return r;
}

SymPoly SymPoly::scaled(const LambdaSeries& c) const {
  SymPoly r(dim_, order_);
  for (const auto& [a, s] : terms_) r.add(a, s * c.truncated(order_));
  return r;
}

SymPoly SymPoly::derivative(int i) const {
  SymPoly r(dim_, order_);
  for (const auto& [a, s] : terms_) {
    if (a[i] == 0) continue;
    MultiIndex b = a;
    b[i] -= 1;
    r.add(b, s.scaled(Scalar(mpq_class(a[i]))));
  }
  return r;
}

bool SymPoly::operator==(const SymPoly& o) const {
  return dim_ == o.dim_ && order_ == o.order_ && terms_ == o.terms_;
}

std::string SymPoly::str(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::string out;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [a, c] = *it;
    std::string mono;
    for (int i = 0; i < dim_; ++i) {
      if (!a[i]) continue;
      mono += (mono.empty() ? "" : "*") + names.at(static_cast<std::size_t>(i));
      if (a[i] > 1) mono += "^" + std::to_string(a[i]);
    }
    out += (out.empty() ? "" : " + ") + coefficient_prefix(c, !mono.empty()) + mono;
  }
  return out;
}

// ---------------------------------------------------------------------------

NCElement pbw_straighten(const NCElement& a, const LieAlgebra& L, RewriteOrder order) {
  if (a.dim() != L.dim()) throw InputError("element and Lie algebra dimensions differ");
  const int K = a.order();
  const LambdaSeries lam = LambdaSeries::lambda_power(K, 1);
  NCElement done(a.dim(), K, a.max_degree());
  std::map<Word, LambdaSeries> pending(a.terms().begin(), a.terms().end());
  auto push = [&](const Word& w, const LambdaSeries& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = pending.try_emplace(w, c);
    if (!fresh) it->second += c;
  };
  while (!pending.empty()) {
    auto node = pending.extract(std::prev(pending.end()));
    const Word& w = node.key();
    const LambdaSeries& c = node.mapped();
    if (c.is_zero()) continue;
    int pos = -1;
    for (int p = 0; p + 1 < static_cast<int>(w.size()); ++p) {
      if (w[p] > w[p + 1]) {
        pos = p;
        if (order == RewriteOrder::Leftmost) break;
      }
    }
    if (pos < 0) {
      done.add(w, c);
      continue;
    }
    Word swapped = w;
    std::swap(swapped[pos], swapped[pos + 1]);
    push(swapped, c);
    LambdaSeries lc = c * lam;
    if (lc.is_zero()) continue;
    for (int k = 0; k < L.dim(); ++k) {
      const Scalar& s = L.c(k, w[pos], w[pos + 1]);
      if (s.is_zero()) continue;
      Word shorter(w.begin(), w.begin() + pos);
      shorter.push_back(static_cast<std::uint8_t>(k));
      shorter.insert(shorter.end(), w.begin() + pos + 2, w.end());
      push(shorter, lc.scaled(s));
    }
  }
  return done;
}

namespace {

Word sorted_word(const MultiIndex& a, int dim) {
  Word w;
  for (int i = 0; i < dim; ++i) w.insert(w.end(), a[i], static_cast<std::uint8_t>(i));
  return w;
}

NCElement symmetrize_monomial(const MultiIndex& a, const LambdaSeries& c, int dim, int order, int max_degree) {
  NCElement out(dim, order, max_degree);
  Word w = sorted_word(a, dim);
  std::vector<Word> perms;
  do {
    perms.push_back(w);
  } while (std::next_permutation(w.begin(), w.end()));
  LambdaSeries share = c.scaled(Scalar(mpq_class(1, static_cast<long>(perms.size()))));
  for (const auto& p : perms) out.add(p, share);
  return out;
}

}  // namespace

NCElement symmetrize(const SymPoly& p, int max_degree) {
  NCElement out(p.dim(), p.order(), max_degree);
  for (const auto& [a, c] : p.terms()) out = out + symmetrize_monomial(a, c, p.dim(), p.order(), max_degree);
  return out;
}

SymPoly desymmetrize(const NCElement& a, const LieAlgebra& L) {
  SymPoly out(a.dim(), a.order());
  NCElement rest = pbw_straighten(a, L);
  while (!rest.is_zero()) {
    const int d = rest.degree();
    NCElement top(a.dim(), a.order(), a.max_degree());
    for (const auto& [w, c] : rest.terms()) {
      if (static_cast<int>(w.size()) != d) continue;
      MultiIndex m;
      for (auto g : w) m[g] += 1;
      out.add(m, c);
      top = top + symmetrize_monomial(m, c, a.dim(), a.order(), a.max_degree());
    }
    rest = rest - pbw_straighten(top, L);
    if (rest.degree() >= d && !rest.is_zero()) throw InternalError("desymmetrization did not lower the degree");
  }
  return out;
}

SymPoly gutt_mul(const SymPoly& f, const SymPoly& g, const LieAlgebra& L, int max_degree) {
  return desymmetrize(pbw_straighten(symmetrize(f, max_degree) * symmetrize(g, max_degree), L), L);
}

bool check_central(const NCElement& z, const LieAlgebra& L) {
  for (int i = 0; i < L.dim(); ++i) {
    NCElement x = NCElement::word(z.dim(), z.order(), {static_cast<std::uint8_t>(i)},
                                  LambdaSeries(z.order(), Scalar(1)));
    if (!pbw_straighten(z * x - x * z, L).is_zero()) return false;
  }
  return true;
}

NCElement builtin_casimir(const LieAlgebra& L, int order) {
  if (L.name() == "sl2") return NCElement::parse("E*F + H^2/2 + F*E", L, order);
  if (L.name() == "so3") return NCElement::parse("sx^2 + sy^2 + sz^2", L, order);
  throw InputError("no built-in Casimir for Lie algebra '" + L.name() + "'");
}

}  // namespace fedq
