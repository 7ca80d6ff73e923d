#include "fedq/scalar.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>

#include "fedq/error.hpp"
#include "fedq/expr.hpp"

namespace fedq {

namespace params {

namespace {
std::mutex& registry_mutex() {
  static std::mutex m;
  return m;
}
std::vector<std::string>& registry() {
  static std::vector<std::string> names;
  return names;
}
}  // namespace

bool is_reserved(std::string_view name) { return name == "lambda" || name == "λ"; }

int intern(std::string_view name) {
  if (is_reserved(name)) throw InputError("'" + std::string(name) + "' is reserved for the deformation parameter");
  std::lock_guard lock(registry_mutex());
  auto& names = registry();
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return static_cast<int>(i);
  if (names.size() == kMaxParams) throw InputError("too many formal parameters (max " + std::to_string(kMaxParams) + ")");
  names.emplace_back(name);
  return static_cast<int>(names.size() - 1);
}

std::optional<int> lookup(std::string_view name) {
  std::lock_guard lock(registry_mutex());
  const auto& names = registry();
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return static_cast<int>(i);
  return std::nullopt;
}

std::string name(int id) {
  std::lock_guard lock(registry_mutex());
  return registry().at(static_cast<std::size_t>(id));
}

}  // namespace params

// ---------------------------------------------------------------------------
// ParamMonomial

bool ParamMonomial::is_one() const {
  return std::all_of(exp.begin(), exp.end(), [](auto e) { return e == 0; });
}

ParamMonomial ParamMonomial::operator*(const ParamMonomial& o) const {
  ParamMonomial r;
  for (std::size_t i = 0; i < kMaxParams; ++i) r.exp[i] = static_cast<std::int16_t>(exp[i] + o.exp[i]);
  return r;
}

ParamMonomial ParamMonomial::inverse() const {
  ParamMonomial r;
  for (std::size_t i = 0; i < kMaxParams; ++i) r.exp[i] = static_cast<std::int16_t>(-exp[i]);
  return r;
}

// ---------------------------------------------------------------------------
// Poly

Poly::Poly(const mpq_class& c) {
  if (c != 0) terms_.emplace_back(ParamMonomial{}, c);
}

Poly::Poly(const ParamMonomial& m, const mpq_class& c) {
  if (c != 0) terms_.emplace_back(m, c);
}

Poly Poly::param(int id, int power) {
  ParamMonomial m;
  m.exp.at(static_cast<std::size_t>(id)) = static_cast<std::int16_t>(power);
  return Poly(m, mpq_class(1));
}

bool Poly::is_one() const { return terms_.size() == 1 && terms_[0].first.is_one() && terms_[0].second == 1; }

bool Poly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one()); }

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

Poly Poly::operator+(const Poly& o) const {
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) return o;
  Poly r;
  r.terms_.reserve(terms_.size() + o.terms_.size());
  auto i = terms_.begin();
  auto j = o.terms_.begin();
  while (i != terms_.end() || j != o.terms_.end()) {
    if (j == o.terms_.end() || (i != terms_.end() && i->first < j->first)) {
      r.terms_.push_back(*i++);
    } else if (i == terms_.end() || j->first < i->first) {
      r.terms_.push_back(*j++);
    } else {
      mpq_class c = i->second + j->second;
      if (c != 0) r.terms_.emplace_back(i->first, std::move(c));
      ++i;
      ++j;
    }
  }
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::scaled(const mpq_class& c) const {
  if (c == 0) return Poly();
  Poly r = *this;
  for (auto& t : r.terms_) t.second *= c;
  return r;
}

Poly Poly::shifted(const ParamMonomial& m) const {
  Poly r = *this;
  for (auto& t : r.terms_) t.first = t.first * m;
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  if (terms_.empty() || o.terms_.empty()) return Poly();
  if (o.terms_.size() == 1) return shifted(o.terms_[0].first).scaled(o.terms_[0].second);
  if (terms_.size() == 1) return o.shifted(terms_[0].first).scaled(terms_[0].second);
  std::vector<Term> prod;
  prod.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) prod.emplace_back(a.first * b.first, a.second * b.second);
  std::sort(prod.begin(), prod.end(), [](const Term& x, const Term& y) { return x.first < y.first; });
  Poly r;
  for (auto& t : prod) {
    if (!r.terms_.empty() && r.terms_.back().first == t.first) {
      r.terms_.back().second += t.second;
    } else {
      if (!r.terms_.empty() && r.terms_.back().second == 0) r.terms_.pop_back();
      r.terms_.push_back(std::move(t));
    }
  }
  if (!r.terms_.empty() && r.terms_.back().second == 0) r.terms_.pop_back();
  return r;
}

ParamMonomial Poly::min_exponents() const {
  ParamMonomial m;
  if (terms_.empty()) return m;
  m = terms_[0].first;
  for (const auto& t : terms_)
    for (std::size_t i = 0; i < kMaxParams; ++i) m.exp[i] = std::min(m.exp[i], t.first.exp[i]);
  return m;
}

namespace {

std::string monomial_text(const ParamMonomial& m, int sign) {
  std::string out;
  int factors = 0;
  for (std::size_t i = 0; i < kMaxParams; ++i) {
    int e = m.exp[i] * sign;
    if (e <= 0) continue;
    if (!out.empty()) out += "*";
    out += params::name(static_cast<int>(i));
    if (e > 1) out += "^" + std::to_string(e);
    ++factors;
  }
  if (factors > 1 && sign < 0) out = "(" + out + ")";
  return out;
}

std::string term_text(const ParamMonomial& m, const mpq_class& c) {
  mpz_class p = c.get_num();
  mpz_class q = c.get_den();
  std::string pos = monomial_text(m, 1);
  std::string neg = monomial_text(m, -1);
  std::string out;
  if (pos.empty()) {
    out = p.get_str();
  } else if (p == 1) {
    out = pos;
  } else if (p == -1) {
    out = "-" + pos;
  } else {
    out = p.get_str() + "*" + pos;
  }
  if (q != 1 && !neg.empty()) {
    if (neg.front() == '(') neg = neg.substr(1, neg.size() - 2);
    out += "/(" + q.get_str() + "*" + neg + ")";
  } else if (q != 1) {
    out += "/" + q.get_str();
  } else if (!neg.empty()) {
    out += "/" + neg;
  }
  return out;
}

}  // namespace

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    std::string t = term_text(it->first, it->second);
    if (out.empty()) {
      out = t;
    } else if (t.front() == '-') {
      out += " - " + t.substr(1);
    } else {
      out += " + " + t;
    }
  }
  return out;
}

mpq_class Poly::evaluate(const std::map<int, mpq_class>& values) const {
  mpq_class sum = 0;
  for (const auto& [m, c] : terms_) {
    mpq_class v = c;
    for (std::size_t i = 0; i < kMaxParams; ++i) {
      int e = m.exp[i];
      if (e == 0) continue;
      auto it = values.find(static_cast<int>(i));
      if (it == values.end()) throw InputError("no value for parameter '" + params::name(static_cast<int>(i)) + "'");
      if (it->second == 0 && e < 0) throw MathError("parameter '" + params::name(static_cast<int>(i)) + "' evaluated to 0 in a denominator");
      for (int k = 0; k < std::abs(e); ++k) {
        if (e > 0) {
          v *= it->second;
        } else {
          v /= it->second;
        }
      }
    }
    sum += v;
  }
  return sum;
}

// ---------------------------------------------------------------------------
// Univariate gcd support

namespace {

using Dense = std::vector<mpq_class>;

void trim(Dense& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Returns (quotient, remainder).
std::pair<Dense, Dense> divmod(Dense a, const Dense& b) {
  trim(a);
  Dense q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0);
  while (a.size() >= b.size() && !a.empty()) {
    std::size_t shift = a.size() - b.size();
    mpq_class f = a.back() / b.back();
    q[shift] = f;
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
    trim(a);
  }
  return {q, a};
}

Dense gcd(Dense a, Dense b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    mpq_class lc = a.back();
    for (auto& c : a) c /= lc;
  }
  return a;
}

std::optional<int> single_variable(const Poly& a, const Poly& b) {
  int var = -1;
  for (const Poly* p : {&a, &b}) {
    for (const auto& t : p->terms()) {
      for (std::size_t i = 0; i < kMaxParams; ++i) {
        if (t.first.exp[i] == 0) continue;
        if (var >= 0 && var != static_cast<int>(i)) return std::nullopt;
        var = static_cast<int>(i);
      }
    }
  }
  if (var < 0) return std::nullopt;
  return var;
}

Dense to_dense(const Poly& p, int var) {
  Dense d;
  for (const auto& t : p.terms()) {
    auto e = static_cast<std::size_t>(t.first.exp[static_cast<std::size_t>(var)]);
    if (d.size() <= e) d.resize(e + 1, mpq_class(0));
    d[e] += t.second;
  }
  return d;
}

Poly from_dense(const Dense& d, int var) {
  Poly out;
  for (std::size_t e = 0; e < d.size(); ++e) {
    if (d[e] == 0) continue;
    ParamMonomial m;
    m.exp[static_cast<std::size_t>(var)] = static_cast<std::int16_t>(e);
    out = out + Poly(m, d[e]);
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Scalar

Scalar::Scalar(const mpq_class& v) : num_(v) {}

Scalar::Scalar(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw MathError("division by zero");
  normalize();
}

Scalar Scalar::param(std::string_view name, int power) {
  Scalar s;
  s.num_ = Poly::param(params::intern(name), power);
  return s;
}

Scalar Scalar::rational(long num, long den) {
  if (den == 0) throw MathError("division by zero");
  mpq_class q(num, den);
  q.canonicalize();
  return Scalar(q);
}

void Scalar::normalize() {
  if (num_.is_zero()) {
    den_ = Poly(mpq_class(1));
    return;
  }
  if (den_.is_single_term()) {
    const auto& [m, c] = den_.terms_[0];
    if (!(m.is_one() && c == 1)) {
      num_ = num_.shifted(m.inverse()).scaled(1 / c);
      den_ = Poly(mpq_class(1));
    }
    return;
  }
  ParamMonomial g = num_.min_exponents();
  ParamMonomial gd = den_.min_exponents();
  for (std::size_t i = 0; i < kMaxParams; ++i) g.exp[i] = std::min(g.exp[i], gd.exp[i]);
  num_ = num_.shifted(g.inverse());
  den_ = den_.shifted(g.inverse());
  if (auto var = single_variable(num_, den_)) {
    Dense dn = to_dense(num_, *var);
    Dense dd = to_dense(den_, *var);
    Dense g1 = gcd(dn, dd);
    if (g1.size() > 1) {
      num_ = from_dense(divmod(dn, g1).first, *var);
      den_ = from_dense(divmod(dd, g1).first, *var);
    }
  }
  mpq_class lc = den_.leading().second;
  if (lc != 1) {
    mpq_class inv = 1 / lc;
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }
  if (den_.is_single_term()) normalize();
}

std::optional<mpq_class> Scalar::as_rational() const {
  if (!is_rational()) return std::nullopt;
  if (num_.is_zero()) return mpq_class(0);
  return num_.terms()[0].second;
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  r.num_ = -r.num_;
  return r;
}

Scalar Scalar::operator+(const Scalar& o) const {
  if (den_.is_one() && o.den_.is_one()) {
    Scalar r;
    r.num_ = num_ + o.num_;
    return r;
  }
  if (den_ == o.den_) return Scalar(num_ + o.num_, den_);
  return Scalar(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
  if (den_.is_one() && o.den_.is_one()) {
    Scalar r;
    r.num_ = num_ * o.num_;
    return r;
  }
  return Scalar(num_ * o.num_, den_ * o.den_);
}

Scalar Scalar::operator/(const Scalar& o) const {
  if (o.is_zero()) throw MathError("division by zero");
  return Scalar(num_ * o.den_, den_ * o.num_);
}

Scalar Scalar::scaled(const mpq_class& c) const {
  Scalar r = *this;
  r.num_ = r.num_.scaled(c);
  if (r.num_.is_zero()) r.den_ = Poly(mpq_class(1));
  return r;
}

Scalar Scalar::pow(long e) const {
  if (e < 0) return Scalar(1) / pow(-e);
  Scalar result(1);
  Scalar base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

Scalar& Scalar::operator+=(const Scalar& o) { return *this = *this + o; }
Scalar& Scalar::operator-=(const Scalar& o) { return *this = *this - o; }
Scalar& Scalar::operator*=(const Scalar& o) { return *this = *this * o; }

bool Scalar::operator==(const Scalar& o) const {
  if (den_ == o.den_) return num_ == o.num_;
  return num_ * o.den_ == o.num_ * den_;
}

std::string Scalar::str() const {
  if (den_.is_one()) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

mpq_class Scalar::evaluate(const std::map<std::string, mpq_class>& values) const {
  std::map<int, mpq_class> by_id;
  for (const auto& [n, v] : values)
    if (auto id = params::lookup(n)) by_id[*id] = v;
  mpq_class d = den_.evaluate(by_id);
  if (d == 0) throw MathError("denominator vanishes at the given parameter values");
  return num_.evaluate(by_id) / d;
}

Scalar Scalar::parse(std::string_view text) {
  auto tree = expr::parse(text);
  expr::Algebra<Scalar> alg;
  alg.number = [](const mpq_class& q) { return Scalar(q); };
  alg.ident = [](const std::string& name, std::size_t col) {
    if (params::is_reserved(name)) throw expr::ParseError("'" + name + "' is not allowed in a scalar", col);
    return Scalar::param(name);
  };
  alg.divide = [](const Scalar& a, const Scalar& b, std::size_t col) {
    if (b.is_zero()) throw expr::ParseError("division by zero", col);
    return a / b;
  };
  alg.power = [](const Scalar& a, long e, std::size_t col) {
    if (e < 0 && a.is_zero()) throw expr::ParseError("division by zero", col);
    return a.pow(e);
  };
  return expr::evaluate(*tree, alg);
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

}  // namespace fedq
