#include "fedq/series.hpp"

#include "fedq/error.hpp"
#include "fedq/expr.hpp"

namespace fedq {

LambdaSeries::LambdaSeries(int order) {
  if (order < 0) throw InputError("negative λ order");
  coeffs_.resize(static_cast<std::size_t>(order) + 1);
}

LambdaSeries::LambdaSeries(int order, const Scalar& constant) : LambdaSeries(order) { coeffs_[0] = constant; }

LambdaSeries::LambdaSeries(int order, std::vector<Scalar> coeffs) : LambdaSeries(order) {
  for (std::size_t i = 0; i < coeffs.size() && i < coeffs_.size(); ++i) coeffs_[i] = std::move(coeffs[i]);
}

LambdaSeries LambdaSeries::lambda_power(int order, int k) {
  LambdaSeries s(order);
  if (k >= 0 && k <= order) s[k] = Scalar(1);
  return s;
}

LambdaSeries LambdaSeries::parse(std::string_view text, int order) {
  auto tree = expr::parse(text);
  expr::Algebra<LambdaSeries> alg;
  alg.number = [order](const mpq_class& q) { return LambdaSeries(order, Scalar(q)); };
  alg.ident = [order](const std::string& name, std::size_t) {
    if (params::is_reserved(name)) return lambda_power(order, 1);
    return LambdaSeries(order, Scalar::param(name));
  };
  alg.divide = [](const LambdaSeries& a, const LambdaSeries& b, std::size_t col) {
    if (b[0].is_zero()) throw expr::ParseError("divisor must have a nonzero constant term", col);
    return a * b.inverse();
  };
  alg.power = [](const LambdaSeries& a, long e, std::size_t col) {
    LambdaSeries base = a;
    if (e < 0) {
      if (a[0].is_zero()) throw expr::ParseError("cannot invert a series without constant term", col);
      base = a.inverse();
      e = -e;
    }
    LambdaSeries r(a.order(), Scalar(1));
    for (long i = 0; i < e; ++i) r = r * base;
    return r;
  };
  return expr::evaluate(*tree, alg);
}

bool LambdaSeries::is_zero() const {
  for (const auto& c : coeffs_)
    if (!c.is_zero()) return false;
  return true;
}

int LambdaSeries::valuation() const {
  for (std::size_t k = 0; k < coeffs_.size(); ++k)
    if (!coeffs_[k].is_zero()) return static_cast<int>(k);
  return -1;
}

void LambdaSeries::check(const LambdaSeries& o) const {
  if (order() != o.order())
    throw InputError("λ-order mismatch: " + std::to_string(order()) + " vs " + std::to_string(o.order()));
}

LambdaSeries LambdaSeries::operator-() const {
  LambdaSeries r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

LambdaSeries LambdaSeries::operator+(const LambdaSeries& o) const {
  LambdaSeries r = *this;
  return r += o;
}

LambdaSeries LambdaSeries::operator-(const LambdaSeries& o) const {
  LambdaSeries r = *this;
  return r -= o;
}

LambdaSeries& LambdaSeries::operator+=(const LambdaSeries& o) {
  check(o);
  for (std::size_t k = 0; k < coeffs_.size(); ++k)
    if (!o.coeffs_[k].is_zero()) coeffs_[k] += o.coeffs_[k];
  return *this;
}

LambdaSeries& LambdaSeries::operator-=(const LambdaSeries& o) {
  check(o);
  for (std::size_t k = 0; k < coeffs_.size(); ++k)
    if (!o.coeffs_[k].is_zero()) coeffs_[k] -= o.coeffs_[k];
  return *this;
}

LambdaSeries LambdaSeries::operator*(const LambdaSeries& o) const {
  check(o);
  LambdaSeries r(order());
  const std::size_t n = coeffs_.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; i + j < n; ++j)
      if (!o.coeffs_[j].is_zero()) r.coeffs_[i + j] += coeffs_[i] * o.coeffs_[j];
  }
  return r;
}

LambdaSeries LambdaSeries::scaled(const Scalar& c) const {
  LambdaSeries r = *this;
  for (auto& x : r.coeffs_)
    if (!x.is_zero()) x *= c;
  return r;
}

LambdaSeries LambdaSeries::shifted(int s) const {
  LambdaSeries r(order());
  for (int k = 0; k <= order(); ++k) {
    if (coeffs_[static_cast<std::size_t>(k)].is_zero()) continue;
    int t = k + s;
    if (t < 0) throw MathError("λ-shift would produce a negative power");
    if (t <= order()) r[t] = coeffs_[static_cast<std::size_t>(k)];
  }
  return r;
}

LambdaSeries LambdaSeries::truncated(int new_order) const {
  LambdaSeries r(new_order);
  for (int k = 0; k <= std::min(order(), new_order); ++k) r[k] = (*this)[k];
  return r;
}

LambdaSeries LambdaSeries::inverse() const {
  if (coeffs_[0].is_zero()) throw MathError("series has zero constant term and is not invertible");
  LambdaSeries r(order());
  Scalar inv0 = Scalar(1) / coeffs_[0];
  r[0] = inv0;
  for (int n = 1; n <= order(); ++n) {
    Scalar acc;
    for (int i = 1; i <= n; ++i)
      if (!(*this)[i].is_zero()) acc += (*this)[i] * r[n - i];
    r[n] = -(acc * inv0);
  }
  return r;
}

bool LambdaSeries::operator==(const LambdaSeries& o) const {
  if (order() != o.order()) return false;
  for (std::size_t k = 0; k < coeffs_.size(); ++k)
    if (!(coeffs_[k] == o.coeffs_[k])) return false;
  return true;
}

std::string LambdaSeries::str() const {
  std::string out;
  for (int k = 0; k <= order(); ++k) {
    const Scalar& c = (*this)[k];
    if (c.is_zero()) continue;
    std::string cs = c.str();
    bool negative = false;
    bool compound = !c.den().is_one() || c.num().terms().size() > 1;
    if (!compound && cs.front() == '-') {
      negative = true;
      cs = cs.substr(1);
    }
    std::string term;
    if (k == 0) {
      term = cs;
    } else {
      std::string lam = k == 1 ? "λ" : "λ^" + std::to_string(k);
      if (!compound && cs == "1") {
        term = lam;
      } else if (compound) {
        term = (c.den().is_one() ? "(" + cs + ")" : cs) + "*" + lam;
      } else {
        term = cs + "*" + lam;
      }
    }
    if (out.empty()) {
      out = (negative ? "-" : "") + term;
    } else {
      out += (negative ? " - " : " + ") + term;
    }
  }
  return out.empty() ? "0" : out;
}

std::ostream& operator<<(std::ostream& os, const LambdaSeries& s) { return os << s.str(); }

// ---------------------------------------------------------------------------

UnivariateJet::UnivariateJet(int order, std::vector<Scalar> coeffs) : UnivariateJet(order) {
  for (std::size_t i = 0; i < coeffs.size() && i < coeffs_.size(); ++i) coeffs_[i] = std::move(coeffs[i]);
}

UnivariateJet UnivariateJet::variable(int order) {
  UnivariateJet j(order);
  if (order >= 1) j[1] = Scalar(1);
  return j;
}

UnivariateJet UnivariateJet::constant(int order, const Scalar& c) {
  UnivariateJet j(order);
  j[0] = c;
  return j;
}

UnivariateJet UnivariateJet::sin(int order) {
  UnivariateJet j(order);
  mpz_class fact = 1;
  for (int k = 1; k <= order; ++k) {
    fact *= k;
    if (k % 2 == 1) j[k] = Scalar(mpq_class((k / 2) % 2 == 0 ? 1 : -1, 1) / mpq_class(fact));
  }
  return j;
}

UnivariateJet UnivariateJet::cos(int order) {
  UnivariateJet j(order);
  j[0] = Scalar(1);
  mpz_class fact = 1;
  for (int k = 1; k <= order; ++k) {
    fact *= k;
    if (k % 2 == 0) j[k] = Scalar(mpq_class((k / 2) % 2 == 0 ? 1 : -1, 1) / mpq_class(fact));
  }
  return j;
}

void UnivariateJet::check(const UnivariateJet& o) const {
  if (order() != o.order()) throw InputError("jet order mismatch");
}

UnivariateJet UnivariateJet::operator+(const UnivariateJet& o) const {
  check(o);
  UnivariateJet r = *this;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] += o.coeffs_[i];
  return r;
}

UnivariateJet UnivariateJet::operator-(const UnivariateJet& o) const {
  check(o);
  UnivariateJet r = *this;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] -= o.coeffs_[i];
  return r;
}

UnivariateJet UnivariateJet::operator*(const UnivariateJet& o) const {
  check(o);
  UnivariateJet r(order());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; i + j < coeffs_.size(); ++j)
      if (!o.coeffs_[j].is_zero()) r.coeffs_[i + j] += coeffs_[i] * o.coeffs_[j];
  }
  return r;
}

UnivariateJet UnivariateJet::scaled(const Scalar& c) const {
  UnivariateJet r = *this;
  for (auto& x : r.coeffs_) x *= c;
  return r;
}

UnivariateJet UnivariateJet::sqrt() const {
  if (!coeffs_[0].is_one()) throw MathError("jet_sqrt: constant term must be 1");
  UnivariateJet b(order());
  b[0] = Scalar(1);
  for (int n = 1; n <= order(); ++n) {
    Scalar acc = (*this)[n];
    for (int i = 1; i < n; ++i) acc -= b[i] * b[n - i];
    b[n] = acc.scaled(mpq_class(1, 2));
  }
  return b;
}

UnivariateJet UnivariateJet::inverse() const {
  if (coeffs_[0].is_zero()) throw MathError("jet has zero constant term and is not invertible");
  UnivariateJet r(order());
  Scalar inv0 = Scalar(1) / coeffs_[0];
  r[0] = inv0;
  for (int n = 1; n <= order(); ++n) {
    Scalar acc;
    for (int i = 1; i <= n; ++i) acc += (*this)[i] * r[n - i];
    r[n] = -(acc * inv0);
  }
  return r;
}

}  // namespace fedq
