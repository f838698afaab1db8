#include "coble/upoly.hpp"

#include "coble/errors.hpp"

#include <algorithm>

namespace coble {

UniPoly::UniPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

void UniPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

UniPoly UniPoly::monomial(const Rational& c, std::size_t degree) {
  std::vector<Rational> v(degree + 1);
  v[degree] = c;
  return UniPoly(std::move(v));
}

UniPoly UniPoly::from_roots(const std::vector<Rational>& roots) {
  UniPoly p = constant(1);
  for (const auto& r : roots) p = p * UniPoly({-r, Rational(1)});
  return p;
}

Rational UniPoly::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

UniPoly UniPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rational> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
  return UniPoly(std::move(d));
}

UniPoly UniPoly::monic() const {
  if (is_zero()) return {};
  return (Rational(1) / leading()) * *this;
}

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
  std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(i) + b.coeff(i);
  return UniPoly(std::move(v));
}

UniPoly operator-(const UniPoly& a) {
  std::vector<Rational> v(a.c_);
  for (auto& x : v) x = -x;
  return UniPoly(std::move(v));
}

UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + (-b); }

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> v(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  }
  return UniPoly(std::move(v));
}

UniPoly operator*(const Rational& s, const UniPoly& a) {
  std::vector<Rational> v(a.c_);
  for (auto& x : v) x *= s;
  return UniPoly(std::move(v));
}

void UniPoly::divmod(const UniPoly& a, const UniPoly& b, UniPoly& quotient, UniPoly& remainder) {
  if (b.is_zero()) fail(ErrorKind::InvalidInput, "polynomial division by zero");
  std::vector<Rational> r = a.c_;
  const std::size_t db = b.c_.size() - 1;
  std::vector<Rational> q(r.size() >= b.c_.size() ? r.size() - db : 0);
  const Rational inv_lead = Rational(1) / b.leading();
  for (std::size_t k = q.size(); k-- > 0;) {
    const Rational f = r[k + db] * inv_lead;
    q[k] = f;
    if (f.is_zero()) continue;
    for (std::size_t j = 0; j <= db; ++j) r[k + j] -= f * b.c_[j];
  }
  r.resize(std::min(r.size(), db));
  quotient = UniPoly(std::move(q));
  remainder = UniPoly(std::move(r));
}

UniPoly operator%(const UniPoly& a, const UniPoly& b) {
  UniPoly q, r;
  UniPoly::divmod(a, b, q, r);
  return r;
}

UniPoly UniPoly::compose_mod(const UniPoly& inner, const UniPoly& modulus) const {
  UniPoly acc;
  const UniPoly x = inner % modulus;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = (acc * x + constant(*it)) % modulus;
  return acc;
}

UniPoly poly_gcd(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() && b.is_zero()) fail(ErrorKind::InvalidInput, "gcd(0, 0) is undefined");
  UniPoly x = a, y = b;
  while (!y.is_zero()) {
    UniPoly r = x % y;
    x = std::move(y);
    y = r.monic();
  }
  return x.monic();
}

bool is_squarefree(const UniPoly& g) {
  if (g.degree() <= 0) return true;
  return poly_gcd(g, g.derivative()).degree() == 0;
}

}  // namespace coble
