#include "coble/etale.hpp"

#include "coble/errors.hpp"

namespace coble {

namespace {

void require_same(const EtaleElement& a, const EtaleElement& b) {
  if (!(a.modulus == b.modulus)) fail(ErrorKind::InvalidInput, "etale elements over different moduli");
}

}  // namespace

EtaleElement EtaleElement::make(const UniPoly& modulus, const UniPoly& value) {
  if (modulus.degree() < 1) fail(ErrorKind::InvalidInput, "etale modulus must have positive degree");
  UniPoly g = modulus.monic();
  UniPoly r = value % g;
  return {std::move(g), std::move(r)};
}

EtaleElement operator+(const EtaleElement& a, const EtaleElement& b) {
  require_same(a, b);
  return {a.modulus, a.residue + b.residue};
}

EtaleElement operator-(const EtaleElement& a, const EtaleElement& b) {
  require_same(a, b);
  return {a.modulus, a.residue - b.residue};
}

EtaleElement operator*(const EtaleElement& a, const EtaleElement& b) {
  require_same(a, b);
  return {a.modulus, (a.residue * b.residue) % a.modulus};
}

EtaleElement operator*(const Rational& s, const EtaleElement& a) { return {a.modulus, s * a.residue}; }

QMatrix multiplication_matrix(const EtaleElement& x) {
  const int n = x.modulus.degree();
  QMatrix m = QMatrix::Zero(n, n);
  UniPoly col = x.residue;
  const UniPoly t = UniPoly::monomial(1, 1);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) m(i, j) = col.coeff(static_cast<std::size_t>(i));
    col = (col * t) % x.modulus;
  }
  return m;
}

Rational etale_trace(const EtaleElement& x) {
  if (!is_squarefree(x.modulus)) fail(ErrorKind::DegenerateAlgebra, "modulus is not squarefree");
  return multiplication_matrix(x).trace();
}

std::vector<Rational> power_traces(const UniPoly& g, std::size_t count) {
  const UniPoly m = g.monic();
  const auto n = static_cast<std::size_t>(m.degree());
  // m = T^n + c_{n-1} T^{n-1} + ... + c_0
  std::vector<Rational> p(count);
  for (std::size_t k = 0; k < count; ++k) {
    if (k == 0) {
      p[0] = Rational(static_cast<long>(n));
      continue;
    }
    Rational acc = 0;
    for (std::size_t i = 1; i <= std::min(k, n); ++i) {
      const Rational& c = m.coeff(n - i);
      if (i < k)
        acc -= c * p[k - i];
      else
        acc -= c * static_cast<long>(k);  // i == k <= n
    }
    p[k] = acc;
  }
  return p;
}

}  // namespace coble
