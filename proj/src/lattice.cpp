#include "coble/lattice.hpp"

#include "coble/errors.hpp"

namespace coble {

Rational inner(const IntLattice& l, const ZVector& u, const ZVector& v) {
  Rational acc = 0;
  if (!l.gram) {
    for (Eigen::Index i = 0; i < u.size(); ++i) acc += Rational(u(i) * v(i));
    return acc;
  }
  const QMatrix& g = *l.gram;
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    if (u(i).is_zero()) continue;
    Rational row = 0;
    for (Eigen::Index j = 0; j < v.size(); ++j)
      if (!v(j).is_zero()) row += g(i, j) * Rational(v(j));
    acc += Rational(u(i)) * row;
  }
  return acc;
}

namespace {

Integer round_nearest(const Rational& q) {
  // floor(q + 1/2)
  const Rational s = q + Rational(1, 2);
  Integer n = numerator(s), d = denominator(s);
  Integer f = n / d;
  if (n.sign() < 0 && f * d != n) f -= 1;
  return f;
}

struct GramSchmidt {
  std::vector<std::vector<Rational>> mu;
  std::vector<Rational> b;  // squared norms of the orthogonalized vectors
};

GramSchmidt orthogonalize(const IntLattice& l) {
  const std::size_t n = l.basis.size();
  GramSchmidt gs;
  gs.mu.assign(n, std::vector<Rational>(n));
  gs.b.assign(n, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      Rational r = inner(l, l.basis[i], l.basis[j]);
      for (std::size_t k = 0; k < j; ++k) r -= gs.mu[i][k] * gs.mu[j][k] * gs.b[k];
      if (j < i)
        gs.mu[i][j] = r / gs.b[j];
      else
        gs.b[i] = r;
    }
    if (gs.b[i].sign() <= 0) fail(ErrorKind::NotABasis, "lattice basis is linearly dependent");
  }
  return gs;
}

}  // namespace

IntLattice lll_reduce(const IntLattice& input, const Rational& delta) {
  if (delta <= Rational(1, 4) || delta >= 1) fail(ErrorKind::InvalidInput, "LLL delta must lie in (1/4, 1)");
  IntLattice l = input;
  const std::size_t n = l.basis.size();
  if (n == 0) return l;
  GramSchmidt gs = orthogonalize(l);
  std::size_t k = 1;
  while (k < n) {
    for (std::size_t j = k; j-- > 0;) {
      const Integer q = round_nearest(gs.mu[k][j]);
      if (q.is_zero()) continue;
      l.basis[k] -= q * l.basis[j];
      for (std::size_t i = 0; i < j; ++i) gs.mu[k][i] -= Rational(q) * gs.mu[j][i];
      gs.mu[k][j] -= Rational(q);
    }
    const Rational& m = gs.mu[k][k - 1];
    if (gs.b[k] >= (delta - m * m) * gs.b[k - 1]) {
      ++k;
    } else {
      std::swap(l.basis[k], l.basis[k - 1]);
      gs = orthogonalize(l);
      k = k > 1 ? k - 1 : 1;
    }
  }
  return l;
}

}  // namespace coble
