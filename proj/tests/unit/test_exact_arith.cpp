#include "coble/errors.hpp"
#include "coble/etale.hpp"
#include "coble/exact.hpp"
#include "coble/lattice.hpp"
#include "coble/linalg.hpp"
#include "coble/upoly.hpp"

#include "doctest.h"

using namespace coble;

namespace {

Rational q(long n, long d = 1) { return Rational(n, d); }

// Cofactor expansion; exponential but independent of the Bareiss code.
Rational cofactor_det(const QMatrix& m) {
  const Eigen::Index n = m.rows();
  if (n == 1) return m(0, 0);
  Rational acc = 0;
  for (Eigen::Index j = 0; j < n; ++j) {
    QMatrix minor(n - 1, n - 1);
    for (Eigen::Index r = 1; r < n; ++r)
      for (Eigen::Index c = 0, cc = 0; c < n; ++c)
        if (c != j) minor(r - 1, cc++) = m(r, c);
    const Rational t = m(0, j) * cofactor_det(minor);
    acc += (j % 2 == 0) ? t : Rational(-t);
  }
  return acc;
}

QMatrix random_matrix(Rng& rng, Eigen::Index r, Eigen::Index c, long lo, long hi) {
  QMatrix m(r, c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = Rational(rng.uniform(lo, hi), rng.uniform(1, 4));
  return m;
}

}  // namespace

TEST_CASE("rational parsing and printing") {
  CHECK(to_string(parse_rational("6/4")) == "3/2");
  CHECK(to_string(parse_rational("-6/4")) == "-3/2");
  CHECK_THROWS_AS(parse_rational("6/-4"), MathError);
}

TEST_CASE("rational parse rejects junk") {
  CHECK_THROWS_AS(parse_rational("1/0"), MathError);
  CHECK_THROWS_AS(parse_rational("abc"), MathError);
  CHECK_THROWS_AS(parse_rational("1.5"), MathError);
  CHECK(to_string(parse_rational("-7")) == "-7");
  CHECK(to_string(parse_rational("0/5")) == "0");
}

TEST_CASE("exact field axioms on random rationals") {
  Rng rng(11);
  for (int t = 0; t < 200; ++t) {
    const Rational a(rng.uniform(-1000, 1000), rng.uniform(1, 1000));
    const Rational b(rng.uniform(-1000, 1000), rng.uniform(1, 1000));
    const Rational c(rng.uniform(-1000, 1000), rng.uniform(1, 1000));
    CHECK(to_string((a + b) + c) == to_string(a + (b + c)));
    CHECK(to_string(a * (b + c)) == to_string(a * b + a * c));
  }
}

TEST_CASE("rng is reproducible and within range") {
  Rng a(5), b(5);
  for (int i = 0; i < 100; ++i) {
    const auto x = a.uniform(-20, 20);
    CHECK(x == b.uniform(-20, 20));
    CHECK(x >= -20);
    CHECK(x <= 20);
  }
}

TEST_CASE("poly_gcd examples") {
  const UniPoly t2m1{q(-1), q(0), q(1)};
  const UniPoly tm1{q(-1), q(1)};
  CHECK(poly_gcd(t2m1, tm1) == tm1);
  const UniPoly g{q(-2), q(0), q(0), q(0), q(0), q(1)};
  CHECK(poly_gcd(g, g.derivative()) == UniPoly::constant(1));
  const UniPoly t{q(0), q(1)};
  CHECK(poly_gcd(UniPoly(), t) == t);
  CHECK_THROWS_AS(poly_gcd(UniPoly(), UniPoly()), MathError);
}

TEST_CASE("poly division identity") {
  Rng rng(3);
  for (int it = 0; it < 50; ++it) {
    std::vector<Rational> ac(7), bc(4);
    for (auto& x : ac) x = Rational(rng.uniform(-9, 9));
    for (auto& x : bc) x = Rational(rng.uniform(-9, 9));
    bc.back() = Rational(rng.uniform(1, 5));
    const UniPoly a(ac), b(bc);
    UniPoly qq, r;
    UniPoly::divmod(a, b, qq, r);
    CHECK(qq * b + r == a);
    CHECK(r.degree() < b.degree());
  }
}

TEST_CASE("etale_trace examples") {
  const UniPoly g{q(-2), q(0), q(0), q(0), q(0), q(1)};
  CHECK(etale_trace(EtaleElement::make(g, UniPoly::constant(1))) == 5);
  const UniPoly h{q(-3), q(0), q(1)};
  CHECK(etale_trace(EtaleElement::make(h, UniPoly{q(0), q(1)})) == 0);
  // T mod (T^5 - s1 T^4 + ...) has trace s1.
  const Rational s1 = q(7, 3);
  const UniPoly k{q(-1), q(2), q(-5), q(4), -s1, q(1)};
  CHECK(etale_trace(EtaleElement::make(k, UniPoly{q(0), q(1)})) == s1);
  const UniPoly sq{q(0), q(0), q(1)};
  CHECK_THROWS_AS(etale_trace(EtaleElement::make(sq, UniPoly::constant(1))), MathError);
}

TEST_CASE("etale_trace is Q-linear and matches power sums on split g") {
  Rng rng(17);
  for (int it = 0; it < 20; ++it) {
    std::vector<Rational> roots;
    while (roots.size() < 5) {
      const Rational r(rng.uniform(-12, 12), rng.uniform(1, 3));
      if (std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
    }
    const UniPoly g = UniPoly::from_roots(roots);
    const auto pt = power_traces(g, 9);
    for (unsigned k = 0; k <= 8; ++k) {
      Rational s = 0;
      for (const auto& r : roots) s += pow(r, k);
      if (k <= 4) CHECK(etale_trace(EtaleElement::make(g, UniPoly::monomial(1, k))) == s);
      CHECK(pt[k] == s);
    }
    std::vector<Rational> xc(5), yc(5);
    for (auto& c : xc) c = Rational(rng.uniform(-9, 9));
    for (auto& c : yc) c = Rational(rng.uniform(-9, 9));
    const auto x = EtaleElement::make(g, UniPoly(xc));
    const auto y = EtaleElement::make(g, UniPoly(yc));
    const Rational al(rng.uniform(-5, 5), 7), be(rng.uniform(-5, 5), 3);
    CHECK(etale_trace(al * x + be * y) == al * etale_trace(x) + be * etale_trace(y));
  }
}

TEST_CASE("kernel_basis examples") {
  CHECK(kernel_basis(QMatrix::Identity(3, 3)).empty());
  QMatrix row(1, 2);
  row << q(1), q(1);
  const auto k = kernel_basis(row);
  REQUIRE(k.size() == 1);
  CHECK(k[0](0) == -k[0](1));
  CHECK(k[0](0) != 0);
  // Trace vector of T^5 - 1.
  const UniPoly g{q(-1), q(0), q(0), q(0), q(0), q(1)};
  const auto t = power_traces(g, 5);
  QMatrix tm(1, 5);
  for (int i = 0; i < 5; ++i) tm(0, i) = t[static_cast<std::size_t>(i)];
  CHECK(tm(0, 0) == 5);
  for (int i = 1; i < 5; ++i) CHECK(tm(0, i) == 0);
  const auto kk = kernel_basis(tm);
  REQUIRE(kk.size() == 4);
  for (std::size_t j = 0; j < 4; ++j) {
    CHECK(kk[j](0) == 0);
    CHECK(kk[j](static_cast<Eigen::Index>(j + 1)) == 1);
  }
}

TEST_CASE("kernel vectors annihilate and have the right count") {
  Rng rng(23);
  for (int it = 0; it < 30; ++it) {
    const auto r = rng.uniform(1, 6), c = rng.uniform(1, 7), rk = rng.uniform(1, std::min(r, c));
    // Product of random factors has rank <= rk.
    const QMatrix m = random_matrix(rng, r, rk, -5, 5) * random_matrix(rng, rk, c, -5, 5);
    const auto k = kernel_basis(m);
    const Echelon e = row_reduce(m);
    CHECK(static_cast<Eigen::Index>(k.size()) == c - e.rank());
    for (const auto& v : k) CHECK((m * v).isZero());
    // The rank from elimination agrees with the modular rank.
    CHECK(modp::rank(clear_row_denominators(m)) == e.rank());
  }
}

TEST_CASE("determinant, inverse and solve against cofactor expansion") {
  Rng rng(29);
  for (int it = 0; it < 20; ++it) {
    const auto n = rng.uniform(1, 5);
    const QMatrix m = random_matrix(rng, n, n, -6, 6);
    const Rational d = determinant(m);
    CHECK(d == cofactor_det(m));
    if (d != 0) {
      CHECK((m * inverse(m)).isIdentity());
      QVector b(n);
      for (Eigen::Index i = 0; i < n; ++i) b(i) = Rational(rng.uniform(-9, 9));
      CHECK(m * solve(m, b) == b);
    }
  }
  QMatrix s(2, 2);
  s << q(1), q(2), q(2), q(4);
  CHECK(determinant(s) == 0);
  CHECK_THROWS_AS(inverse(s), MathError);
}

TEST_CASE("sampled_kernel matches the full reduction") {
  Rng rng(31);
  for (int it = 0; it < 10; ++it) {
    const QMatrix base = random_matrix(rng, 6, 9, -4, 4);
    const QMatrix tall = random_matrix(rng, 40, 6, -3, 3) * base;
    const ZMatrix z = clear_row_denominators(tall);
    const SampledKernel sk = sampled_kernel(z);
    const Echelon full = row_reduce(z);
    CHECK(sk.rank == full.rank());
    CHECK(sk.pivots == full.pivots);
    const auto fk = kernel_basis(full);
    REQUIRE(fk.size() == sk.kernel.size());
    for (std::size_t i = 0; i < fk.size(); ++i) CHECK(fk[i] == sk.kernel[i]);
  }
}

TEST_CASE("lll_reduce examples") {
  IntLattice orth;
  ZVector a(2), b(2);
  a << 1, 0;
  b << 0, 1;
  orth.basis = {a, b};
  CHECK(lll_reduce(orth).basis == orth.basis);

  IntLattice skew;
  ZVector c(2);
  c << 4, 1;
  skew.basis = {a, c};
  const auto red = lll_reduce(skew);
  REQUIRE(red.basis.size() == 2);
  for (const auto& v : red.basis) CHECK(inner(red, v, v) == 1);
  // Change of basis {(1,0),(0,1)} up to order and sign.
  CHECK(boost::multiprecision::abs(red.basis[0](0) * red.basis[1](1) - red.basis[0](1) * red.basis[1](0)) == 1);

  IntLattice one;
  ZVector six(1);
  six << 6;
  one.basis = {six};
  CHECK(lll_reduce(one).basis == one.basis);

  IntLattice dep;
  ZVector d(2);
  d << 2, 0;
  dep.basis = {a, d};
  CHECK_THROWS_AS(lll_reduce(dep), MathError);
  CHECK_THROWS_AS(lll_reduce(orth, Rational(1, 4)), MathError);
}

TEST_CASE("lll_reduce is unimodular and Lovasz-reduced") {
  Rng rng(37);
  const Rational delta(3, 4);
  for (int it = 0; it < 15; ++it) {
    const int n = static_cast<int>(rng.uniform(2, 6));
    IntLattice l;
    ZMatrix in(n, n);
    for (int i = 0; i < n; ++i) {
      ZVector v(n);
      for (int j = 0; j < n; ++j) v(j) = rng.uniform(-50, 50);
      l.basis.push_back(v);
      in.row(i) = v.transpose();
    }
    if (determinant(in).is_zero()) continue;
    if (it % 2 == 0) {
      QMatrix g = QMatrix::Identity(n, n);
      g(0, 0) = 3;
      g(0, 1) = g(1, 0) = Rational(1, 2);
      l.gram = g;
    }
    const auto out = lll_reduce(l, delta);
    ZMatrix o(n, n);
    for (int i = 0; i < n; ++i) o.row(i) = out.basis[static_cast<std::size_t>(i)].transpose();
    // Both directions integral <=> |det| equal and one direction integral.
    CHECK(boost::multiprecision::abs(determinant(o)) == boost::multiprecision::abs(determinant(in)));
    const QMatrix t = o.cast<Rational>() * inverse(in.cast<Rational>());
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) CHECK(denominator(t(i, j)) == 1);
    // Lovasz condition via an independent Gram-Schmidt in floating-free form.
    std::vector<QVector> star;
    const QMatrix g = l.gram ? *l.gram : QMatrix(QMatrix::Identity(n, n));
    std::vector<Rational> bn;
    std::vector<std::vector<Rational>> mu(n, std::vector<Rational>(n));
    for (int i = 0; i < n; ++i) {
      QVector v = out.basis[static_cast<std::size_t>(i)].cast<Rational>();
      QVector s = v;
      for (int j = 0; j < i; ++j) {
        mu[i][j] = (v.transpose() * g * star[j])(0, 0) / bn[j];
        s -= mu[i][j] * star[j];
      }
      star.push_back(s);
      bn.push_back((s.transpose() * g * s)(0, 0));
      for (int j = 0; j < i; ++j) CHECK(boost::multiprecision::abs(mu[i][j]) <= Rational(1, 2));
      if (i > 0) CHECK(bn[i] >= (delta - mu[i][i - 1] * mu[i][i - 1]) * bn[i - 1]);
    }
  }
}

TEST_CASE("sampled_kernel with large entries agrees with exact elimination") {
  Rng rng(41);
  for (int it = 0; it < 4; ++it) {
    ZMatrix base(8, 13), mix(30, 8);
    const Integer big = Integer(1) << 90;
    for (Eigen::Index i = 0; i < base.rows(); ++i)
      for (Eigen::Index j = 0; j < base.cols(); ++j) base(i, j) = big * rng.uniform(-999, 999) + rng.uniform(-999, 999);
    for (Eigen::Index i = 0; i < mix.rows(); ++i)
      for (Eigen::Index j = 0; j < mix.cols(); ++j) mix(i, j) = rng.uniform(-5, 5);
    // Make column 2 dependent on columns 0 and 1 so the pivot pattern is not trivial.
    base.col(2) = 3 * base.col(0) - base.col(1);
    const ZMatrix tall = mix * base;
    const SampledKernel sk = sampled_kernel(tall);
    const Echelon full = row_reduce(tall);
    CHECK(sk.rank == full.rank());
    CHECK(sk.pivots == full.pivots);
    const auto fk = kernel_basis(full);
    REQUIRE(fk.size() == sk.kernel.size());
    for (std::size_t i = 0; i < fk.size(); ++i) CHECK(fk[i] == sk.kernel[i]);
  }
}
