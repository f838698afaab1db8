#include "coble/errors.hpp"
#include "coble/linalg.hpp"
#include "coble/monomials.hpp"
#include "coble/twist.hpp"

#include "doctest.h"

#include <algorithm>
#include <set>

using namespace coble;

namespace {

UniPoly poly(std::initializer_list<long> c) {
  std::vector<Rational> v;
  for (long x : c) v.emplace_back(x);
  return UniPoly(v);
}

GaloisFieldData trivial_field() { return {poly({0, 1}), {}, std::nullopt}; }

GaloisFieldData quadratic_field(long d) { return {poly({-d, 0, 1}), {poly({0, -1})}, std::nullopt}; }

// Minimal polynomial of 2cos(2pi/19); T -> T^2 - 2 generates the Galois group.
GaloisFieldData c9_field() {
  return {poly({1, 5, -10, -20, 15, 21, -7, -8, 1, 1}), {poly({-2, 0, 1})}, std::nullopt};
}

WE6Element first_of_order(int order) {
  for (const auto& g : weyl_group().elements())
    if (g.order() == order) return g;
  FAIL("no element of that order");
  return WE6Element::identity();
}

ZVector unit(int i) {
  ZVector z = ZVector::Zero(kGammaRank);
  z(i) = 1;
  return z;
}

QMatrix column(const QVector& v) {
  QMatrix m(v.size(), 1);
  m.col(0) = v;
  return m;
}

// ----- gammas of a configuration with coordinates in L, straight from the
// minors and the conic determinant -----

using LPoint = std::array<EtaleElement, 3>;

EtaleElement lconst(const UniPoly& f, const Rational& c) { return EtaleElement::make(f, UniPoly::constant(c)); }

EtaleElement det3(const LPoint& a, const LPoint& b, const LPoint& d) {
  return a[0] * (b[1] * d[2] - b[2] * d[1]) - a[1] * (b[0] * d[2] - b[2] * d[0]) + a[2] * (b[0] * d[1] - b[1] * d[0]);
}

// Laplace expansion along the first remaining row.
EtaleElement laplace(const std::vector<std::vector<EtaleElement>>& m, std::size_t row, unsigned used, const UniPoly& f) {
  if (row == m.size()) return lconst(f, 1);
  EtaleElement acc = lconst(f, 0);
  int sgn = 1;
  for (std::size_t c = 0; c < m.size(); ++c) {
    if (used & (1U << c)) continue;
    const EtaleElement term = m[row][c] * laplace(m, row + 1, used | (1U << c), f);
    acc = sgn > 0 ? acc + term : acc - term;
    sgn = -sgn;
  }
  return acc;
}

std::vector<EtaleElement> gammas_over_l(const std::array<LPoint, 6>& p, const UniPoly& f) {
  auto m = [&](int i, int j, int k) {
    std::array<int, 3> s{i, j, k};
    std::sort(s.begin(), s.end());
    return det3(p[static_cast<std::size_t>(s[0] - 1)], p[static_cast<std::size_t>(s[1] - 1)], p[static_cast<std::size_t>(s[2] - 1)]);
  };
  std::vector<std::vector<EtaleElement>> conic;
  for (const auto& q : p) conic.push_back({q[0] * q[0], q[1] * q[1], q[2] * q[2], q[0] * q[1], q[0] * q[2], q[1] * q[2]});
  const EtaleElement d2 = laplace(conic, 0, 0, f);
  std::vector<EtaleElement> out;
  for (const auto& s : enumerate_symbols()) {
    const auto& a = s.idx;
    if (s.kind == GammaSymbol::Kind::TripleSplit)
      out.push_back(m(a[0], a[1], a[2]) * m(a[3], a[4], a[5]) * d2);
    else
      out.push_back(m(a[0], a[2], a[3]) * m(a[1], a[2], a[3]) * m(a[2], a[4], a[5]) * m(a[3], a[4], a[5]) *
                    m(a[4], a[0], a[1]) * m(a[5], a[0], a[1]));
  }
  return out;
}

// p1 = (1 : T : 2) and p2 its conjugate, p3..p6 rational.
std::array<LPoint, 6> conjugate_pair_config(const UniPoly& f, Rng& rng) {
  auto c = [&](long x) { return lconst(f, Rational(x)); };
  std::array<LPoint, 6> p;
  p[0] = {c(1), EtaleElement::make(f, poly({0, 1})), c(2)};
  p[1] = {c(1), EtaleElement::make(f, poly({0, -1})), c(2)};
  for (std::size_t i = 2; i < 6; ++i) p[i] = {c(rng.uniform(-9, 9)), c(rng.uniform(-9, 9)), c(rng.uniform(-9, 9))};
  return p;
}

QMatrix basis_part(const std::vector<EtaleElement>& g, int n) {
  const auto& idx = default_gamma_data().basis.indices;
  QMatrix y(kGammaRank, n);
  for (int a = 0; a < kGammaRank; ++a)
    for (int j = 0; j < n; ++j) y(a, j) = g[static_cast<std::size_t>(idx[static_cast<std::size_t>(a)])].residue.coeff(static_cast<std::size_t>(j));
  return y;
}

PowerSums l_power_sums(const std::vector<EtaleElement>& g) {
  std::array<Rational, 5> s;
  for (std::size_t k = 0; k < 5; ++k) {
    EtaleElement acc = lconst(g[0].modulus, 0);
    for (const auto& x : g) {
      EtaleElement p = x * x;
      for (std::size_t e = 0; e < k; ++e) p = p * x * x;
      acc = acc + p;
    }
    REQUIRE(acc.residue.degree() <= 0);
    s[k] = acc.residue.coeff(0);
  }
  return {s[0], s[1], s[2], s[3], s[4]};
}

ZVector primitive_coords(const QVector& t) {
  ZVector z = primitive_integer(t);
  normalize_sign(z);
  return z;
}

const TwistedModel& trivial_model() {
  static const TwistedModel m = restrict_cubics(build_descent_space(trivial_field(), {}));
  return m;
}

}  // namespace

TEST_CASE("field validation") {
  CHECK_NOTHROW(validate_field(trivial_field()));
  CHECK_NOTHROW(validate_field(quadratic_field(5)));
  CHECK_NOTHROW(validate_field(c9_field()));

  auto bad = [](GaloisFieldData f) {
    try {
      validate_field(f);
    } catch (const MathError& e) {
      return e.kind() == ErrorKind::InvalidInput;
    }
    return false;
  };
  CHECK(bad({poly({-5, 0, 2}), {poly({0, -1})}, std::nullopt}));                  // not monic
  CHECK(bad({UniPoly({Rational(-1, 2), 0, 1}), {poly({0, -1})}, std::nullopt}));  // not integral
  CHECK(bad({poly({1, 2, 1}), {poly({0, -1})}, std::nullopt}));                   // (T+1)^2
  CHECK(bad({poly({-5, 0, 1}), {poly({1, 1})}, std::nullopt}));                   // T+1 is no automorphism
  CHECK(bad({poly({-5, 0, 1}), {}, std::nullopt}));                               // group too small
  CHECK(bad({poly({-5, 0, 1}), {poly({0, -1})}, std::vector<UniPoly>{poly({1}), poly({2})}}));
  CHECK_FALSE(bad({poly({-5, 0, 1}), {poly({0, -1})}, std::vector<UniPoly>{poly({1}), UniPoly({Rational(1, 2), Rational(1, 2)})}}));
}

TEST_CASE("automorphism matrix") {
  const auto f = c9_field();
  const QMatrix s = automorphism_matrix(f.modulus, f.automorphisms[0]);
  // S is a ring automorphism: S applied to coordinates of T^2 equals the
  // coordinates of a(T)^2.
  QVector t2 = QVector::Zero(9);
  t2(2) = 1;
  const UniPoly a2 = (f.automorphisms[0] * f.automorphisms[0]) % f.modulus;
  const QVector img = s * t2;
  for (int j = 0; j < 9; ++j) CHECK(img(j) == a2.coeff(static_cast<std::size_t>(j)));
  // Order 9 as a matrix.
  QMatrix p = QMatrix::Identity(9, 9);
  for (int k = 1; k <= 9; ++k) {
    p = s * p;
    CHECK((p == QMatrix::Identity(9, 9)) == (k == 9));
  }
}

TEST_CASE("basis action is a homomorphism") {
  const auto& data = default_gamma_data();
  const auto& w = weyl_group();
  Rng rng(3);
  for (int k = 0; k < 10; ++k) {
    const auto& g = w.elements()[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(w.size()) - 1))];
    const auto& h = w.elements()[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(w.size()) - 1))];
    const QMatrix mg = basis_action(w.gamma_action(g), data.basis);
    const QMatrix mh = basis_action(w.gamma_action(h), data.basis);
    CHECK(basis_action(w.gamma_action(g * h), data.basis) == mg * mh);
  }
}

TEST_CASE("trivial twist") {
  const auto& data = default_gamma_data();
  const TwistedModel& m = trivial_model();
  REQUIRE(m.basis.size() == 10);
  for (int k = 0; k < kGammaRank; ++k) CHECK(m.basis[static_cast<std::size_t>(k)] == column(to_rational(unit(k))));

  // Same row space as the sampled relations.
  REQUIRE(m.cubics.size() == 30);
  QMatrix a(30, 220), both(60, 220);
  for (int i = 0; i < 30; ++i) {
    a.row(i) = m.cubics[static_cast<std::size_t>(i)].transpose();
    both.row(i) = a.row(i);
    both.row(30 + i) = data.cubic.kernel[static_cast<std::size_t>(i)].transpose();
  }
  CHECK(rank(a) == 30);
  CHECK(rank(both) == 30);

  // Transported samples vanish, and the recovered invariants agree.
  const auto samples = sample_gammas(99, 4);
  for (const auto& g : samples) {
    const ZVector t = primitive_coords(basis_coordinates(g, data.basis));
    CHECK(on_model(m, t));
    const auto r = recover_surface(m, t);
    CHECK(weighted_equal(r.clebsch, clebsch_from_power_sums(power_sums(g))));
    // Small naive configurations often carry an Eckardt point, which shows
    // up as a repeated zero of the pentahedral polynomial.
    CHECK(r.equation.has_value() != r.failure.has_value());
    if (r.failure) {
      CHECK(*r.failure == ErrorKind::MultipleZeroes);
      const UniPoly p = pentahedral_polynomial(sigma_from_clebsch(r.clebsch));
      CHECK(poly_gcd(p, p.derivative()).degree() > 0);
    } else {
      CHECK(weighted_equal(clebsch_from_sigma(r.equation->sigma), r.clebsch));
    }
  }
  CHECK_FALSE(on_model(m, unit(0) + unit(3)));
}

TEST_CASE("recover_surface errors") {
  const TwistedModel& m = trivial_model();
  try {
    recover_surface(m, ZVector::Zero(kGammaRank));
    FAIL("expected ZeroVector");
  } catch (const MathError& e) {
    CHECK(e.kind() == ErrorKind::ZeroVector);
  }
  try {
    recover_surface(m, unit(0) + unit(3));
    FAIL("expected InvalidInput");
  } catch (const MathError& e) {
    CHECK(e.kind() == ErrorKind::InvalidInput);
  }
}

TEST_CASE("quadratic twist with a conjugate pair of points") {
  const auto field = quadratic_field(5);
  const RhoAssignment rho{transposition(1, 2)};
  CHECK(extends_to_homomorphism(field, rho));
  const TwistedModel model = build_descent_space(field, rho);
  REQUIRE(model.basis.size() == 10);
  for (const auto& b : model.basis) {
    CHECK(satisfies_descent(field, rho, b));
    for (Eigen::Index i = 0; i < b.size(); ++i) CHECK(denominator(b(i)) == 1);
  }
  CHECK(rank([&] {
          QMatrix s(10, 20);
          for (int k = 0; k < 10; ++k)
            for (int a = 0; a < 10; ++a)
              for (int j = 0; j < 2; ++j) s(k, a * 2 + j) = model.basis[static_cast<std::size_t>(k)](a, j);
          return s;
        }()) == 10);

  const TwistedModel restricted = restrict_cubics(model);
  REQUIRE(restricted.cubics.size() == 30);

  Rng rng(11);
  for (int trial = 0; trial < 3; ++trial) {
    const auto g = gammas_over_l(conjugate_pair_config(field.modulus, rng), field.modulus);
    const QMatrix y = basis_part(g, 2);
    CHECK(satisfies_descent(field, rho, y));
    // The full 40 agree with the basis expansion.
    const auto expanded = gammas_at(model, y);
    for (int i = 0; i < kGammaCount; ++i) CHECK(expanded[static_cast<std::size_t>(i)] == g[static_cast<std::size_t>(i)]);

    const auto coords = model_coordinates(model, y);
    REQUIRE(coords.has_value());
    // y is integral, so the saturated basis gives integral coordinates.
    for (Eigen::Index i = 0; i < coords->size(); ++i) CHECK(denominator((*coords)(i)) == 1);
    const ZVector t = primitive_coords(*coords);
    CHECK(on_model(restricted, t));
    const auto r = recover_surface(restricted, t);
    CHECK(weighted_equal(r.clebsch, clebsch_from_power_sums(l_power_sums(g))));
  }
  // The point is not on the untwisted model in general: the unconjugated
  // descent fails for the same y.
  const auto g = gammas_over_l(conjugate_pair_config(field.modulus, rng), field.modulus);
  CHECK_FALSE(satisfies_descent(field, {WE6Element::identity()}, basis_part(g, 2)));
}

TEST_CASE("non-homomorphism is rejected") {
  const auto field = quadratic_field(5);
  const WE6Element g3 = first_of_order(3);
  CHECK_FALSE(extends_to_homomorphism(field, {g3}));
  try {
    build_descent_space(field, {g3});
    FAIL("expected DescentDimensionMismatch");
  } catch (const MathError& e) {
    CHECK(e.kind() == ErrorKind::DescentDimensionMismatch);
  }
  try {
    build_descent_space(field, {});
    FAIL("expected InvalidInput");
  } catch (const MathError& e) {
    CHECK(e.kind() == ErrorKind::InvalidInput);
  }
}

TEST_CASE("reduce_basis") {
  const auto field = trivial_field();
  const TwistedModel base = build_descent_space(field, {});
  const TwistedModel same = reduce_basis(base, field);
  CHECK(same.basis == base.basis);

  // A unimodular but skewed basis of the same space.
  std::vector<QMatrix> skew = base.basis;
  for (int k = 1; k < kGammaRank; ++k) skew[static_cast<std::size_t>(k)] += Rational(37 * k) * skew[0] + Rational(k) * skew[static_cast<std::size_t>(k - 1)];
  const TwistedModel skewed = with_basis(base, skew);
  const TwistedModel reduced = reduce_basis(skewed, field);
  auto max_norm = [](const TwistedModel& m) {
    double x = 0;
    for (const auto& b : m.basis) x = std::max(x, embedding_norm(m, b));
    return x;
  };
  CHECK(max_norm(reduced) < max_norm(skewed));
  CHECK(max_norm(reduced) == doctest::Approx(1.0));
  for (const auto& b : reduced.basis) CHECK(model_coordinates(base, b).has_value());

  // Quadratic field: the reduced basis spans the same space and never has a
  // larger maximal norm.
  const auto qf = quadratic_field(5);
  const TwistedModel q = build_descent_space(qf, {transposition(1, 2)});
  const TwistedModel qr = reduce_basis(q, qf);
  CHECK(max_norm(qr) <= max_norm(q));
  CHECK_NOTHROW(with_basis(q, qr.basis));
}

TEST_CASE("with_basis rejects vectors outside the space") {
  const auto qf = quadratic_field(5);
  const TwistedModel q = build_descent_space(qf, {transposition(1, 2)});
  std::vector<QMatrix> b = q.basis;
  b[0] = QMatrix::Zero(kGammaRank, 2);
  b[0](0, 1) = 1;
  if (!satisfies_descent(qf, {transposition(1, 2)}, b[0])) CHECK_THROWS_AS(with_basis(q, b), MathError);
  b = q.basis;
  b[1] = b[0];
  CHECK_THROWS_AS(with_basis(q, b), MathError);
}

TEST_CASE("point_search") {
  const auto& data = default_gamma_data();
  const TwistedModel& m = trivial_model();
  CHECK(point_search(m, 0).empty());

  // Plant a known configuration as a basis vector so it sits at height 1.
  const auto samples = sample_gammas(5, 1);
  const ZVector planted = primitive_coords(basis_coordinates(samples[0], data.basis));
  std::vector<QMatrix> basis{column(to_rational(planted))};
  int skip = 0;
  while (planted(skip) == 0) ++skip;
  for (int k = 0; k < kGammaRank; ++k)
    if (k != skip) basis.push_back(column(to_rational(unit(k))));
  const TwistedModel planted_model = restrict_cubics(with_basis(m, basis));

  const auto p1 = point_search(planted_model, 1);
  CHECK(std::find(p1.begin(), p1.end(), unit(0)) != p1.end());
  CHECK(std::is_sorted(p1.begin(), p1.end(), [](const ZVector& x, const ZVector& y) {
    return std::lexicographical_compare(x.data(), x.data() + x.size(), y.data(), y.data() + y.size());
  }));
  for (const auto& t : p1) {
    CHECK(on_model(planted_model, t));
    CHECK(primitive_coords(to_rational(t)) == t);
  }
  CHECK(point_search(planted_model, 1, 4, 77) == p1);

  const auto p2 = point_search(planted_model, 2, 3);
  for (const auto& t : p1) CHECK(std::find(p2.begin(), p2.end(), t) != p2.end());
  for (const auto& t : p2) CHECK(on_model(planted_model, t));

  // Extra cubics sum_i t_i^2 t_j leave no real nonzero solutions.
  TwistedModel sabotaged = planted_model;
  const auto idx = monomial_index(kGammaRank, 3);
  for (int j = 0; j < kGammaRank; ++j) {
    QVector c = QVector::Zero(220);
    for (int i = 0; i < kGammaRank; ++i) {
      Exponent e(kGammaRank, 0);
      e[static_cast<std::size_t>(i)] += 2;
      e[static_cast<std::size_t>(j)] += 1;
      c(static_cast<Eigen::Index>(idx.at(e))) += 1;
    }
    sabotaged.cubics.push_back(c);
  }
  CHECK(point_search(sabotaged, 2).empty());
}

TEST_CASE("cyclic field of degree nine") {
  const auto field = c9_field();
  const WE6Element g = first_of_order(9);
  const RhoAssignment rho{g};
  CHECK(extends_to_homomorphism(field, rho));
  CHECK_FALSE(extends_to_homomorphism(field, {first_of_order(2)}));
  const TwistedModel model = build_descent_space(field, rho);
  for (const auto& b : model.basis) CHECK(satisfies_descent(field, rho, b));
  const TwistedModel r = restrict_cubics(reduce_basis(model, field));
  CHECK(r.cubics.size() == 30);

  const auto pts = point_search(r, 1);
  int recovered = 0;
  for (const auto& t : pts) {
    const auto s = recover_surface(r, t);
    if (!s.equation) continue;
    ++recovered;
    CHECK(weighted_equal(clebsch_from_sigma(s.equation->sigma), s.clebsch));
    CHECK(s.equation->g.degree() == 5);
  }
  CHECK(recovered > 0);
}

TEST_CASE("saturation") {
  // Integral vectors of the descent space have integral coordinates.
  const auto field = c9_field();
  const RhoAssignment rho{first_of_order(9)};
  const TwistedModel model = build_descent_space(field, rho);
  Rng rng(8);
  for (int k = 0; k < 5; ++k) {
    QVector t(kGammaRank);
    for (int i = 0; i < kGammaRank; ++i) t(i) = Rational(rng.uniform(-20, 20), 7);
    QMatrix y = model.point(t);
    y *= Rational(common_denominator(y));
    const auto c = model_coordinates(model, y);
    REQUIRE(c.has_value());
    for (Eigen::Index i = 0; i < c->size(); ++i) CHECK(denominator((*c)(i)) == 1);
  }
}

TEST_CASE("cyclic embedding pretest") {
  CHECK_FALSE(cyclic_embedding_pretest(-1, 4));
  CHECK_FALSE(cyclic_embedding_pretest(3, 4));
  CHECK(cyclic_embedding_pretest(13, 4));
  CHECK_FALSE(cyclic_embedding_pretest(13, 8));
  CHECK(cyclic_embedding_pretest(2, 8));
  CHECK(cyclic_embedding_pretest(17, 8));
  CHECK(cyclic_embedding_pretest(9 * 17, 8));
  CHECK(cyclic_embedding_pretest(9 * 2, 4));    // 3 to an even power
  CHECK_FALSE(cyclic_embedding_pretest(3 * 13, 4));
  CHECK(cyclic_embedding_pretest(25 * 17, 8));  // 5 to an even power
  CHECK_THROWS_AS(cyclic_embedding_pretest(0, 4), MathError);
  CHECK_THROWS_AS(cyclic_embedding_pretest(5, 6), MathError);
  for (long long d = -50; d <= 2000; ++d) {
    if (d == 0) continue;
    if (cyclic_embedding_pretest(d, 8)) CHECK(cyclic_embedding_pretest(d, 4));
  }
}
