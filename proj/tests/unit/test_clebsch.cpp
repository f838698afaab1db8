#include "coble/clebsch.hpp"
#include "coble/errors.hpp"
#include "coble/upoly.hpp"
#include "coble/weyl.hpp"

#include "doctest.h"

using namespace coble;

namespace {

ClebschVector cv(long a, long b, long c, long d, long e) { return {{Rational(a), Rational(b), Rational(c), Rational(d), Rational(e)}}; }

Rational small(Rng& rng) { return Rational(rng.uniform(-30, 30)) / Rational(rng.uniform(1, 7)); }

SigmaVector random_sigma(Rng& rng) {
  SigmaVector s;
  for (auto& x : s) x = small(rng);
  while (s[4].is_zero()) s[4] = small(rng);
  return s;
}

ClebschVector from_gammas(const GammaVector& g) { return clebsch_from_power_sums(power_sums(g)); }

}  // namespace

TEST_CASE("clebsch_from_power_sums examples") {
  PowerSums p{Rational(1), 0, 0, 0, 0};
  const auto c = clebsch_from_power_sums(p);
  CHECK(c.A() == -6);
  CHECK(c.B() == Rational(41) / 16);
  CHECK(c.C() == Rational(29) / 13);
  CHECK(c.D() == Rational(13393) / 4684);
  CHECK(c.E() == Rational(10108327) / 18876520);
  CHECK(clebsch_from_power_sums({0, 0, 0, 0, Rational(1)}).E() == Rational(41472) / 155);
  CHECK(clebsch_from_power_sums({0, Rational(1), 0, 0, 0}).B() == -24);
  CHECK_THROWS_AS(clebsch_from_power_sums({}), MathError);
  try {
    clebsch_from_power_sums({});
  } catch (const MathError& e) {
    CHECK(e.kind() == ErrorKind::ZeroVector);
  }
}

TEST_CASE("clebsch_from_sigma examples") {
  CHECK(clebsch_from_sigma({5, 10, 10, 5, 1}) == cv(-15, 5, 5, 10, 1));
  CHECK(clebsch_from_sigma({1, 2, 3, 4, 0}) == cv(16, 0, 0, 0, 0));
  CHECK(clebsch_from_sigma({0, 0, 0, 0, 1}) == cv(0, 0, 0, 0, 1));
  CHECK(clebsch_from_sigma({0, 0, 0, 0, 2}) == cv(0, 0, 0, 0, 256));
  CHECK_THROWS_AS(clebsch_from_sigma({1, 2, 3, 0, 0}), MathError);
}

TEST_CASE("sigma_from_clebsch") {
  CHECK(sigma_from_clebsch(cv(-15, 5, 5, 10, 1)) == SigmaVector{5, 10, 10, 5, 1});
  try {
    sigma_from_clebsch(cv(1, 2, 3, 4, 0));
    FAIL("expected NoProperPentahedron");
  } catch (const MathError& e) {
    CHECK(e.kind() == ErrorKind::NoProperPentahedron);
  }
  Rng rng(2);
  for (int t = 0; t < 100; ++t) {
    const SigmaVector s = random_sigma(rng);
    const auto c = clebsch_from_sigma(s);
    // The exact identities behind the round trip.
    const Rational s5 = s[4];
    CHECK((c.C() * c.C() - c.A() * c.E()) / 4 == s[2] * pow(s5, 9));
    const SigmaVector back = sigma_from_clebsch(c);
    for (unsigned i = 0; i < 5; ++i) CHECK(back[i] == s[i] * pow(s5, 3 * (i + 1)));
    CHECK(weighted_equal(clebsch_from_sigma(back), c));

    ClebschVector v{{small(rng), small(rng), small(rng), small(rng), small(rng)}};
    if (v.E().is_zero()) continue;
    CHECK(weighted_equal(clebsch_from_sigma(sigma_from_clebsch(v)), v));
  }
}

TEST_CASE("elementary_symmetric") {
  CHECK(elementary_symmetric({1, 1, 1, 1, 1}) == SigmaVector{5, 10, 10, 5, 1});
  CHECK(elementary_symmetric({1, 0, 0, 0, 0}) == SigmaVector{1, 0, 0, 0, 0});
  CHECK(elementary_symmetric({1, 2, 3, 4, 5}) == SigmaVector{15, 85, 225, 274, 120});
  Rng rng(5);
  for (int t = 0; t < 30; ++t) {
    PentahedralCoeffs a;
    for (auto& x : a) x = small(rng);
    const auto g = UniPoly::from_roots({a.begin(), a.end()});
    const auto s = elementary_symmetric(a);
    for (unsigned k = 1; k <= 5; ++k) CHECK(g.coeff(5 - k) == ((k % 2) ? Rational(-s[k - 1]) : s[k - 1]));
  }
}

TEST_CASE("weighted_equal") {
  CHECK(weighted_equal(cv(1, 1, 1, 1, 1), cv(1, 1, 1, 1, 1)));
  CHECK(weighted_equal(cv(1, 1, 1, 1, 1), cv(2, 4, 8, 16, 32)));
  CHECK_FALSE(weighted_equal(cv(1, 1, 1, 1, 1), cv(2, 4, 8, 16, 33)));
  CHECK(weighted_equal(cv(1, 1, 1, 1, 1), cv(-1, 1, -1, 1, -1)));
  CHECK_FALSE(weighted_equal(cv(1, 1, 1, 1, 1), cv(1, 1, 1, 1, 0)));
  // Only B and D nonzero: lambda^2 = 1 forces lambda^4 = 1.
  CHECK_FALSE(weighted_equal(cv(0, 1, 0, 1, 0), cv(0, 1, 0, -1, 0)));
  CHECK(weighted_equal(cv(0, 1, 0, 1, 0), cv(0, -1, 0, 1, 0)));
  // lambda irrational: sqrt 2 on B and D.
  CHECK(weighted_equal(cv(0, 1, 0, 1, 0), cv(0, 2, 0, 4, 0)));
  CHECK(weighted_equal(cv(0, 0, 1, 0, 0), cv(0, 0, 7, 0, 0)));
  CHECK_THROWS_AS(weighted_equal(cv(0, 0, 0, 0, 0), cv(1, 1, 1, 1, 1)), MathError);

  Rng rng(9);
  for (int t = 0; t < 100; ++t) {
    ClebschVector u{{small(rng), small(rng), small(rng), small(rng), small(rng)}};
    if (u.is_zero()) continue;
    Rational l1 = small(rng), l2 = small(rng);
    if (l1.is_zero() || l2.is_zero()) continue;
    const auto v = u.scaled(l1), w = v.scaled(l2);
    CHECK(weighted_equal(u, u));
    CHECK(weighted_equal(u, v));
    CHECK(weighted_equal(v, u));
    CHECK(weighted_equal(v, w));
    CHECK(weighted_equal(u, w));
    auto x = w;
    std::size_t k = static_cast<std::size_t>(rng.uniform(0, 4));
    x.v[k] += 1;
    if (!x.is_zero()) CHECK_FALSE(weighted_equal(u, x));
  }
}

TEST_CASE("power-sum invariants: signs, permutations, homogeneity") {
  const auto samples = sample_gammas(21, 5);
  Rng rng(6);
  for (const auto& g : samples) {
    const auto c = from_gammas(g);
    GammaVector h = g;
    for (Eigen::Index i = 0; i < h.size(); ++i)
      if (rng.uniform(0, 1)) h(i) = -h(i);
    for (Eigen::Index i = h.size() - 1; i > 0; --i) std::swap(h(i), h(rng.uniform(0, i)));
    CHECK(from_gammas(h) == c);
    const Rational l = Rational(rng.uniform(2, 9)) / Rational(rng.uniform(1, 9));
    const auto scaled = from_gammas(l * g);
    CHECK(scaled == c.scaled(l * l));
    CHECK(weighted_equal(scaled, c));
  }
}

TEST_CASE("partner and I123 give the same invariants") {
  Rng rng(12);
  int partner_checked = 0, i123_checked = 0;
  for (int t = 0; t < 60; ++t) {
    const auto n = random_naive(rng);
    if (!general_position(n)) continue;
    const auto c = from_gammas(evaluate_all_raw(naive_config(n)));
    try {
      const auto m = partner(n);
      CHECK(weighted_equal(from_gammas(evaluate_all_raw(naive_config(m))), c));
      ++partner_checked;
    } catch (const MathError& e) {
      CHECK(e.kind() == ErrorKind::NotDefinedHere);
    }
    try {
      const auto m = cremona_i123(n);
      const Rational s = pow(n.w * n.x * n.y * n.z, 2);
      // Clearing the common scalar makes the vectors equal, not just weighted-equal.
      CHECK(from_gammas(s * evaluate_all_raw(naive_config(m))) == c);
      ++i123_checked;
    } catch (const MathError& e) {
      CHECK(e.kind() == ErrorKind::NotDefinedHere);
    }
  }
  CHECK(partner_checked >= 20);
  CHECK(i123_checked >= 20);
}
