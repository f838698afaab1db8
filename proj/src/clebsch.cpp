#include "coble/clebsch.hpp"

#include "coble/errors.hpp"

#include <algorithm>
#include <numeric>

namespace coble {

namespace {

Rational q(long n, long d = 1) { return Rational(n) / Rational(d); }

ClebschVector nonzero(ClebschVector c, const char* where) {
  if (c.is_zero()) fail(ErrorKind::ZeroVector, std::string(where) + ": all five invariants vanish");
  return c;
}

}  // namespace

bool ClebschVector::is_zero() const {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x.is_zero(); });
}

ClebschVector ClebschVector::scaled(const Rational& l) const {
  ClebschVector out;
  Rational f = 1;
  for (std::size_t i = 0; i < 5; ++i) {
    f *= l;
    out.v[i] = f * v[i];
  }
  return out;
}

std::string ClebschVector::str() const {
  std::string s = "[";
  for (std::size_t i = 0; i < 5; ++i) s += (i ? ", " : "") + to_string(v[i]);
  return s + "]";
}

ClebschVector clebsch_from_power_sums(const PowerSums& p) {
  const Rational &P2 = p.p2, &P4 = p.p4, &P6 = p.p6, &P8 = p.p8, &P10 = p.p10;
  const Rational P2_2 = P2 * P2, P2_3 = P2_2 * P2, P2_4 = P2_3 * P2, P2_5 = P2_4 * P2;
  ClebschVector c;
  c.v[0] = q(-6) * P2;
  c.v[1] = q(-24) * P4 + q(41, 16) * P2_2;
  c.v[2] = q(576, 13) * P6 - q(396, 13) * P4 * P2 + q(29, 13) * P2_3;
  c.v[3] = q(-62208, 1171) * P8 + q(54864, 1171) * P6 * P2 + q(203616, 1171) * P4 * P4 - q(61287, 1171) * P4 * P2_2 +
           q(13393, 4684) * P2_4;
  c.v[4] = q(41472, 155) * P10 - q(4605984, 36301) * P8 * P2 - q(106272, 403) * P6 * P4 +
           q(19990440, 471913) * P6 * P2_2 + q(47719206, 471913) * P4 * P4 * P2 - q(7468023, 471913) * P4 * P2_3 +
           q(10108327, 18876520) * P2_5;
  return nonzero(c, "clebsch_from_power_sums");
}

ClebschVector clebsch_from_sigma(const SigmaVector& s) {
  const Rational& s5 = s[4];
  const Rational s5_2 = s5 * s5, s5_3 = s5_2 * s5, s5_4 = s5_2 * s5_2;
  ClebschVector c;
  c.v[0] = s[3] * s[3] - 4 * s[2] * s5;
  c.v[1] = s[0] * s5_3;
  c.v[2] = s[3] * s5_4;
  c.v[3] = s[1] * s5_4 * s5_2;
  c.v[4] = s5_4 * s5_4;
  return nonzero(c, "clebsch_from_sigma");
}

SigmaVector sigma_from_clebsch(const ClebschVector& c) {
  if (c.E().is_zero()) fail(ErrorKind::NoProperPentahedron, "E = 0");
  return {c.B(), c.D(), (c.C() * c.C() - c.A() * c.E()) / 4, c.C() * c.E(), c.E() * c.E()};
}

SigmaVector elementary_symmetric(const PentahedralCoeffs& a) {
  // e[k] = sigma_k of the coefficients seen so far
  std::array<Rational, 6> e{Rational(1)};
  for (const auto& x : a)
    for (std::size_t k = 5; k >= 1; --k) e[k] += e[k - 1] * x;
  return {e[1], e[2], e[3], e[4], e[5]};
}

bool weighted_equal(const ClebschVector& u, const ClebschVector& v) {
  if (u.is_zero() || v.is_zero()) fail(ErrorKind::ZeroVector, "weighted comparison with the zero vector");
  for (std::size_t i = 0; i < 5; ++i)
    if (u.v[i].is_zero() != v.v[i].is_zero()) return false;
  for (unsigned i = 0; i < 5; ++i) {
    if (u.v[i].is_zero()) continue;
    for (unsigned j = i + 1; j < 5; ++j) {
      if (u.v[j].is_zero()) continue;
      const unsigned wi = i + 1, wj = j + 1, g = std::gcd(wi, wj);
      if (pow(u.v[i], wj / g) * pow(v.v[j], wi / g) != pow(v.v[i], wj / g) * pow(u.v[j], wi / g)) return false;
    }
  }
  return true;
}

}  // namespace coble
