#pragma once

// Clebsch's invariants [A : B : C : D : E] in P(1,2,3,4,5).

#include "coble/exact.hpp"
#include "coble/gamma.hpp"

#include <array>
#include <string>

namespace coble {

struct ClebschVector {
  std::array<Rational, 5> v;  // A..E, weight i+1 at index i

  const Rational& A() const { return v[0]; }
  const Rational& B() const { return v[1]; }
  const Rational& C() const { return v[2]; }
  const Rational& D() const { return v[3]; }
  const Rational& E() const { return v[4]; }
  bool is_zero() const;
  /// (l A, l^2 B, ..., l^5 E)
  ClebschVector scaled(const Rational& l) const;
  std::string str() const;
  friend bool operator==(const ClebschVector&, const ClebschVector&) = default;
};

/// Elementary symmetric functions sigma_1..sigma_5 (also weighted 1..5).
using SigmaVector = std::array<Rational, 5>;
using PentahedralCoeffs = std::array<Rational, 5>;

/// Degree 2..10 expressions in the gamma power sums. ZeroVector if all vanish.
ClebschVector clebsch_from_power_sums(const PowerSums& p);
/// (s4^2 - 4 s3 s5, s1 s5^3, s4 s5^4, s2 s5^6, s5^8). ZeroVector if all vanish.
ClebschVector clebsch_from_sigma(const SigmaVector& s);
/// [B, D, (C^2 - AE)/4, CE, E^2]. NoProperPentahedron for E = 0.
SigmaVector sigma_from_clebsch(const ClebschVector& c);
SigmaVector elementary_symmetric(const PentahedralCoeffs& a);

/// Equality up to weighted scaling. Same zero pattern, and for every pair of
/// nonzero entries u_i^(w_j/g) v_j^(w_i/g) = v_i^(w_j/g) u_j^(w_i/g) with
/// g = gcd(w_i, w_j). Throws ZeroVector for a zero argument.
bool weighted_equal(const ClebschVector& u, const ClebschVector& v);

}  // namespace coble
