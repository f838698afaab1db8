#pragma once

// Arithmetic in A = Q[T]/(g) for a monic squarefree g.

#include "coble/exact.hpp"
#include "coble/upoly.hpp"

#include <vector>

namespace coble {

struct EtaleElement {
  UniPoly modulus;  // monic
  UniPoly residue;  // degree < deg(modulus)

  /// Reduces `value` modulo the monic version of `modulus`. Squarefreeness is
  /// checked where it matters (etale_trace), not here.
  static EtaleElement make(const UniPoly& modulus, const UniPoly& value);

  friend EtaleElement operator+(const EtaleElement& a, const EtaleElement& b);
  friend EtaleElement operator-(const EtaleElement& a, const EtaleElement& b);
  friend EtaleElement operator*(const EtaleElement& a, const EtaleElement& b);
  friend EtaleElement operator*(const Rational& s, const EtaleElement& a);
  friend bool operator==(const EtaleElement& a, const EtaleElement& b) = default;
};

/// Matrix of multiplication by x in the power basis 1, T, ..., T^(n-1);
/// column j holds x * T^j.
QMatrix multiplication_matrix(const EtaleElement& x);

/// Trace of multiplication by x; throws DegenerateAlgebra unless the modulus
/// is squarefree.
Rational etale_trace(const EtaleElement& x);

/// tr(T^k) for k = 0 .. count-1 via Newton's identities on the monic g. This
/// is the fast path; it agrees with etale_trace on powers of T.
std::vector<Rational> power_traces(const UniPoly& g, std::size_t count);

}  // namespace coble
