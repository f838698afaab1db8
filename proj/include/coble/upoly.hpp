#pragma once

#include "coble/exact.hpp"

#include <initializer_list>
#include <vector>

namespace coble {

/// Dense univariate polynomial over Q, lowest degree first. The leading
/// coefficient is nonzero unless the polynomial is zero (no coefficients).
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rational> coeffs);
  UniPoly(std::initializer_list<Rational> coeffs) : UniPoly(std::vector<Rational>(coeffs)) {}

  static UniPoly constant(const Rational& c) { return UniPoly({c}); }
  static UniPoly monomial(const Rational& c, std::size_t degree);
  /// Monic polynomial with the given roots.
  static UniPoly from_roots(const std::vector<Rational>& roots);

  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return c_; }
  /// Coefficient of T^i, zero beyond the degree.
  Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  const Rational& leading() const { return c_.back(); }

  Rational operator()(const Rational& x) const;

  UniPoly derivative() const;
  UniPoly monic() const;

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator-(const UniPoly& a);
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(const Rational& s, const UniPoly& a);
  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

  /// Euclidean division; throws InvalidInput for a zero divisor.
  static void divmod(const UniPoly& a, const UniPoly& b, UniPoly& quotient, UniPoly& remainder);
  friend UniPoly operator%(const UniPoly& a, const UniPoly& b);

  /// this(inner) mod modulus, by Horner's scheme.
  UniPoly compose_mod(const UniPoly& inner, const UniPoly& modulus) const;

 private:
  void trim();
  std::vector<Rational> c_;
};

/// Monic gcd; gcd(0, 0) is rejected with InvalidInput.
UniPoly poly_gcd(const UniPoly& a, const UniPoly& b);

bool is_squarefree(const UniPoly& g);

}  // namespace coble
