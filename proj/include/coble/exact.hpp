#pragma once

// Exact scalar and dense matrix types shared by every module.
//
// Rational is a GMP-backed boost::multiprecision number with expression
// templates disabled, so it behaves like a plain value type inside Eigen
// expressions. Values are always kept in lowest terms with a positive
// denominator; structural equality is therefore numeric equality.

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>
#include <Eigen/Core>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace coble {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using QMatrix = Matrix<Rational>;
using QVector = Vector<Rational>;
using ZMatrix = Matrix<Integer>;
using ZVector = Vector<Integer>;

inline Integer numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

inline int sign(const Rational& q) { return q.sign(); }
inline int sign(const Integer& z) { return z.sign(); }

inline bool is_zero(const Rational& q) { return q.is_zero(); }
inline bool is_zero(const Integer& z) { return z.is_zero(); }

/// Canonical "p/q" form ("p" when q = 1).
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

/// Parses "p", "-p", "p/q". Throws InvalidInput on malformed text or q = 0.
Rational parse_rational(std::string_view text);

Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);

/// Rational power with a non-negative exponent.
Rational pow(const Rational& base, unsigned exponent);

/// Smallest positive integer d such that d * v is integral.
template <typename Derived>
Integer common_denominator(const Eigen::MatrixBase<Derived>& v) {
  Integer d = 1;
  for (Eigen::Index i = 0; i < v.size(); ++i) d = lcm(d, denominator(v(i)));
  return d;
}

/// Scales v to a primitive integer vector (content 1). Zero stays zero.
/// The sign is kept; see normalize_sign for the sign convention.
ZVector primitive_integer(const QVector& v);

/// Makes the first nonzero entry positive.
template <typename Scalar>
void normalize_sign(Vector<Scalar>& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (sign(v(i)) != 0) {
      if (sign(v(i)) < 0) v = -v;
      return;
    }
  }
}

QVector to_rational(const ZVector& v);
ZVector to_integer(const QVector& v);  // requires integral entries

/// Deterministic seeded generator. Uniform integers use rejection sampling on
/// the raw 64-bit stream so results do not depend on the standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ^ 0x9e3779b97f4a7c15ULL) {}

  std::uint64_t next();
  /// Uniform in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);
  Rational uniform_rational(std::int64_t lo, std::int64_t hi) { return Rational(uniform(lo, hi)); }

 private:
  std::uint64_t state_;
};

}  // namespace coble
