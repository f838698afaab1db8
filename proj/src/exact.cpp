#include "coble/exact.hpp"

#include "coble/errors.hpp"

#include <cctype>

namespace coble {

const char* error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DegenerateAlgebra: return "DegenerateAlgebra";
    case ErrorKind::NotABasis: return "NotABasis";
    case ErrorKind::DegenerateConfig: return "DegenerateConfig";
    case ErrorKind::NotDefinedHere: return "NotDefinedHere";
    case ErrorKind::InsufficientSamples: return "InsufficientSamples";
    case ErrorKind::InternalInconsistency: return "InternalInconsistency";
    case ErrorKind::NotInGroup: return "NotInGroup";
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::NoProperPentahedron: return "NoProperPentahedron";
    case ErrorKind::MultipleZeroes: return "MultipleZeroes";
    case ErrorKind::UnexpectedKernel: return "UnexpectedKernel";
    case ErrorKind::DescentDimensionMismatch: return "DescentDimensionMismatch";
    case ErrorKind::RelationTransportError: return "RelationTransportError";
    case ErrorKind::NotFoundWithinBound: return "NotFoundWithinBound";
    case ErrorKind::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

std::string to_string(const Integer& z) { return z.str(); }

std::string to_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

namespace {

bool is_integer_text(std::string_view s) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

Integer parse_integer(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  return Integer(std::string(s));
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  const auto slash = text.find('/');
  const auto num = text.substr(0, slash);
  if (!is_integer_text(num)) fail(ErrorKind::InvalidInput, "not a rational: '" + std::string(text) + "'");
  if (slash == std::string_view::npos) return Rational(parse_integer(num));
  const auto den = text.substr(slash + 1);
  if (!is_integer_text(den) || den.front() == '-')
    fail(ErrorKind::InvalidInput, "not a rational: '" + std::string(text) + "'");
  const Integer d = parse_integer(den);
  if (d.is_zero()) fail(ErrorKind::InvalidInput, "zero denominator in '" + std::string(text) + "'");
  return Rational(parse_integer(num), d);
}

Integer gcd(const Integer& a, const Integer& b) { return boost::multiprecision::gcd(a, b); }

Integer lcm(const Integer& a, const Integer& b) {
  if (a.is_zero() || b.is_zero()) return 0;
  return boost::multiprecision::abs(a / gcd(a, b) * b);
}

Rational pow(const Rational& base, unsigned exponent) {
  Rational result = 1;
  Rational b = base;
  while (exponent) {
    if (exponent & 1U) result *= b;
    exponent >>= 1U;
    if (exponent) b *= b;
  }
  return result;
}

ZVector primitive_integer(const QVector& v) {
  const Integer d = common_denominator(v);
  ZVector z(v.size());
  Integer content = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    z(i) = numerator(v(i)) * (d / denominator(v(i)));
    content = gcd(content, z(i));
  }
  if (content > 1)
    for (Eigen::Index i = 0; i < z.size(); ++i) z(i) /= content;
  return z;
}

QVector to_rational(const ZVector& v) {
  QVector q(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) q(i) = Rational(v(i));
  return q;
}

ZVector to_integer(const QVector& v) {
  ZVector z(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (denominator(v(i)) != 1) fail(ErrorKind::InternalInconsistency, "expected an integral vector");
    z(i) = numerator(v(i));
  }
  return z;
}

// splitmix64
std::uint64_t Rng::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(next());
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t r;
  do {
    r = next();
  } while (r >= limit);
  return lo + static_cast<std::int64_t>(r % span);
}

}  // namespace coble
