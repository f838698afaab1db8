#pragma once

// Dense monomial bookkeeping: exponent vectors of a fixed total degree in
// descending lexicographic order (x0^d first, x_{n-1}^d last).

#include "coble/exact.hpp"

#include <map>
#include <vector>

namespace coble {

using Exponent = std::vector<int>;

std::vector<Exponent> monomials(int nvars, int degree);

/// Position of each exponent in monomials(nvars, degree).
std::map<Exponent, std::size_t> monomial_index(int nvars, int degree);

/// Values of all monomials of the given degree at the point v.
template <typename Scalar>
Vector<Scalar> monomial_values(const Vector<Scalar>& v, int degree) {
  const auto mons = monomials(static_cast<int>(v.size()), degree);
  Vector<Scalar> out(static_cast<Eigen::Index>(mons.size()));
  for (std::size_t m = 0; m < mons.size(); ++m) {
    Scalar acc = 1;
    for (Eigen::Index i = 0; i < v.size(); ++i)
      for (int e = 0; e < mons[m][static_cast<std::size_t>(i)]; ++e) acc *= v(i);
    out(static_cast<Eigen::Index>(m)) = acc;
  }
  return out;
}

}  // namespace coble
