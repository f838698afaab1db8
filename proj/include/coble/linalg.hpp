#pragma once

// Exact dense linear algebra over Q.
//
// Elimination is fraction-free (Bareiss): rows are cleared to integers, every
// intermediate entry is a minor of the input, and each update divides exactly
// by the previous pivot. The Gauss-Jordan variant used here leaves d * RREF,
// after which a single rational division per entry yields the reduced form.

#include "coble/exact.hpp"

#include <cstdint>
#include <vector>

namespace coble {

struct Echelon {
  QMatrix rref;                        // rank x cols, reduced row echelon form
  std::vector<Eigen::Index> pivots;    // pivot column of each row
  Eigen::Index cols = 0;

  Eigen::Index rank() const { return static_cast<Eigen::Index>(pivots.size()); }
  std::vector<Eigen::Index> free_columns() const;
};

/// Reduced row echelon form via fraction-free Gauss-Jordan elimination.
Echelon row_reduce(const QMatrix& m);
Echelon row_reduce(const ZMatrix& m);

Eigen::Index rank(const QMatrix& m);

/// Basis of the right kernel read off the reduced echelon form: one vector per
/// free column, with a 1 in that column. Empty when the kernel is trivial.
std::vector<QVector> kernel_basis(const QMatrix& m);
std::vector<QVector> kernel_basis(const Echelon& e);

/// Same basis as columns of a cols x nullity matrix.
QMatrix kernel_matrix(const QMatrix& m);

/// Determinant of a square matrix by Bareiss elimination.
Rational determinant(const QMatrix& m);
Integer determinant(const ZMatrix& m);

/// Unique solution of a square nonsingular system; throws NotABasis when
/// the matrix is singular.
QVector solve(const QMatrix& a, const QVector& b);
QMatrix inverse(const QMatrix& a);

/// Each row scaled by the lcm of its denominators.
ZMatrix clear_row_denominators(const QMatrix& m);

namespace modp {

/// 61-bit Mersenne prime; arithmetic below works for any prime < 2^62.
inline constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

std::uint64_t reduce(const Integer& z, std::uint64_t p);
std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t inv(std::uint64_t a, std::uint64_t p);

/// Greedy maximal set of rows that are linearly independent modulo p, in
/// row order. Rows independent mod p are independent over Q.
std::vector<Eigen::Index> independent_rows(const ZMatrix& m, std::uint64_t p = kPrime);

Eigen::Index rank(const ZMatrix& m, std::uint64_t p = kPrime);

}  // namespace modp

/// Kernel of a tall integer system with many redundant rows (sampled
/// evaluation matrices). A maximal independent row set is chosen modulo a
/// prime, reduced exactly, and the resulting kernel is checked exactly
/// against every row; rows that fail the check are added and the reduction
/// repeated. The result is the exact reduced-echelon kernel of the full
/// matrix, so it does not depend on the prime.
struct SampledKernel {
  Eigen::Index rank = 0;
  std::vector<Eigen::Index> pivots;
  std::vector<QVector> kernel;
};
SampledKernel sampled_kernel(const ZMatrix& rows);

}  // namespace coble
