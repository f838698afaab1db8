#pragma once

// Six points in P^2 and the naive chart (w, x, y, z).
//
// Minors and d2 depend on the representative vectors of the points. Every
// gamma is homogeneous of degree 3 in each point, so a change of
// representatives only rescales the whole gamma vector; still, to get
// reproducible numbers the public evaluators work on canonical
// representatives (first nonzero coordinate 1) unless told otherwise.

#include "coble/exact.hpp"

#include <array>
#include <optional>
#include <string>

namespace coble {

using ProjPoint2 = std::array<Rational, 3>;

/// Divides by the first nonzero coordinate; throws InvalidInput for (0:0:0).
ProjPoint2 canonical(const ProjPoint2& p);

struct SixPointConfig {
  std::array<ProjPoint2, 6> points;

  /// Same configuration with canonical representatives.
  SixPointConfig canonical() const;
};

struct NaiveCoords {
  Rational w, x, y, z;
  friend bool operator==(const NaiveCoords&, const NaiveCoords&) = default;
};

/// The configuration (1:0:0), (0:1:0), (0:0:1), (1:1:1), (w:x:1), (y:z:1)
/// with exactly these representatives.
SixPointConfig naive_config(const NaiveCoords& n);

/// Determinant of the rows p_i, p_j, p_k (1-based, in the given order) of
/// the stored representatives.
Rational minor(const SixPointConfig& c, int i, int j, int k);

/// 6x6 determinant with rows (x0^2, x1^2, x2^2, x0x1, x0x2, x1x2), points in
/// order, stored representatives.
Rational d2(const SixPointConfig& c);

/// Why a configuration fails general position, for diagnostics.
struct DegeneracyWitness {
  std::optional<std::array<int, 3>> collinear;  // 1-based
  bool on_conic = false;
  std::string describe() const;
};

/// Empty when in general position.
std::optional<DegeneracyWitness> degeneracy(const SixPointConfig& c);

bool general_position(const SixPointConfig& c);
bool general_position(const NaiveCoords& n);

struct StandardForm {
  NaiveCoords coords;
  QMatrix transform;  // 3x3, maps p_1..p_4 to the standard frame up to scale
};

/// Throws DegenerateConfig unless general_position(c).
StandardForm normalize_to_standard(const SixPointConfig& c);

/// The partner point in the naive chart. Throws NotDefinedHere on a zero
/// denominator or when the image leaves the chart (a zero coordinate).
NaiveCoords partner(const NaiveCoords& n);

/// Componentwise reciprocal; throws NotDefinedHere on a zero coordinate.
NaiveCoords cremona_i123(const NaiveCoords& n);

/// Integer coordinates uniform in [-bound, bound], retried until general
/// position holds.
SixPointConfig random_config(Rng& rng, long bound = 20);
NaiveCoords random_naive(Rng& rng, long bound = 20);

/// Applies an invertible 3x3 matrix to every point (stored representatives).
SixPointConfig transform(const QMatrix& m, const SixPointConfig& c);

}  // namespace coble
