#include "coble/plane_config.hpp"

#include "coble/errors.hpp"
#include "coble/linalg.hpp"

namespace coble {

ProjPoint2 canonical(const ProjPoint2& p) {
  for (const auto& v : p) {
    if (v.is_zero()) continue;
    const Rational inv = Rational(1) / v;
    return {p[0] * inv, p[1] * inv, p[2] * inv};
  }
  fail(ErrorKind::InvalidInput, "the zero vector is not a projective point");
}

SixPointConfig SixPointConfig::canonical() const {
  SixPointConfig out;
  for (std::size_t i = 0; i < 6; ++i) out.points[i] = coble::canonical(points[i]);
  return out;
}

SixPointConfig naive_config(const NaiveCoords& n) {
  const Rational o(0), l(1);
  return {{ProjPoint2{l, o, o}, ProjPoint2{o, l, o}, ProjPoint2{o, o, l}, ProjPoint2{l, l, l},
           ProjPoint2{n.w, n.x, l}, ProjPoint2{n.y, n.z, l}}};
}

Rational minor(const SixPointConfig& c, int i, int j, int k) {
  const auto& a = c.points[static_cast<std::size_t>(i - 1)];
  const auto& b = c.points[static_cast<std::size_t>(j - 1)];
  const auto& d = c.points[static_cast<std::size_t>(k - 1)];
  return a[0] * (b[1] * d[2] - b[2] * d[1]) - a[1] * (b[0] * d[2] - b[2] * d[0]) + a[2] * (b[0] * d[1] - b[1] * d[0]);
}

namespace {

QMatrix conic_matrix(const SixPointConfig& c) {
  QMatrix m(6, 6);
  for (Eigen::Index r = 0; r < 6; ++r) {
    const auto& p = c.points[static_cast<std::size_t>(r)];
    m(r, 0) = p[0] * p[0];
    m(r, 1) = p[1] * p[1];
    m(r, 2) = p[2] * p[2];
    m(r, 3) = p[0] * p[1];
    m(r, 4) = p[0] * p[2];
    m(r, 5) = p[1] * p[2];
  }
  return m;
}

}  // namespace

Rational d2(const SixPointConfig& c) { return determinant(conic_matrix(c)); }

std::string DegeneracyWitness::describe() const {
  if (collinear)
    return "points " + std::to_string((*collinear)[0]) + ", " + std::to_string((*collinear)[1]) + ", " +
           std::to_string((*collinear)[2]) + " are collinear";
  if (on_conic) return "all six points lie on a conic";
  return "general position";
}

std::optional<DegeneracyWitness> degeneracy(const SixPointConfig& c) {
  for (int i = 1; i <= 6; ++i)
    for (int j = i + 1; j <= 6; ++j)
      for (int k = j + 1; k <= 6; ++k)
        if (minor(c, i, j, k).is_zero()) {
          DegeneracyWitness w;
          w.collinear = std::array<int, 3>{i, j, k};
          return w;
        }
  if (d2(c).is_zero()) {
    DegeneracyWitness w;
    w.on_conic = true;
    return w;
  }
  return std::nullopt;
}

bool general_position(const SixPointConfig& c) { return !degeneracy(c); }
bool general_position(const NaiveCoords& n) { return general_position(naive_config(n)); }

StandardForm normalize_to_standard(const SixPointConfig& c) {
  if (auto w = degeneracy(c)) fail(ErrorKind::DegenerateConfig, w->describe());
  QMatrix p(3, 3);
  for (Eigen::Index j = 0; j < 3; ++j)
    for (Eigen::Index i = 0; i < 3; ++i) p(i, j) = c.points[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
  QVector p4(3);
  for (Eigen::Index i = 0; i < 3; ++i) p4(i) = c.points[3][static_cast<std::size_t>(i)];
  const QVector s = solve(p, p4);
  const QMatrix m = inverse(p * s.asDiagonal());
  auto image = [&](std::size_t idx) {
    QVector v(3);
    for (Eigen::Index i = 0; i < 3; ++i) v(i) = c.points[idx][static_cast<std::size_t>(i)];
    QVector r = m * v;
    // General position already rules this out: it would put p1, p2, p_idx on a line.
    if (r(2).is_zero()) fail(ErrorKind::DegenerateConfig, "third coordinate vanishes after normalization");
    return std::pair<Rational, Rational>{r(0) / r(2), r(1) / r(2)};
  };
  const auto [w, x] = image(4);
  const auto [y, z] = image(5);
  return {{w, x, y, z}, m};
}

NaiveCoords partner(const NaiveCoords& n) {
  const auto& [w, x, y, z] = n;
  const Rational k = w * z - x * y;
  const Rational dw = (x - z) * (y - z), dx = (w - y) * (y - z), dy = (w - x) * (x - z), dz = (w - x) * (w - y);
  if (dw.is_zero() || dx.is_zero() || dy.is_zero() || dz.is_zero())
    fail(ErrorKind::NotDefinedHere, "partner map has a vanishing denominator");
  NaiveCoords out{k * (z - 1) / dw, k * (y - 1) / dx, k * (x - 1) / dy, k * (w - 1) / dz};
  if (out.w.is_zero() || out.x.is_zero() || out.y.is_zero() || out.z.is_zero())
    fail(ErrorKind::NotDefinedHere, "partner point leaves the naive chart");
  return out;
}

NaiveCoords cremona_i123(const NaiveCoords& n) {
  if (n.w.is_zero() || n.x.is_zero() || n.y.is_zero() || n.z.is_zero())
    fail(ErrorKind::NotDefinedHere, "quadratic transformation needs nonzero coordinates");
  const Rational one(1);
  return {one / n.w, one / n.x, one / n.y, one / n.z};
}

SixPointConfig random_config(Rng& rng, long bound) {
  for (;;) {
    SixPointConfig c;
    for (auto& p : c.points)
      for (auto& v : p) v = Rational(rng.uniform(-bound, bound));
    bool zero = false;
    for (const auto& p : c.points) zero = zero || (p[0].is_zero() && p[1].is_zero() && p[2].is_zero());
    if (!zero && general_position(c)) return c;
  }
}

NaiveCoords random_naive(Rng& rng, long bound) {
  for (;;) {
    NaiveCoords n{Rational(rng.uniform(-bound, bound)), Rational(rng.uniform(-bound, bound)),
                  Rational(rng.uniform(-bound, bound)), Rational(rng.uniform(-bound, bound))};
    if (general_position(n)) return n;
  }
}

SixPointConfig transform(const QMatrix& m, const SixPointConfig& c) {
  SixPointConfig out;
  for (std::size_t k = 0; k < 6; ++k)
    for (Eigen::Index i = 0; i < 3; ++i) {
      Rational acc = 0;
      for (Eigen::Index j = 0; j < 3; ++j) acc += m(i, j) * c.points[k][static_cast<std::size_t>(j)];
      out.points[k][static_cast<std::size_t>(i)] = acc;
    }
  return out;
}

}  // namespace coble
