#include "coble/twist.hpp"

#include "coble/errors.hpp"
#include "coble/forms.hpp"
#include "coble/monomials.hpp"
#include "coble/lattice.hpp"
#include "coble/linalg.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <thread>

namespace coble {

namespace {

bool integral(const Rational& q) { return denominator(q) == 1; }

// Elements of the Galois group as images of T, with the generator word
// leading to each; product x * s is the automorphism "s first, then x".
struct GaloisElement {
  UniPoly image;
  std::vector<int> word;
};

std::vector<GaloisElement> enumerate_galois(const GaloisFieldData& field, std::size_t limit) {
  const UniPoly& f = field.modulus;
  const UniPoly t = UniPoly({Rational(0), Rational(1)}) % f;
  std::vector<GaloisElement> out{{t, {}}};
  std::map<std::vector<Rational>, std::size_t> seen{{t.coeffs(), 0}};
  for (std::size_t k = 0; k < out.size(); ++k) {
    for (std::size_t s = 0; s < field.automorphisms.size(); ++s) {
      // (x o s)(T) = x(a_s(T)) = a_s(a_x(T))
      UniPoly img = field.automorphisms[s].compose_mod(out[k].image, f);
      if (seen.count(img.coeffs())) continue;
      if (out.size() >= limit) return out;
      auto word = out[k].word;
      word.push_back(static_cast<int>(s));
      seen.emplace(img.coeffs(), out.size());
      out.push_back({std::move(img), std::move(word)});
    }
  }
  return out;
}

QMatrix coords(const UniPoly& p, int n) {
  QMatrix c = QMatrix::Zero(n, 1);
  for (int j = 0; j < n; ++j) c(j, 0) = p.coeff(static_cast<std::size_t>(j));
  return c;
}

// Kronecker product M (x) S.
QMatrix kron(const QMatrix& m, const QMatrix& s) {
  QMatrix out(m.rows() * s.rows(), m.cols() * s.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      out.block(i * s.rows(), j * s.cols(), s.rows(), s.cols()) = m(i, j) * s;
  return out;
}

QVector flatten(const QMatrix& y) {
  QVector v(y.size());
  for (Eigen::Index a = 0; a < y.rows(); ++a)
    for (Eigen::Index j = 0; j < y.cols(); ++j) v(a * y.cols() + j) = y(a, j);
  return v;
}

QMatrix unflatten(const QVector& v, int n) {
  QMatrix y(kGammaRank, n);
  for (Eigen::Index a = 0; a < kGammaRank; ++a)
    for (Eigen::Index j = 0; j < n; ++j) y(a, j) = v(a * n + j);
  return y;
}

// Stacked descent equations (M (x) S - I) vec(y) = 0 over all generators.
QMatrix descent_system(const GaloisFieldData& field, const RhoAssignment& rho, const GammaData& data) {
  const int n = field.degree();
  const Eigen::Index dim = kGammaRank * n;
  QMatrix sys(dim * static_cast<Eigen::Index>(rho.size()), dim);
  const QMatrix id = QMatrix::Identity(dim, dim);
  for (std::size_t g = 0; g < rho.size(); ++g) {
    const QMatrix m = basis_action(weyl_group().gamma_action(rho[g]), data.basis);
    const QMatrix s = automorphism_matrix(field.modulus, field.automorphisms[g]);
    sys.block(static_cast<Eigen::Index>(g) * dim, 0, dim, dim) = kron(m, s) - id;
  }
  return sys;
}

QMatrix integral_primitive(const QMatrix& y) {
  const ZVector z = primitive_integer(flatten(y));
  QVector q(z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) q(i) = Rational(z(i));
  return unflatten(q, static_cast<int>(y.cols()));
}

// ----- arithmetic in Z[T]/(f) on coefficient vectors -----

using ZPoly = std::vector<Integer>;

struct ZRing {
  int n;
  ZPoly f;  // f_0 .. f_{n-1}; f is monic of degree n

  // a * b without reduction, accumulated into acc (length 2n - 1).
  void mul_add(const ZPoly& a, const ZPoly& b, ZPoly& acc) const {
    for (int i = 0; i < n; ++i) {
      if (a[static_cast<std::size_t>(i)].is_zero()) continue;
      for (int j = 0; j < n; ++j) acc[static_cast<std::size_t>(i + j)] += a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)];
    }
  }
  void reduce(ZPoly& acc) const {
    for (int d = 2 * n - 2; d >= n; --d) {
      const Integer c = acc[static_cast<std::size_t>(d)];
      if (c.is_zero()) continue;
      acc[static_cast<std::size_t>(d)] = 0;
      for (int i = 0; i < n; ++i) acc[static_cast<std::size_t>(d - n + i)] -= c * f[static_cast<std::size_t>(i)];
    }
    acc.resize(static_cast<std::size_t>(n));
  }
  ZPoly mul(const ZPoly& a, const ZPoly& b) const {
    ZPoly acc(static_cast<std::size_t>(2 * n - 1));
    mul_add(a, b, acc);
    reduce(acc);
    return acc;
  }
};

Integer to_integer_checked(const Rational& q) {
  if (!integral(q)) fail(ErrorKind::InternalInconsistency, "expected an integral value");
  return numerator(q);
}

std::vector<ZVector> integral_cubics(const GammaData& data) {
  std::vector<ZVector> out;
  for (const auto& r : data.cubic.kernel) out.push_back(primitive_integer(r));
  return out;
}

// Hermite normal form of the lattice generated by `gens`, which must contain
// d * Z^k; entries are kept reduced mod d along the way.
ZMatrix hnf_mod(std::vector<ZVector> gens, const Integer& d) {
  const Eigen::Index k = gens.empty() ? 0 : gens[0].size();
  auto reduce_row = [&](ZVector& r, Eigen::Index from) {
    for (Eigen::Index j = from; j < k; ++j) {
      r(j) %= d;
      if (r(j) < 0) r(j) += d;
    }
  };
  ZMatrix h = ZMatrix::Zero(k, k);
  for (Eigen::Index col = 0; col < k; ++col) {
    // The remaining generators span the part of the lattice vanishing on the
    // first col coordinates, which contains d * e_col; that is also what
    // makes the reductions mod d harmless.
    ZVector e = ZVector::Zero(k);
    e(col) = d;
    gens.push_back(e);
    // Euclid on column col.
    for (;;) {
      std::size_t best = gens.size();
      std::size_t nonzero = 0;
      for (std::size_t r = 0; r < gens.size(); ++r) {
        if (gens[r](col).is_zero()) continue;
        ++nonzero;
        if (best == gens.size() || abs(gens[r](col)) < abs(gens[best](col))) best = r;
      }
      if (nonzero <= 1) {
        if (best == gens.size()) fail(ErrorKind::InternalInconsistency, "lattice is not of full rank");
        break;
      }
      for (std::size_t r = 0; r < gens.size(); ++r) {
        if (r == best || gens[r](col).is_zero()) continue;
        const Integer q = gens[r](col) / gens[best](col);
        gens[r] -= q * gens[best];
        reduce_row(gens[r], col + 1);
      }
    }
    std::size_t piv = 0;
    while (gens[piv](col).is_zero()) ++piv;
    ZVector row = gens[piv];
    gens.erase(gens.begin() + static_cast<std::ptrdiff_t>(piv));
    if (row(col) < 0) row = -row;
    h.row(col) = row.transpose();
    for (auto& g : gens) reduce_row(g, col + 1);
  }
  // Reduce above the diagonal.
  for (Eigen::Index col = 1; col < k; ++col)
    for (Eigen::Index r = 0; r < col; ++r) {
      Integer q = h(r, col) / h(col, col);
      if (h(r, col) - q * h(col, col) < 0) q -= 1;
      h.row(r) -= q * h.row(col);
    }
  return h;
}

// Z-basis of span_Q(rows of rref) intersected with Z^N. With the reduced
// echelon rows r_i, an integral vector of the span is sum c_i r_i with c_i its
// pivot entries, so the lattice is {c in Z^k : c^T (d R) = 0 mod d}.
std::vector<ZVector> saturated_basis(const QMatrix& rref) {
  const Eigen::Index k = rref.rows(), cols = rref.cols();
  const Integer d = common_denominator(rref);
  ZMatrix a(k, cols);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) a(i, j) = numerator(rref(i, j) * Rational(d));
  ZMatrix h = ZMatrix::Identity(k, k);
  if (d != 1) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      std::vector<ZVector> rows;
      std::vector<Integer> v;
      for (Eigen::Index i = 0; i < k; ++i) {
        rows.push_back(h.row(i).transpose());
        Integer x = (h.row(i) * a.col(j))(0) % d;
        if (x < 0) x += d;
        v.push_back(x);
      }
      // Unimodular row operations until a single value is nonzero.
      for (;;) {
        std::size_t best = v.size();
        for (std::size_t i = 0; i < v.size(); ++i)
          if (!v[i].is_zero() && (best == v.size() || v[i] < v[best])) best = i;
        if (best == v.size()) break;
        bool more = false;
        for (std::size_t i = 0; i < v.size(); ++i) {
          if (i == best || v[i].is_zero()) continue;
          const Integer q = v[i] / v[best];
          rows[i] -= q * rows[best];
          v[i] -= q * v[best];
          more = more || !v[i].is_zero();
        }
        if (!more) {
          rows[best] *= d / gcd(v[best], d);
          break;
        }
      }
      h = hnf_mod(rows, d);
    }
  }
  std::vector<ZVector> out;
  for (Eigen::Index i = 0; i < k; ++i) {
    const QVector y = (to_rational(h.row(i).transpose()).transpose() * rref).transpose();
    out.push_back(to_integer(y));
  }
  return out;
}

}  // namespace

void validate_field(const GaloisFieldData& field) {
  const UniPoly& f = field.modulus;
  const int n = f.degree();
  if (n < 1) fail(ErrorKind::InvalidInput, "field modulus must have positive degree");
  if (f.leading() != 1) fail(ErrorKind::InvalidInput, "field modulus must be monic");
  for (const auto& c : f.coeffs())
    if (!integral(c)) fail(ErrorKind::InvalidInput, "field modulus must have integer coefficients");
  if (!is_squarefree(f)) fail(ErrorKind::InvalidInput, "field modulus is not squarefree");
  for (std::size_t s = 0; s < field.automorphisms.size(); ++s) {
    const UniPoly& a = field.automorphisms[s];
    if (a.degree() >= n) fail(ErrorKind::InvalidInput, "automorphism " + std::to_string(s) + " is not reduced mod f");
    if (!f.compose_mod(a, f).is_zero())
      fail(ErrorKind::InvalidInput, "automorphism " + std::to_string(s) + " does not map roots of f to roots");
  }
  const auto group = enumerate_galois(field, static_cast<std::size_t>(n) + 1);
  if (static_cast<int>(group.size()) != n)
    fail(ErrorKind::InvalidInput, "automorphisms generate " + std::to_string(group.size()) +
                                      " elements, the degree is " + std::to_string(n));
  if (field.order_basis) {
    if (static_cast<int>(field.order_basis->size()) != n) fail(ErrorKind::InvalidInput, "order basis has the wrong size");
    QMatrix w(n, n);
    for (int j = 0; j < n; ++j) w.col(j) = coords((*field.order_basis)[static_cast<std::size_t>(j)] % f, n).col(0);
    if (determinant(w) == 0) fail(ErrorKind::InvalidInput, "order basis is not a basis");
  }
}

QMatrix automorphism_matrix(const UniPoly& modulus, const UniPoly& image) {
  const int n = modulus.degree();
  QMatrix s(n, n);
  UniPoly p = UniPoly::constant(1) % modulus;
  const UniPoly a = image % modulus;
  for (int j = 0; j < n; ++j) {
    s.col(j) = coords(p, n).col(0);
    p = (p * a) % modulus;
  }
  return s;
}

bool extends_to_homomorphism(const GaloisFieldData& field, const RhoAssignment& rho) {
  if (rho.size() != field.automorphisms.size()) return false;
  const UniPoly& f = field.modulus;
  const UniPoly t = UniPoly({Rational(0), Rational(1)}) % f;
  std::vector<std::pair<UniPoly, WE6Element>> elems{{t, WE6Element::identity()}};
  std::map<std::vector<Rational>, std::size_t> seen{{t.coeffs(), 0}};
  for (std::size_t k = 0; k < elems.size(); ++k) {
    for (std::size_t s = 0; s < rho.size(); ++s) {
      UniPoly img = field.automorphisms[s].compose_mod(elems[k].first, f);
      const WE6Element g = elems[k].second * rho[s];
      const auto it = seen.find(img.coeffs());
      if (it != seen.end()) {
        if (!(elems[it->second].second == g)) return false;
        continue;
      }
      if (elems.size() > static_cast<std::size_t>(f.degree())) return false;
      seen.emplace(img.coeffs(), elems.size());
      elems.emplace_back(std::move(img), g);
    }
  }
  return true;
}

QMatrix basis_action(const SignedPerm& p, const GammaBasis& basis) {
  QMatrix pe(basis.expand.rows(), basis.expand.cols());
  for (int i = 0; i < kGammaCount; ++i) pe.row(i) = Rational(p.s[static_cast<std::size_t>(i)]) * basis.expand.row(p.p[static_cast<std::size_t>(i)]);
  QMatrix m(kGammaRank, kGammaRank);
  for (int k = 0; k < kGammaRank; ++k) m.row(k) = pe.row(basis.indices[static_cast<std::size_t>(k)]);
  if (!(basis.expand * m == pe)) fail(ErrorKind::InternalInconsistency, "signed permutation does not preserve the gamma span");
  return m;
}

QMatrix TwistedModel::point(const QVector& t) const {
  QMatrix y = QMatrix::Zero(kGammaRank, degree());
  for (std::size_t k = 0; k < basis.size(); ++k) y += t(static_cast<Eigen::Index>(k)) * basis[k];
  return y;
}

TwistedModel build_descent_space(const GaloisFieldData& field, const RhoAssignment& rho, const GammaData& data) {
  validate_field(field);
  if (rho.size() != field.automorphisms.size())
    fail(ErrorKind::InvalidInput, "rho needs one element per automorphism generator");
  for (const auto& g : rho)
    if (!weyl_group().contains(g)) fail(ErrorKind::NotInGroup, "rho image is not in W(E6)");
  const int n = field.degree();
  const auto ker = kernel_basis(descent_system(field, rho, data));
  if (ker.size() != kGammaRank)
    fail(ErrorKind::DescentDimensionMismatch, "descent space has dimension " + std::to_string(ker.size()));
  if (!extends_to_homomorphism(field, rho))
    fail(ErrorKind::DescentDimensionMismatch, "rho does not extend to a homomorphism");

  TwistedModel model;
  model.modulus = field.modulus;
  model.seed = data.seed;
  model.samples = data.samples;
  // Saturate in coordinates with respect to the order basis when one is given.
  QMatrix w = QMatrix::Identity(n, n);
  if (field.order_basis)
    for (int j = 0; j < n; ++j) w.col(j) = coords((*field.order_basis)[static_cast<std::size_t>(j)] % field.modulus, n).col(0);
  const QMatrix wi = inverse(w);
  QMatrix k(kGammaRank, kGammaRank * n);
  for (int i = 0; i < kGammaRank; ++i)
    k.row(i) = flatten((wi * unflatten(ker[static_cast<std::size_t>(i)], n).transpose()).transpose()).transpose();
  IntLattice lat;
  for (const auto& v : saturated_basis(row_reduce(k).rref)) lat.basis.push_back(v);
  lat = lll_reduce(lat);
  for (const auto& v : lat.basis) model.basis.push_back((w * unflatten(to_rational(v), n).transpose()).transpose());
  return model;
}

bool satisfies_descent(const GaloisFieldData& field, const RhoAssignment& rho, const QMatrix& y, const GammaData& data) {
  if (rho.size() != field.automorphisms.size()) fail(ErrorKind::InvalidInput, "rho needs one element per automorphism generator");
  for (std::size_t g = 0; g < rho.size(); ++g) {
    const QMatrix m = basis_action(weyl_group().gamma_action(rho[g]), data.basis);
    const QMatrix s = automorphism_matrix(field.modulus, field.automorphisms[g]);
    // sigma(y) row-wise, then M.
    const QMatrix sigma_y = (s * y.transpose()).transpose();
    if (!(m * sigma_y == y)) return false;
  }
  return true;
}

std::optional<QVector> model_coordinates(const TwistedModel& model, const QMatrix& y) {
  const Eigen::Index dim = kGammaRank * model.degree();
  QMatrix a(dim, static_cast<Eigen::Index>(model.basis.size()) + 1);
  for (std::size_t k = 0; k < model.basis.size(); ++k) a.col(static_cast<Eigen::Index>(k)) = flatten(model.basis[k]);
  a.col(a.cols() - 1) = -flatten(y);
  for (const auto& v : kernel_basis(a)) {
    const Rational last = v(v.size() - 1);
    if (last.is_zero()) continue;
    return QVector(v.head(v.size() - 1) / last);
  }
  return std::nullopt;
}

TwistedModel with_basis(const TwistedModel& model, const std::vector<QMatrix>& basis) {
  if (basis.size() != kGammaRank) fail(ErrorKind::InvalidInput, "a model basis has exactly ten vectors");
  QMatrix change(kGammaRank, kGammaRank);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    if (basis[k].rows() != kGammaRank || basis[k].cols() != model.degree())
      fail(ErrorKind::InvalidInput, "basis vector " + std::to_string(k) + " has the wrong shape");
    const auto c = model_coordinates(model, basis[k]);
    if (!c) fail(ErrorKind::InvalidInput, "basis vector " + std::to_string(k) + " does not satisfy the descent condition");
    change.col(static_cast<Eigen::Index>(k)) = *c;
  }
  if (determinant(change) == 0) fail(ErrorKind::InvalidInput, "basis vectors are dependent");
  TwistedModel out = model;
  out.basis = basis;
  out.cubics.clear();
  return out;
}

namespace {

std::vector<std::complex<long double>> embeddings(const UniPoly& f) {
  const int n = f.degree();
  if (n == 1) return {std::complex<long double>(-f.coeff(0).convert_to<long double>())};
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1;
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -f.coeff(static_cast<std::size_t>(i)).convert_to<double>();
  const Eigen::ComplexEigenSolver<Eigen::MatrixXd> es(comp);
  std::vector<std::complex<long double>> roots;
  for (int i = 0; i < n; ++i) {
    // A few Newton steps in long double.
    std::complex<long double> r(es.eigenvalues()(i).real(), es.eigenvalues()(i).imag());
    for (int it = 0; it < 5; ++it) {
      std::complex<long double> v = 0, d = 0;
      for (int k = n; k >= 0; --k) {
        d = d * r + v;
        v = v * r + std::complex<long double>(f.coeff(static_cast<std::size_t>(k)).convert_to<long double>());
      }
      if (std::abs(d) == 0) break;
      r -= v / d;
    }
    roots.push_back(r);
  }
  return roots;
}

using CEmb = std::vector<std::vector<std::complex<long double>>>;  // [a][root]

CEmb embed(const QMatrix& y, const std::vector<std::complex<long double>>& roots) {
  CEmb out(static_cast<std::size_t>(y.rows()));
  for (Eigen::Index a = 0; a < y.rows(); ++a)
    for (const auto& r : roots) {
      std::complex<long double> v = 0;
      for (Eigen::Index j = y.cols() - 1; j >= 0; --j) v = v * r + std::complex<long double>(y(a, j).convert_to<long double>());
      out[static_cast<std::size_t>(a)].push_back(v);
    }
  return out;
}

long double minkowski(const CEmb& u, const CEmb& v) {
  long double s = 0;
  for (std::size_t a = 0; a < u.size(); ++a)
    for (std::size_t i = 0; i < u[a].size(); ++i) s += (u[a][i] * std::conj(v[a][i])).real();
  return s;
}

// round(x * 2^bits) as an exact integer, for x of any magnitude.
Rational rounded_scaled(long double x, int bits) {
  int exp = 0;
  const long double mant = std::frexp(x, &exp);  // x = mant * 2^exp, |mant| in [0.5, 1)
  // 63 significant bits of the mantissa as an integer.
  const auto m = static_cast<long long>(std::ldexp(mant, 63 - 1));
  const int shift = exp + bits - 62;
  Integer z(m);
  if (shift >= 0) return Rational(z << shift);
  if (-shift >= 64) return Rational(0);
  // Round half away from zero.
  const Integer half = Integer(1) << (-shift - 1);
  return Rational(z >= 0 ? (z + half) >> -shift : -((-z + half) >> -shift));
}

}  // namespace

double embedding_norm(const TwistedModel& model, const QMatrix& y) {
  const auto e = embed(y, embeddings(model.modulus));
  return static_cast<double>(minkowski(e, e));
}

TwistedModel reduce_basis(const TwistedModel& model, const GaloisFieldData& field) {
  (void)field;  // the Minkowski form only depends on the embeddings of T
  const auto roots = embeddings(model.modulus);
  std::vector<CEmb> e;
  for (const auto& b : model.basis) e.push_back(embed(b, roots));
  const std::size_t k = e.size();
  long double top = 0;
  for (std::size_t i = 0; i < k; ++i) top = std::max(top, minkowski(e[i], e[i]));
  if (!(top > 0)) return model;
  // Fixed precision: entries rounded to multiples of 2^-30 times the
  // smallest diagonal entry.
  long double bottom = top;
  for (std::size_t i = 0; i < k; ++i) bottom = std::min(bottom, minkowski(e[i], e[i]));
  if (!(bottom > 0)) return model;
  QMatrix gram(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      gram(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rounded_scaled(minkowski(e[i], e[j]) / bottom, 30);
  IntLattice lat;
  for (std::size_t i = 0; i < k; ++i) {
    ZVector u = ZVector::Zero(static_cast<Eigen::Index>(k));
    u(static_cast<Eigen::Index>(i)) = 1;
    lat.basis.push_back(u);
  }
  lat.gram = gram;
  IntLattice red;
  try {
    red = lll_reduce(lat);
  } catch (const MathError&) {
    return model;  // rounding destroyed definiteness
  }
  TwistedModel out = model;
  out.cubics.clear();
  out.basis.clear();
  double before = 0, after = 0;
  for (const auto& b : model.basis) before = std::max(before, embedding_norm(model, b));
  for (const auto& u : red.basis) {
    QMatrix y = QMatrix::Zero(kGammaRank, model.degree());
    for (std::size_t j = 0; j < k; ++j) y += Rational(u(static_cast<Eigen::Index>(j))) * model.basis[j];
    after = std::max(after, embedding_norm(model, y));
    out.basis.push_back(y);
  }
  if (!(after < before)) {
    TwistedModel same = model;
    return same;
  }
  return out;
}

TwistedModel restrict_cubics(const TwistedModel& model, const GammaData& data) {
  const int n = model.degree();
  ZRing ring{n, {}};
  for (int i = 0; i < n; ++i) ring.f.push_back(to_integer_checked(model.modulus.coeff(static_cast<std::size_t>(i))));

  // Scaling every basis vector by one constant leaves the zero set alone.
  Integer scale = 1;
  for (const auto& b : model.basis) scale = lcm(scale, common_denominator(b));

  // l_a(t) = sum_k basis_k[a] t_k, coefficients in Z^n.
  std::vector<std::vector<ZPoly>> lin(kGammaRank, std::vector<ZPoly>(kGammaRank));
  for (int a = 0; a < kGammaRank; ++a)
    for (int k = 0; k < kGammaRank; ++k) {
      ZPoly p(static_cast<std::size_t>(n));
      for (int j = 0; j < n; ++j) p[static_cast<std::size_t>(j)] = to_integer_checked(Rational(scale) * model.basis[static_cast<std::size_t>(k)](a, j));
      lin[static_cast<std::size_t>(a)][static_cast<std::size_t>(k)] = std::move(p);
    }

  const auto& quad = monomial_table(kGammaRank, 2);
  const auto& cub = monomial_table(kGammaRank, 3);
  const std::size_t nq = quad.mons.size(), nc = cub.mons.size();

  // Quadratic products l_a l_b as t-quadratics, indexed by the y-monomial.
  std::vector<std::vector<ZPoly>> q2(nq);
  for (std::size_t e = 0; e < nq; ++e) {
    int a = -1, b = -1;
    for (int v = 0; v < kGammaRank; ++v)
      for (int r = 0; r < quad.mons[e][static_cast<std::size_t>(v)]; ++r) (a < 0 ? a : b) = v;
    std::vector<ZPoly> acc(nq, ZPoly(static_cast<std::size_t>(2 * n - 1)));
    Exponent mu(kGammaRank, 0);
    for (int k = 0; k < kGammaRank; ++k)
      for (int l = 0; l < kGammaRank; ++l) {
        std::fill(mu.begin(), mu.end(), 0);
        ++mu[static_cast<std::size_t>(k)];
        ++mu[static_cast<std::size_t>(l)];
        ring.mul_add(lin[static_cast<std::size_t>(a)][static_cast<std::size_t>(k)], lin[static_cast<std::size_t>(b)][static_cast<std::size_t>(l)],
                     acc[quad.index.at(mu)]);
      }
    for (auto& p : acc) ring.reduce(p);
    q2[e] = std::move(acc);
  }

  // Cubic products l_a l_b l_c with a <= b <= c as q2[ab] * l_c.
  std::vector<std::vector<ZPoly>> p3(nc);
  for (std::size_t e = 0; e < nc; ++e) {
    Exponent ab = cub.mons[e];
    int c = kGammaRank - 1;
    while (ab[static_cast<std::size_t>(c)] == 0) --c;
    --ab[static_cast<std::size_t>(c)];
    const auto& left = q2[quad.index.at(ab)];
    std::vector<ZPoly> acc(nc, ZPoly(static_cast<std::size_t>(2 * n - 1)));
    for (std::size_t nu = 0; nu < nq; ++nu) {
      Exponent mu = quad.mons[nu];
      for (int k = 0; k < kGammaRank; ++k) {
        ++mu[static_cast<std::size_t>(k)];
        ring.mul_add(left[nu], lin[static_cast<std::size_t>(c)][static_cast<std::size_t>(k)], acc[cub.index.at(mu)]);
        --mu[static_cast<std::size_t>(k)];
      }
    }
    for (auto& p : acc) ring.reduce(p);
    p3[e] = std::move(acc);
  }

  const auto rel = integral_cubics(data);
  const auto traces = power_traces(model.modulus, static_cast<std::size_t>(2 * n - 1));
  std::vector<Integer> tr;
  for (const auto& x : traces) tr.push_back(to_integer_checked(x));

  // Rows tr(T^j R_m(sum t_k basis_k)), j = 0, 1, ... until the span is full.
  std::vector<QVector> rows;
  Eigen::Index r = 0;
  for (int j = 0; j < n && r < static_cast<Eigen::Index>(rel.size()); ++j) {
    // qj[e][mu] = tr(T^j p3[e][mu])
    ZMatrix qj(static_cast<Eigen::Index>(nc), static_cast<Eigen::Index>(nc));
    for (std::size_t e = 0; e < nc; ++e)
      for (std::size_t mu = 0; mu < nc; ++mu) {
        Integer s = 0;
        const ZPoly& p = p3[e][mu];
        for (int i = 0; i < n; ++i)
          if (!p[static_cast<std::size_t>(i)].is_zero()) s += p[static_cast<std::size_t>(i)] * tr[static_cast<std::size_t>(i + j)];
        qj(static_cast<Eigen::Index>(e), static_cast<Eigen::Index>(mu)) = s;
      }
    for (const auto& rm : rel) {
      const ZVector row = qj.transpose() * rm;
      QVector q(row.size());
      for (Eigen::Index i = 0; i < row.size(); ++i) q(i) = Rational(row(i));
      rows.push_back(std::move(q));
    }
    QMatrix stack(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(nc));
    for (std::size_t i = 0; i < rows.size(); ++i) stack.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
    r = rank(stack);
  }
  if (r != static_cast<Eigen::Index>(rel.size()))
    fail(ErrorKind::RelationTransportError, "transported relations span dimension " + std::to_string(r));

  QMatrix stack(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(nc));
  for (std::size_t i = 0; i < rows.size(); ++i) stack.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
  const Echelon ech = row_reduce(stack);
  TwistedModel out = model;
  out.cubics.clear();
  for (Eigen::Index i = 0; i < ech.rank(); ++i) {
    const ZVector z = primitive_integer(ech.rref.row(i).transpose());
    QVector q(z.size());
    for (Eigen::Index k = 0; k < z.size(); ++k) q(k) = Rational(z(k));
    out.cubics.push_back(std::move(q));
  }
  return out;
}

bool on_model(const TwistedModel& model, const ZVector& t) {
  QVector q(t.size());
  for (Eigen::Index i = 0; i < t.size(); ++i) q(i) = Rational(t(i));
  const QVector mv = monomial_values(q, 3);
  return std::all_of(model.cubics.begin(), model.cubics.end(), [&](const QVector& c) { return c.dot(mv).is_zero(); });
}

namespace {

constexpr std::uint64_t kSearchPrime = 2147483629ULL;  // below 2^31

// A polynomial of degree <= 3 in variables v..9, mod p, with a substitution
// table that fixes variable v.
struct Level {
  std::vector<Exponent> mons;                       // exponents over vars v..9
  std::vector<std::pair<std::size_t, int>> target;  // index in the next level, power of var v
};

std::vector<Level> build_levels() {
  std::vector<Level> levels(kGammaRank + 1);
  for (int v = kGammaRank; v >= 0; --v) {
    const int nv = kGammaRank - v;
    Level& lv = levels[static_cast<std::size_t>(v)];
    if (nv == 0) {
      lv.mons.push_back({});
      continue;
    }
    for (int d = 3; d >= 0; --d)
      for (const auto& e : monomials(nv, d)) lv.mons.push_back(e);
  }
  for (int v = 0; v < kGammaRank; ++v) {
    Level& lv = levels[static_cast<std::size_t>(v)];
    const Level& next = levels[static_cast<std::size_t>(v + 1)];
    std::map<Exponent, std::size_t> idx;
    for (std::size_t i = 0; i < next.mons.size(); ++i) idx.emplace(next.mons[i], i);
    for (const auto& e : lv.mons) {
      const Exponent rest(e.begin() + 1, e.end());
      lv.target.emplace_back(idx.at(rest), e[0]);
    }
  }
  return levels;
}

struct Searcher {
  const std::vector<Level>& levels;
  int bound;
  const TwistedModel& model;
  std::vector<std::vector<std::uint64_t>> poly;  // current polynomial per level
  std::array<long long, kGammaRank> t{};
  std::vector<ZVector> found;

  static std::uint64_t reduce_signed(long long x) {
    const long long p = static_cast<long long>(kSearchPrime);
    long long r = x % p;
    return static_cast<std::uint64_t>(r < 0 ? r + p : r);
  }

  void fix(int v, long long value) {
    const auto& lv = levels[static_cast<std::size_t>(v)];
    auto& dst = poly[static_cast<std::size_t>(v + 1)];
    std::fill(dst.begin(), dst.end(), 0);
    const std::uint64_t x = reduce_signed(value);
    const std::uint64_t pw[4] = {1, x, x * x % kSearchPrime, x * x % kSearchPrime * x % kSearchPrime};
    const auto& src = poly[static_cast<std::size_t>(v)];
    for (std::size_t i = 0; i < src.size(); ++i) {
      if (src[i] == 0) continue;
      const auto [j, e] = lv.target[i];
      dst[j] = (dst[j] + src[i] * pw[e]) % kSearchPrime;
    }
  }

  static long long gcd_ll(long long a, long long b) {
    a = a < 0 ? -a : a;
    b = b < 0 ? -b : b;
    while (b) {
      const long long r = a % b;
      a = b;
      b = r;
    }
    return a;
  }

  void leaf() {
    long long g = 0;
    for (long long x : t) g = gcd_ll(g, x);
    if (g != 1) return;
    ZVector z(kGammaRank);
    for (int i = 0; i < kGammaRank; ++i) z(i) = t[static_cast<std::size_t>(i)];
    if (on_model(model, z)) found.push_back(z);
  }

  // sign_free: an earlier coordinate is nonzero, so negative values are allowed.
  void descend(int v, bool sign_free) {
    if (v == kGammaRank) {
      if (poly[kGammaRank][0] == 0 && sign_free) leaf();
      return;
    }
    const long long lo = sign_free ? -bound : 0;
    for (long long x = lo; x <= bound; ++x) {
      t[static_cast<std::size_t>(v)] = x;
      fix(v, x);
      descend(v + 1, sign_free || x != 0);
    }
    t[static_cast<std::size_t>(v)] = 0;
  }
};

}  // namespace

std::vector<ZVector> point_search(const TwistedModel& model, int bound, int workers, std::uint64_t seed,
                                  const SearchProgress& progress) {
  if (model.cubics.empty()) fail(ErrorKind::InvalidInput, "point search needs restricted cubics");
  if (bound < 0) fail(ErrorKind::InvalidInput, "negative search bound");
  if (bound == 0) return {};
  static const std::vector<Level> levels = build_levels();

  // One random combination of the cubics, mod p, as the filter.
  Rng rng(seed);
  std::vector<std::uint64_t> top(levels[0].mons.size(), 0);
  const auto& cub = monomial_table(kGammaRank, 3);
  std::map<Exponent, std::size_t> top_index;
  for (std::size_t i = 0; i < levels[0].mons.size(); ++i) top_index.emplace(levels[0].mons[i], i);
  for (const auto& c : model.cubics) {
    const auto w = static_cast<std::uint64_t>(rng.uniform(1, static_cast<std::int64_t>(kSearchPrime) - 1));
    for (std::size_t m = 0; m < cub.mons.size(); ++m) {
      const Rational& q = c(static_cast<Eigen::Index>(m));
      if (q.is_zero()) continue;
      const std::uint64_t r = modp::reduce(numerator(q), kSearchPrime);
      auto& slot = top[top_index.at(cub.mons[m])];
      slot = (slot + w * r) % kSearchPrime;
    }
  }

  // Work items: values of the first two coordinates.
  std::vector<std::pair<long long, long long>> items;
  for (long long a = 0; a <= bound; ++a)
    for (long long b = (a == 0 ? 0 : -bound); b <= bound; ++b) items.emplace_back(a, b);
  std::atomic<std::size_t> next{0};
  std::mutex progress_mutex;
  std::size_t done = 0;
  std::vector<std::vector<ZVector>> results(items.size());
  auto work = [&]() {
    Searcher s{levels, bound, model, {}, {}, {}};
    for (const auto& lv : levels) s.poly.emplace_back(lv.mons.size(), 0);
    s.poly[0] = top;
    for (std::size_t i; (i = next.fetch_add(1)) < items.size();) {
      const auto [a, b] = items[i];
      s.found.clear();
      s.t.fill(0);
      s.t[0] = a;
      s.fix(0, a);
      s.t[1] = b;
      s.fix(1, b);
      s.descend(2, a != 0 || b != 0);
      results[i] = s.found;
      if (progress) {
        const std::lock_guard<std::mutex> lock(progress_mutex);
        progress(++done, items.size());
      }
    }
  };
  const int nthreads = std::max(1, workers);
  if (nthreads == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < nthreads; ++i) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  std::vector<ZVector> out;
  for (auto& r : results)
    for (auto& z : r) out.push_back(std::move(z));
  std::sort(out.begin(), out.end(), [](const ZVector& x, const ZVector& y) {
    return std::lexicographical_compare(x.data(), x.data() + x.size(), y.data(), y.data() + y.size());
  });
  return out;
}

std::vector<EtaleElement> gammas_at(const TwistedModel& model, const QMatrix& y, const GammaData& data) {
  const int n = model.degree();
  std::vector<EtaleElement> basis_values;
  for (int a = 0; a < kGammaRank; ++a) {
    std::vector<Rational> c(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) c[static_cast<std::size_t>(j)] = y(a, j);
    basis_values.push_back(EtaleElement::make(model.modulus, UniPoly(c)));
  }
  std::vector<EtaleElement> out;
  for (int i = 0; i < kGammaCount; ++i) {
    EtaleElement x = EtaleElement::make(model.modulus, UniPoly());
    for (int k = 0; k < kGammaRank; ++k) {
      const Rational& e = data.basis.expand(i, k);
      if (!e.is_zero()) x = x + e * basis_values[static_cast<std::size_t>(k)];
    }
    out.push_back(std::move(x));
  }
  return out;
}

RecoveredSurface recover_surface(const TwistedModel& model, const ZVector& t, const GammaData& data) {
  if (t.size() != kGammaRank) fail(ErrorKind::InvalidInput, "a model point has ten coordinates");
  if (!on_model(model, t)) fail(ErrorKind::InvalidInput, "point does not lie on the model");
  QVector q(t.size());
  for (Eigen::Index i = 0; i < t.size(); ++i) q(i) = Rational(t(i));
  const auto g = gammas_at(model, model.point(q), data);
  std::array<Rational, 5> sums;
  // Single gammas live in L; only their power sums are rational.
  std::array<EtaleElement, 5> acc;
  for (auto& a : acc) a = EtaleElement::make(model.modulus, UniPoly());
  for (const auto& x : g) {
    const EtaleElement x2 = x * x;
    EtaleElement p = x2;
    for (std::size_t k = 0; k < 5; ++k) {
      if (k) p = p * x2;
      acc[k] = acc[k] + p;
    }
  }
  for (std::size_t k = 0; k < 5; ++k) {
    if (acc[k].residue.degree() > 0)
      fail(ErrorKind::InternalInconsistency, "power sum P" + std::to_string(2 * k + 2) + " is not rational");
    sums[k] = acc[k].residue.coeff(0);
  }
  RecoveredSurface out;
  out.power_sums = {sums[0], sums[1], sums[2], sums[3], sums[4]};
  out.clebsch = clebsch_from_power_sums(out.power_sums);
  try {
    out.equation = equation_problem(out.clebsch);
  } catch (const MathError& e) {
    if (e.kind() != ErrorKind::NoProperPentahedron && e.kind() != ErrorKind::MultipleZeroes) throw;
    out.failure = e.kind();
    out.failure_detail = e.what();
  }
  return out;
}

bool cyclic_embedding_pretest(long long d, int target_degree) {
  if (d == 0) fail(ErrorKind::InvalidInput, "d must be nonzero");
  if (target_degree != 4 && target_degree != 8) fail(ErrorKind::InvalidInput, "target degree must be 4 or 8");
  if (d < 0) return false;
  // Exponent parity of each prime; only odd exponents survive in the
  // squarefree part.
  long long m = d;
  for (long long p = 2; p * p <= m; ++p) {
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (e % 2 == 0) continue;
    if (p % 4 == 3) return false;
    if (target_degree == 8 && p % 8 == 5) return false;
  }
  if (m > 1) {
    if (m % 4 == 3) return false;
    if (target_degree == 8 && m % 8 == 5) return false;
  }
  return true;
}

}  // namespace coble
