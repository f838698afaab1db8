#include "coble/linalg.hpp"

#include "coble/errors.hpp"

#include <algorithm>
#include <mutex>

namespace coble {

std::vector<Eigen::Index> Echelon::free_columns() const {
  std::vector<Eigen::Index> out;
  std::size_t k = 0;
  for (Eigen::Index c = 0; c < cols; ++c) {
    if (k < pivots.size() && pivots[k] == c)
      ++k;
    else
      out.push_back(c);
  }
  return out;
}

ZMatrix clear_row_denominators(const QMatrix& m) {
  ZMatrix z(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Integer d = 1;
    for (Eigen::Index j = 0; j < m.cols(); ++j) d = lcm(d, denominator(m(i, j)));
    for (Eigen::Index j = 0; j < m.cols(); ++j) z(i, j) = numerator(m(i, j)) * (d / denominator(m(i, j)));
  }
  return z;
}

namespace {

// Bit length, used to prefer small pivots.
std::size_t msb_size(const Integer& z) {
  if (z.is_zero()) return 0;
  return boost::multiprecision::msb(boost::multiprecision::abs(z)) + 1;
}

// Fraction-free Gauss-Jordan on an integer matrix, in place. On return the
// first `pivots.size()` rows hold d * RREF where d is the last pivot.
std::vector<Eigen::Index> bareiss_gauss_jordan(ZMatrix& a, Integer& last_pivot) {
  const Eigen::Index rows = a.rows();
  const Eigen::Index cols = a.cols();
  std::vector<Eigen::Index> pivots;
  Integer prev = 1;
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index p = -1;
    for (Eigen::Index i = r; i < rows; ++i) {
      if (!a(i, c).is_zero()) {
        if (p < 0 || msb_size(a(i, c)) < msb_size(a(p, c))) p = i;
      }
    }
    if (p < 0) continue;
    if (p != r) a.row(p).swap(a.row(r));
    const Integer piv = a(r, c);
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i == r) continue;
      const Integer f = a(i, c);
      if (f.is_zero()) {
        // Entries still need the scale change from prev to piv.
        if (piv != prev)
          for (Eigen::Index j = 0; j < cols; ++j)
            if (!a(i, j).is_zero()) a(i, j) = a(i, j) * piv / prev;
        continue;
      }
      for (Eigen::Index j = 0; j < cols; ++j) {
        if (j == c) continue;
        a(i, j) = (piv * a(i, j) - f * a(r, j)) / prev;
      }
      a(i, c) = 0;
    }
    prev = piv;
    pivots.push_back(c);
    ++r;
  }
  last_pivot = prev;
  return pivots;
}

}  // namespace

Echelon row_reduce(const ZMatrix& m) {
  ZMatrix a = m;
  Integer d;
  Echelon e;
  e.cols = m.cols();
  e.pivots = bareiss_gauss_jordan(a, d);
  const auto r = static_cast<Eigen::Index>(e.pivots.size());
  e.rref.resize(r, m.cols());
  for (Eigen::Index i = 0; i < r; ++i) {
    // Row i is d_i * (rref row) where d_i = pivot entry; divide by it directly.
    const Integer piv = a(i, e.pivots[static_cast<std::size_t>(i)]);
    for (Eigen::Index j = 0; j < m.cols(); ++j) e.rref(i, j) = Rational(a(i, j), piv);
  }
  return e;
}

Echelon row_reduce(const QMatrix& m) { return row_reduce(clear_row_denominators(m)); }

Eigen::Index rank(const QMatrix& m) { return row_reduce(m).rank(); }

std::vector<QVector> kernel_basis(const Echelon& e) {
  std::vector<QVector> out;
  for (Eigen::Index f : e.free_columns()) {
    QVector v = QVector::Zero(e.cols);
    v(f) = 1;
    for (Eigen::Index i = 0; i < e.rank(); ++i) v(e.pivots[static_cast<std::size_t>(i)]) = -e.rref(i, f);
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<QVector> kernel_basis(const QMatrix& m) { return kernel_basis(row_reduce(m)); }

QMatrix kernel_matrix(const QMatrix& m) {
  const auto basis = kernel_basis(m);
  QMatrix k(m.cols(), static_cast<Eigen::Index>(basis.size()));
  for (std::size_t j = 0; j < basis.size(); ++j) k.col(static_cast<Eigen::Index>(j)) = basis[j];
  return k;
}

Integer determinant(const ZMatrix& m) {
  if (m.rows() != m.cols()) fail(ErrorKind::InvalidInput, "determinant of a non-square matrix");
  const Eigen::Index n = m.rows();
  if (n == 0) return 1;
  ZMatrix a = m;
  Integer prev = 1;
  int sgn = 1;
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index p = k;
    while (p < n && a(p, k).is_zero()) ++p;
    if (p == n) return 0;
    if (p != k) {
      a.row(p).swap(a.row(k));
      sgn = -sgn;
    }
    for (Eigen::Index i = k + 1; i < n; ++i) {
      for (Eigen::Index j = k + 1; j < n; ++j) a(i, j) = (a(k, k) * a(i, j) - a(i, k) * a(k, j)) / prev;
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sgn > 0 ? a(n - 1, n - 1) : Integer(-a(n - 1, n - 1));
}

Rational determinant(const QMatrix& m) {
  if (m.rows() != m.cols()) fail(ErrorKind::InvalidInput, "determinant of a non-square matrix");
  Rational scale = 1;
  ZMatrix z(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Integer d = 1;
    for (Eigen::Index j = 0; j < m.cols(); ++j) d = lcm(d, denominator(m(i, j)));
    for (Eigen::Index j = 0; j < m.cols(); ++j) z(i, j) = numerator(m(i, j)) * (d / denominator(m(i, j)));
    scale /= Rational(d);
  }
  return Rational(determinant(z)) * scale;
}

QMatrix inverse(const QMatrix& a) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n) fail(ErrorKind::InvalidInput, "inverse of a non-square matrix");
  QMatrix aug(n, 2 * n);
  aug << a, QMatrix::Identity(n, n);
  const Echelon e = row_reduce(aug);
  if (e.rank() < n || e.pivots[static_cast<std::size_t>(n - 1)] != n - 1)
    fail(ErrorKind::NotABasis, "matrix is singular");
  return e.rref.rightCols(n);
}

QVector solve(const QMatrix& a, const QVector& b) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n || b.size() != n) fail(ErrorKind::InvalidInput, "solve expects a square system");
  QMatrix aug(n, n + 1);
  aug << a, b;
  const Echelon e = row_reduce(aug);
  if (e.rank() < n || e.pivots[static_cast<std::size_t>(n - 1)] != n - 1)
    fail(ErrorKind::NotABasis, "matrix is singular");
  return e.rref.col(n);
}

namespace modp {

std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t reduce(const Integer& z, std::uint64_t p) {
  Integer r = z % Integer(p);
  if (r.sign() < 0) r += p;
  return r.convert_to<std::uint64_t>();
}

std::uint64_t inv(std::uint64_t a, std::uint64_t p) {
  std::uint64_t result = 1;
  std::uint64_t e = p - 2;
  while (e) {
    if (e & 1U) result = mul(result, a, p);
    a = mul(a, a, p);
    e >>= 1U;
  }
  return result;
}

namespace {

// Incremental echelon basis over F_p.
class Basis {
 public:
  Basis(Eigen::Index cols, std::uint64_t p) : cols_(cols), p_(p) {}

  // Reduces v against the basis; inserts and returns true if independent.
  bool insert(std::vector<std::uint64_t> v) {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const auto c = static_cast<std::size_t>(pivots_[k]);
      if (v[c] == 0) continue;
      const std::uint64_t f = v[c];
      const auto& row = rows_[k];
      for (std::size_t j = c; j < v.size(); ++j) {
        if (row[j] == 0) continue;
        const std::uint64_t t = mul(f, row[j], p_);
        v[j] = v[j] >= t ? v[j] - t : v[j] + p_ - t;
      }
    }
    Eigen::Index c = 0;
    while (c < cols_ && v[static_cast<std::size_t>(c)] == 0) ++c;
    if (c == cols_) return false;
    const std::uint64_t s = inv(v[static_cast<std::size_t>(c)], p_);
    for (auto& x : v) x = mul(x, s, p_);
    // Keep pivots sorted so reduction order is by column.
    auto it = std::lower_bound(pivots_.begin(), pivots_.end(), c);
    const auto pos = it - pivots_.begin();
    pivots_.insert(it, c);
    rows_.insert(rows_.begin() + pos, std::move(v));
    return true;
  }

 private:
  Eigen::Index cols_;
  std::uint64_t p_;
  std::vector<Eigen::Index> pivots_;
  std::vector<std::vector<std::uint64_t>> rows_;
};

}  // namespace

std::vector<Eigen::Index> independent_rows(const ZMatrix& m, std::uint64_t p) {
  Basis basis(m.cols(), p);
  std::vector<Eigen::Index> out;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    std::vector<std::uint64_t> v(static_cast<std::size_t>(m.cols()));
    for (Eigen::Index j = 0; j < m.cols(); ++j) v[static_cast<std::size_t>(j)] = reduce(m(i, j), p);
    if (basis.insert(std::move(v))) out.push_back(i);
    if (static_cast<Eigen::Index>(out.size()) == m.cols()) break;
  }
  return out;
}

Eigen::Index rank(const ZMatrix& m, std::uint64_t p) {
  return static_cast<Eigen::Index>(independent_rows(m, p).size());
}

}  // namespace modp

namespace {

// Primes just below 2^31; products of two residues fit in 64 bits.
std::uint64_t small_prime(std::size_t index) {
  static std::vector<std::uint64_t> primes;
  static std::mutex lock;
  std::lock_guard<std::mutex> guard(lock);
  std::uint64_t c = primes.empty() ? (std::uint64_t{1} << 31) : primes.back();
  while (primes.size() <= index) {
    for (--c;; --c) {
      bool prime = c % 2 != 0;
      for (std::uint64_t d = 3; prime && d * d <= c; d += 2) prime = c % d != 0;
      if (prime) break;
    }
    primes.push_back(c);
  }
  return primes[index];
}

struct ModRref {
  std::vector<Eigen::Index> pivots;
  std::vector<std::vector<std::uint64_t>> rows;  // reduced rows, pivot entries 1
};

ModRref rref_mod(const ZMatrix& m, std::uint64_t p) {
  const auto rows = static_cast<std::size_t>(m.rows());
  const auto cols = static_cast<std::size_t>(m.cols());
  std::vector<std::vector<std::uint64_t>> a(rows, std::vector<std::uint64_t>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      a[i][j] = modp::reduce(m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)), p);
  ModRref out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    const std::uint64_t inv = modp::inv(a[r][c], p);
    for (std::size_t j = c; j < cols; ++j) a[r][j] = a[r][j] * inv % p;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const std::uint64_t f = p - a[i][c];
      for (std::size_t j = c; j < cols; ++j)
        if (a[r][j] != 0) a[i][j] = (a[i][j] + f * a[r][j]) % p;
    }
    out.pivots.push_back(static_cast<Eigen::Index>(c));
    ++r;
  }
  a.resize(r);
  out.rows = std::move(a);
  return out;
}

// n/d with |n|, d <= sqrt(m/2) and n = a d mod m, if one exists.
bool rational_reconstruct(const Integer& a, const Integer& m, Integer& num, Integer& den) {
  const Integer bound = boost::multiprecision::sqrt(m / 2);
  Integer r0 = m, r1 = a, t0 = 0, t1 = 1;
  while (r1 > bound) {
    const Integer q = r0 / r1;
    Integer r2 = r0 - q * r1, t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (t1.is_zero() || boost::multiprecision::abs(t1) > bound) return false;
  if (gcd(r1, t1) != 1) return false;
  num = t1.sign() < 0 ? Integer(-r1) : r1;
  den = boost::multiprecision::abs(t1);
  return true;
}

// Kernel vectors are exact: every one annihilates every row.
bool annihilates(const ZMatrix& rows, const std::vector<QVector>& kernel, Eigen::Index& bad_row) {
  std::vector<ZVector> zk;
  zk.reserve(kernel.size());
  for (const auto& v : kernel) zk.push_back(primitive_integer(v));
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    for (const auto& v : zk) {
      Integer acc = 0;
      for (Eigen::Index j = 0; j < rows.cols(); ++j)
        if (!v(j).is_zero()) acc += rows(i, j) * v(j);
      if (!acc.is_zero()) {
        bad_row = i;
        return false;
      }
    }
  }
  return true;
}

// Kernel read off a reduced echelon form given by pivots and the entries of
// the pivot rows in the free columns.
std::vector<QVector> kernel_from(Eigen::Index cols, const std::vector<Eigen::Index>& pivots,
                                 const std::vector<Eigen::Index>& free, const QMatrix& free_entries) {
  std::vector<QVector> out;
  for (std::size_t f = 0; f < free.size(); ++f) {
    QVector v = QVector::Zero(cols);
    v(free[f]) = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i)
      v(pivots[i]) = -free_entries(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(f));
    out.push_back(std::move(v));
  }
  return out;
}

// Multi-modular attempt at the exact RREF kernel of `sub`, whose rows are
// independent. Returns false when reconstruction does not settle in time.
bool modular_kernel(const ZMatrix& sub, const ZMatrix& all_rows, SampledKernel& out) {
  constexpr std::size_t kMaxPrimes = 400;
  const Eigen::Index cols = sub.cols();
  std::vector<Eigen::Index> pivots, free;
  std::vector<Integer> residues;
  Integer modulus = 1;
  std::size_t used = 0;
  for (std::size_t k = 0; k < kMaxPrimes; ++k) {
    const std::uint64_t p = small_prime(k);
    const ModRref mr = rref_mod(sub, p);
    if (pivots.empty()) {
      if (static_cast<Eigen::Index>(mr.pivots.size()) != sub.rows()) continue;  // unlucky prime
      pivots = mr.pivots;
      for (Eigen::Index c = 0, q = 0; c < cols; ++c) {
        if (q < static_cast<Eigen::Index>(pivots.size()) && pivots[static_cast<std::size_t>(q)] == c)
          ++q;
        else
          free.push_back(c);
      }
      residues.assign(pivots.size() * free.size(), Integer(0));
    } else if (mr.pivots != pivots) {
      continue;
    }
    // CRT step: x = x + M * ((r - x) * M^{-1} mod p).
    const std::uint64_t minv = modp::inv(modp::reduce(modulus, p), p);
    for (std::size_t i = 0; i < pivots.size(); ++i)
      for (std::size_t f = 0; f < free.size(); ++f) {
        Integer& x = residues[i * free.size() + f];
        const std::uint64_t r = mr.rows[i][static_cast<std::size_t>(free[f])];
        const std::uint64_t xr = modp::reduce(x, p);
        const std::uint64_t t = (r + p - xr) % p * minv % p;
        if (t) x += modulus * t;
      }
    modulus *= p;
    ++used;
    // Reconstruct every few primes; verification dominates otherwise.
    if (used % 4 != 0 && k + 1 != kMaxPrimes) continue;
    QMatrix entries(static_cast<Eigen::Index>(pivots.size()), static_cast<Eigen::Index>(free.size()));
    bool ok = true;
    for (std::size_t i = 0; i < pivots.size() && ok; ++i)
      for (std::size_t f = 0; f < free.size() && ok; ++f) {
        Integer num, den;
        ok = rational_reconstruct(residues[i * free.size() + f], modulus, num, den);
        if (ok) entries(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(f)) = Rational(num, den);
      }
    if (!ok) continue;
    // Lex-first pivots over Q: each free column may only depend on earlier pivots.
    for (std::size_t i = 0; i < pivots.size() && ok; ++i)
      for (std::size_t f = 0; f < free.size() && ok; ++f)
        if (pivots[i] > free[f] && !entries(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(f)).is_zero())
          ok = false;
    if (!ok) return false;
    auto kernel = kernel_from(cols, pivots, free, entries);
    Eigen::Index bad = -1;
    if (!annihilates(all_rows, kernel, bad)) continue;
    out.rank = static_cast<Eigen::Index>(pivots.size());
    out.pivots = pivots;
    out.kernel = std::move(kernel);
    return true;
  }
  return false;
}

}  // namespace

SampledKernel sampled_kernel(const ZMatrix& rows) {
  std::vector<Eigen::Index> chosen = modp::independent_rows(rows);
  auto gather = [&] {
    ZMatrix sub(static_cast<Eigen::Index>(chosen.size()), rows.cols());
    for (std::size_t k = 0; k < chosen.size(); ++k) sub.row(static_cast<Eigen::Index>(k)) = rows.row(chosen[k]);
    return sub;
  };
  SampledKernel out;
  if (modular_kernel(gather(), rows, out)) return out;
  // Exact fallback: reduce, verify against every row, add a failing row.
  for (;;) {
    const Echelon e = row_reduce(gather());
    out.rank = e.rank();
    out.pivots = e.pivots;
    out.kernel = kernel_basis(e);
    Eigen::Index bad = -1;
    if (annihilates(rows, out.kernel, bad)) return out;
    chosen.push_back(bad);
    std::sort(chosen.begin(), chosen.end());
  }
}

}  // namespace coble
