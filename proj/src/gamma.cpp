#include "coble/gamma.hpp"

#include "coble/errors.hpp"
#include "coble/linalg.hpp"
#include "coble/monomials.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace coble {

using Kind = GammaSymbol::Kind;

GammaSymbol GammaSymbol::canonical() const {
  std::array<int, 6> s = idx;
  std::sort(s.begin(), s.end());
  for (int i = 0; i < 6; ++i)
    if (s[static_cast<std::size_t>(i)] != i + 1) fail(ErrorKind::InvalidInput, "gamma symbol must use 1..6 once each");
  GammaSymbol out{kind, idx};
  auto& a = out.idx;
  if (kind == Kind::TripleSplit) {
    std::sort(a.begin(), a.begin() + 3);
    std::sort(a.begin() + 3, a.end());
    if (a[0] != 1) std::rotate(a.begin(), a.begin() + 3, a.end());
  } else {
    for (int p = 0; p < 6; p += 2)
      if (a[static_cast<std::size_t>(p)] > a[static_cast<std::size_t>(p + 1)])
        std::swap(a[static_cast<std::size_t>(p)], a[static_cast<std::size_t>(p + 1)]);
    while (a[0] != 1) std::rotate(a.begin(), a.begin() + 2, a.end());
  }
  return out;
}

std::string GammaSymbol::str() const {
  std::string out;
  const int group = kind == Kind::TripleSplit ? 3 : 2;
  for (int i = 0; i < 6; ++i) {
    if (i % group == 0) out += '(';
    out += static_cast<char>('0' + idx[static_cast<std::size_t>(i)]);
    if (i % group == group - 1) out += ')';
  }
  return out;
}

GammaSymbol GammaSymbol::parse(const std::string& text) {
  std::vector<std::string> groups;
  std::string cur;
  bool open = false;
  for (char ch : text) {
    if (ch == '(') {
      if (open) fail(ErrorKind::InvalidInput, "bad gamma symbol '" + text + "'");
      open = true;
      cur.clear();
    } else if (ch == ')') {
      if (!open) fail(ErrorKind::InvalidInput, "bad gamma symbol '" + text + "'");
      open = false;
      groups.push_back(cur);
    } else if (ch >= '1' && ch <= '6' && open) {
      cur += ch;
    } else if (ch != ' ') {
      fail(ErrorKind::InvalidInput, "bad gamma symbol '" + text + "'");
    }
  }
  GammaSymbol s;
  if (groups.size() == 2 && groups[0].size() == 3 && groups[1].size() == 3)
    s.kind = Kind::TripleSplit;
  else if (groups.size() == 3 && groups[0].size() == 2 && groups[1].size() == 2 && groups[2].size() == 2)
    s.kind = Kind::PairSplit;
  else
    fail(ErrorKind::InvalidInput, "bad gamma symbol '" + text + "'");
  std::size_t k = 0;
  for (const auto& g : groups)
    for (char ch : g) s.idx[k++] = ch - '0';
  return s.canonical();
}

const std::vector<GammaSymbol>& enumerate_symbols() {
  static const std::vector<GammaSymbol> symbols = [] {
    std::vector<GammaSymbol> triples, pairs;
    std::array<int, 6> p{1, 2, 3, 4, 5, 6};
    do {
      const GammaSymbol t = GammaSymbol{Kind::TripleSplit, p}.canonical();
      if (t.idx == p) triples.push_back(t);
      const GammaSymbol q = GammaSymbol{Kind::PairSplit, p}.canonical();
      if (q.idx == p) pairs.push_back(q);
    } while (std::next_permutation(p.begin(), p.end()));
    std::vector<GammaSymbol> all = triples;  // next_permutation already walks in lex order
    all.insert(all.end(), pairs.begin(), pairs.end());
    return all;
  }();
  return symbols;
}

int symbol_index(const GammaSymbol& s) {
  static const std::map<GammaSymbol, int> index = [] {
    std::map<GammaSymbol, int> m;
    const auto& all = enumerate_symbols();
    for (std::size_t i = 0; i < all.size(); ++i) m.emplace(all[i], static_cast<int>(i));
    return m;
  }();
  return index.at(s.canonical());
}

namespace {

// All 20 sorted minors, indexed by a bitmask of the three points.
struct Minors {
  std::array<Rational, 64> m;
  Rational d2;

  explicit Minors(const SixPointConfig& c) {
    for (int i = 1; i <= 6; ++i)
      for (int j = i + 1; j <= 6; ++j)
        for (int k = j + 1; k <= 6; ++k) m[mask(i, j, k)] = minor(c, i, j, k);
    d2 = coble::d2(c);
  }
  static std::size_t mask(int i, int j, int k) { return (1U << (i - 1)) | (1U << (j - 1)) | (1U << (k - 1)); }
  const Rational& operator()(int i, int j, int k) const { return m[mask(i, j, k)]; }
};

Rational evaluate_with(const Minors& mm, const GammaSymbol& s) {
  const auto& a = s.idx;
  if (s.kind == Kind::TripleSplit) return mm(a[0], a[1], a[2]) * mm(a[3], a[4], a[5]) * mm.d2;
  return mm(a[0], a[2], a[3]) * mm(a[1], a[2], a[3]) * mm(a[2], a[4], a[5]) * mm(a[3], a[4], a[5]) *
         mm(a[4], a[0], a[1]) * mm(a[5], a[0], a[1]);
}

SixPointConfig checked_canonical(const SixPointConfig& c) {
  if (auto w = degeneracy(c)) fail(ErrorKind::DegenerateConfig, w->describe());
  return c.canonical();
}

}  // namespace

Rational evaluate_raw(const SixPointConfig& c, const GammaSymbol& s) { return evaluate_with(Minors(c), s.canonical()); }

GammaVector evaluate_all_raw(const SixPointConfig& c) {
  const Minors mm(c);
  const auto& symbols = enumerate_symbols();
  GammaVector g(kGammaCount);
  for (int i = 0; i < kGammaCount; ++i) g(i) = evaluate_with(mm, symbols[static_cast<std::size_t>(i)]);
  return g;
}

Rational evaluate(const SixPointConfig& c, const GammaSymbol& s) { return evaluate_raw(checked_canonical(c), s); }

GammaVector evaluate_all(const SixPointConfig& c) { return evaluate_all_raw(checked_canonical(c)); }

PowerSums power_sums(const GammaVector& g) {
  PowerSums p;
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    const Rational sq = g(i) * g(i);
    Rational t = sq;
    p.p2 += t;
    t *= sq;
    p.p4 += t;
    t *= sq;
    p.p6 += t;
    t *= sq;
    p.p8 += t;
    t *= sq;
    p.p10 += t;
  }
  return p;
}

bool check_cubic_relation(const GammaVector& g) {
  auto at = [&](const char* s) { return g(symbol_index(GammaSymbol::parse(s))); };
  return at("(12)(34)(56)") * at("(23)(45)(16)") * at("(14)(36)(25)") ==
         at("(12)(36)(45)") * at("(34)(25)(16)") * at("(56)(14)(23)");
}

std::vector<GammaVector> sample_gammas(std::uint64_t seed, int count) {
  Rng rng(seed);
  std::vector<GammaVector> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) out.push_back(evaluate_all_raw(naive_config(random_naive(rng))));
  return out;
}

namespace {

// Sample rows scaled to primitive integer vectors.
ZMatrix integer_rows(const std::vector<QVector>& rows) {
  ZMatrix z(static_cast<Eigen::Index>(rows.size()), rows.empty() ? 0 : rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) z.row(static_cast<Eigen::Index>(i)) = primitive_integer(rows[i]).transpose();
  return z;
}

}  // namespace

GammaBasis find_gamma_basis(const std::vector<GammaVector>& samples) {
  if (static_cast<int>(samples.size()) <= kGammaCount)
    fail(ErrorKind::InsufficientSamples, "need more than 40 samples to fix the basis invariants");
  const SampledKernel sk = sampled_kernel(integer_rows(samples));
  if (sk.rank != kGammaRank)
    fail(ErrorKind::InternalInconsistency, "linear span of the gammas has rank " + std::to_string(sk.rank));
  GammaBasis b;
  for (int k = 0; k < kGammaRank; ++k) b.indices[static_cast<std::size_t>(k)] = static_cast<int>(sk.pivots[static_cast<std::size_t>(k)]);
  // Each kernel vector has a 1 in one free column and minus the RREF entries
  // in the pivot columns, so it reads off gamma_f = sum_k rref(k, f) gamma_{b_k}.
  b.expand = QMatrix::Zero(kGammaCount, kGammaRank);
  for (int k = 0; k < kGammaRank; ++k) b.expand(b.indices[static_cast<std::size_t>(k)], k) = 1;
  std::size_t free_pos = 0;
  for (int j = 0; j < kGammaCount; ++j) {
    if (std::find(b.indices.begin(), b.indices.end(), j) != b.indices.end()) continue;
    const QVector& v = sk.kernel[free_pos++];
    for (int k = 0; k < kGammaRank; ++k) b.expand(j, k) = -v(b.indices[static_cast<std::size_t>(k)]);
  }
  return b;
}

QVector basis_coordinates(const GammaVector& g, const GammaBasis& b) {
  QVector y(kGammaRank);
  for (int k = 0; k < kGammaRank; ++k) y(k) = g(b.indices[static_cast<std::size_t>(k)]);
  return y;
}

RelationSpace sampled_relation_space(int degree, const std::vector<GammaVector>& samples, const GammaBasis& basis) {
  if (degree < 1 || degree > 3) fail(ErrorKind::InvalidInput, "relation degree must be 1, 2 or 3");
  std::vector<QVector> rows;
  rows.reserve(samples.size());
  for (const auto& g : samples) {
    if (degree == 1)
      rows.push_back(g);
    else
      rows.push_back(monomial_values(basis_coordinates(g, basis), degree));
  }
  const Eigen::Index cols = degree == 1 ? kGammaCount : static_cast<Eigen::Index>(monomials(kGammaRank, degree).size());
  if (static_cast<Eigen::Index>(samples.size()) < cols)
    fail(ErrorKind::InsufficientSamples, std::to_string(samples.size()) + " samples for " + std::to_string(cols) +
                                             " monomials");
  const SampledKernel sk = sampled_kernel(integer_rows(rows));
  if (sk.rank >= static_cast<Eigen::Index>(samples.size()))
    fail(ErrorKind::InsufficientSamples, "every sample was independent; the span is not saturated");
  return {sk.rank, sk.kernel};
}

namespace {

// The basis invariants as found on samples; any other outcome means the
// sampling or the elimination is broken.
constexpr const char* kBasisSymbols[kGammaRank] = {"(123)(456)",   "(124)(356)",   "(125)(346)",   "(134)(256)",
                                                   "(135)(246)",   "(12)(34)(56)", "(12)(35)(46)", "(13)(24)(56)",
                                                   "(13)(25)(46)", "(14)(25)(36)"};

}  // namespace

GammaData compute_gamma_data(std::uint64_t seed, int samples) {
  GammaData d;
  d.seed = seed;
  d.samples = samples;
  const auto s = sample_gammas(seed, samples);
  d.basis = find_gamma_basis(s);
  for (int k = 0; k < kGammaRank; ++k)
    if (d.basis.indices[static_cast<std::size_t>(k)] != symbol_index(GammaSymbol::parse(kBasisSymbols[k])))
      fail(ErrorKind::InternalInconsistency, "sampled basis invariants differ from the fixed choice");
  d.linear = sampled_relation_space(1, s, d.basis);
  d.quadratic = sampled_relation_space(2, s, d.basis);
  d.cubic = sampled_relation_space(3, s, d.basis);
  return d;
}

const GammaData& default_gamma_data() {
  static const GammaData data = compute_gamma_data(kDefaultSeed, kDefaultSamples);
  return data;
}

}  // namespace coble
