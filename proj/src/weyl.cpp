#include "coble/weyl.hpp"

#include "coble/errors.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace coble {

namespace {

// 0-based pair index of c_ij, i < j, both 0-based.
int c_index(int i, int j) {
  if (i > j) std::swap(i, j);
  int k = 12;
  for (int a = 0; a < 6; ++a)
    for (int b = a + 1; b < 6; ++b, ++k)
      if (a == i && b == j) return k;
  fail(ErrorKind::InvalidInput, "bad line index pair");
}

struct LineKind {
  char kind;  // 'l', 'm', 'c'
  int i, j;   // 0-based; j only for 'c'
};

LineKind line_kind(int a) {
  if (a < 6) return {'l', a, -1};
  if (a < 12) return {'m', a - 6, -1};
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j)
      if (c_index(i, j) == a) return {'c', i, j};
  fail(ErrorKind::InvalidInput, "bad line index");
}

}  // namespace

const std::vector<std::string>& line_labels() {
  static const std::vector<std::string> labels = [] {
    std::vector<std::string> v;
    for (int i = 1; i <= 6; ++i) v.push_back("l" + std::to_string(i));
    for (int i = 1; i <= 6; ++i) v.push_back("m" + std::to_string(i));
    for (int i = 1; i <= 6; ++i)
      for (int j = i + 1; j <= 6; ++j) v.push_back("c" + std::to_string(i) + std::to_string(j));
    return v;
  }();
  return labels;
}

int label_index(const std::string& label) {
  const auto& all = line_labels();
  const auto it = std::find(all.begin(), all.end(), label);
  if (it == all.end()) fail(ErrorKind::InvalidInput, "unknown line label '" + label + "'");
  return static_cast<int>(it - all.begin());
}

bool lines_meet(int a, int b) {
  if (a == b) return false;
  const LineKind x = line_kind(a), y = line_kind(b);
  auto in = [](int k, const LineKind& c) { return k == c.i || k == c.j; };
  if (x.kind == 'c' && y.kind == 'c') return !in(x.i, y) && !in(x.j, y);
  if (x.kind == 'c') return in(y.i, x);
  if (y.kind == 'c') return in(x.i, y);
  return x.kind != y.kind && x.i != y.i;
}

WE6Element WE6Element::identity() {
  WE6Element e;
  for (int i = 0; i < kLineCount; ++i) e.perm[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(i);
  return e;
}

WE6Element WE6Element::from_perm(const Perm& p) {
  if (p.size() != kLineCount) fail(ErrorKind::InvalidInput, "a line permutation needs 27 entries");
  std::array<bool, kLineCount> seen{};
  WE6Element e;
  for (int i = 0; i < kLineCount; ++i) {
    const int v = p[static_cast<std::size_t>(i)];
    if (v < 0 || v >= kLineCount || seen[static_cast<std::size_t>(v)])
      fail(ErrorKind::InvalidInput, "not a permutation of the 27 lines");
    seen[static_cast<std::size_t>(v)] = true;
    e.perm[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(v);
  }
  return e;
}

Perm WE6Element::as_perm() const { return Perm(perm.begin(), perm.end()); }

WE6Element WE6Element::inverse() const {
  WE6Element e;
  for (int i = 0; i < kLineCount; ++i) e.perm[perm[static_cast<std::size_t>(i)]] = static_cast<std::uint8_t>(i);
  return e;
}

int WE6Element::order() const {
  int k = 1;
  for (WE6Element g = *this; !(g == identity()); g = g * *this) ++k;
  return k;
}

bool WE6Element::preserves_incidence() const {
  for (int a = 0; a < kLineCount; ++a)
    for (int b = a + 1; b < kLineCount; ++b)
      if (lines_meet(a, b) != lines_meet(perm[static_cast<std::size_t>(a)], perm[static_cast<std::size_t>(b)]))
        return false;
  return true;
}

WE6Element operator*(const WE6Element& a, const WE6Element& b) {
  WE6Element c;
  for (int i = 0; i < kLineCount; ++i) c.perm[static_cast<std::size_t>(i)] = a.perm[b.perm[static_cast<std::size_t>(i)]];
  return c;
}

WE6Element from_s6(const std::array<int, 6>& sigma) {
  std::array<int, 6> s{};
  std::array<bool, 6> seen{};
  for (int i = 0; i < 6; ++i) {
    s[static_cast<std::size_t>(i)] = sigma[static_cast<std::size_t>(i)] - 1;
    if (s[static_cast<std::size_t>(i)] < 0 || s[static_cast<std::size_t>(i)] > 5 || seen[static_cast<std::size_t>(s[static_cast<std::size_t>(i)])])
      fail(ErrorKind::InvalidInput, "not a permutation of 1..6");
    seen[static_cast<std::size_t>(s[static_cast<std::size_t>(i)])] = true;
  }
  WE6Element e;
  for (int a = 0; a < kLineCount; ++a) {
    const LineKind k = line_kind(a);
    int img = 0;
    if (k.kind == 'l')
      img = s[static_cast<std::size_t>(k.i)];
    else if (k.kind == 'm')
      img = 6 + s[static_cast<std::size_t>(k.i)];
    else
      img = c_index(s[static_cast<std::size_t>(k.i)], s[static_cast<std::size_t>(k.j)]);
    e.perm[static_cast<std::size_t>(a)] = static_cast<std::uint8_t>(img);
  }
  return e;
}

WE6Element transposition(int i, int j) {
  std::array<int, 6> s{1, 2, 3, 4, 5, 6};
  std::swap(s[static_cast<std::size_t>(i - 1)], s[static_cast<std::size_t>(j - 1)]);
  return from_s6(s);
}

namespace {

WE6Element from_swaps(const std::vector<std::pair<std::string, std::string>>& swaps) {
  Perm p = identity_perm(kLineCount);
  for (const auto& [a, b] : swaps) std::swap(p[static_cast<std::size_t>(label_index(a))], p[static_cast<std::size_t>(label_index(b))]);
  return WE6Element::from_perm(p);
}

}  // namespace

WE6Element i123_element() {
  // The exceptional line over p_i' is the strict transform of the opposite
  // side of the centre triangle; the conic through all centres and two of
  // p4, p5, p6 becomes the line through the remaining two.
  return from_swaps({{"l1", "c23"}, {"l2", "c13"}, {"l3", "c12"}, {"m4", "c56"}, {"m5", "c46"}, {"m6", "c45"}});
}

WE6Element double_six_swap() {
  std::vector<std::pair<std::string, std::string>> s;
  for (int i = 1; i <= 6; ++i) s.emplace_back("l" + std::to_string(i), "m" + std::to_string(i));
  return from_swaps(s);
}

SignedPerm SignedPerm::identity() {
  SignedPerm e;
  for (int i = 0; i < kGammaCount; ++i) {
    e.p[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(i);
    e.s[static_cast<std::size_t>(i)] = 1;
  }
  return e;
}

QVector SignedPerm::apply(const QVector& v) const {
  QVector out(kGammaCount);
  for (int i = 0; i < kGammaCount; ++i) {
    const Rational& x = v(p[static_cast<std::size_t>(i)]);
    out(i) = s[static_cast<std::size_t>(i)] > 0 ? x : Rational(-x);
  }
  return out;
}

Perm SignedPerm::as_perm80() const {
  // P e_j = s_i e_i for p(i) = j; the same on negatives.
  Perm out(2 * kGammaCount);
  for (int i = 0; i < kGammaCount; ++i) {
    const int j = p[static_cast<std::size_t>(i)];
    const bool flip = s[static_cast<std::size_t>(i)] < 0;
    out[static_cast<std::size_t>(j)] = flip ? i + kGammaCount : i;
    out[static_cast<std::size_t>(j + kGammaCount)] = flip ? i : i + kGammaCount;
  }
  return out;
}

Perm SignedPerm::as_perm40() const {
  Perm out(kGammaCount);
  for (int i = 0; i < kGammaCount; ++i) out[p[static_cast<std::size_t>(i)]] = i;
  return out;
}

SignedPerm SignedPerm::inverse() const {
  // Q with Q P = id: (Q (P v))_j = t_j s_{q(j)} v_{p(q(j))}.
  SignedPerm q;
  for (int i = 0; i < kGammaCount; ++i) {
    const int j = p[static_cast<std::size_t>(i)];
    q.p[static_cast<std::size_t>(j)] = static_cast<std::uint8_t>(i);
    q.s[static_cast<std::size_t>(j)] = s[static_cast<std::size_t>(i)];
  }
  return q;
}

SignedPerm operator*(const SignedPerm& a, const SignedPerm& b) {
  // (A B v)_i = a.s_i (B v)_{a.p(i)} = a.s_i b.s_{a.p(i)} v_{b.p(a.p(i))}.
  SignedPerm c;
  for (int i = 0; i < kGammaCount; ++i) {
    const int j = a.p[static_cast<std::size_t>(i)];
    c.p[static_cast<std::size_t>(i)] = b.p[static_cast<std::size_t>(j)];
    c.s[static_cast<std::size_t>(i)] = static_cast<std::int8_t>(a.s[static_cast<std::size_t>(i)] * b.s[static_cast<std::size_t>(j)]);
  }
  return c;
}

namespace {

bool rational_sqrt(const Rational& q, Rational& root) {
  if (q.sign() <= 0) return false;
  const Integer n = numerator(q), d = denominator(q);
  const Integer sn = boost::multiprecision::sqrt(n), sd = boost::multiprecision::sqrt(d);
  if (sn * sn != n || sd * sd != d) return false;
  root = Rational(sn, sd);
  return true;
}

}  // namespace

SignedPerm SignedPerm::negated() const {
  SignedPerm n = *this;
  for (auto& x : n.s) x = static_cast<std::int8_t>(-x);
  return n;
}

namespace {

using Candidates = std::vector<std::vector<std::pair<int, int>>>;

Candidates filter(const Candidates& in, const GammaVector& after, const GammaVector& before, const Rational& lambda) {
  Candidates out(in.size());
  for (std::size_t i = 0; i < in.size(); ++i)
    for (const auto& [j, sg] : in[i]) {
      const Rational v = lambda * before(j);
      if (after(static_cast<Eigen::Index>(i)) == (sg > 0 ? v : Rational(-v))) out[i].emplace_back(j, sg);
    }
  return out;
}

bool all_nonempty(const Candidates& c) {
  return std::all_of(c.begin(), c.end(), [](const auto& v) { return !v.empty(); });
}

}  // namespace

SignedPerm match_signed_permutation(const std::vector<std::pair<GammaVector, GammaVector>>& samples,
                                    ScalarSign mode) {
  if (samples.empty()) fail(ErrorKind::InternalInconsistency, "no samples to match");
  // candidates[i] holds (j, sign) pairs still consistent with every sample.
  Candidates candidates(kGammaCount);
  for (int i = 0; i < kGammaCount; ++i)
    for (int j = 0; j < kGammaCount; ++j) {
      candidates[static_cast<std::size_t>(i)].emplace_back(j, 1);
      candidates[static_cast<std::size_t>(i)].emplace_back(j, -1);
    }
  bool first = true;
  for (const auto& [after, before] : samples) {
    Rational lambda;
    if (!rational_sqrt(power_sums(after).p2 / power_sums(before).p2, lambda))
      fail(ErrorKind::InternalInconsistency, "gamma vectors are not proportional up to signs");
    Candidates pos = filter(candidates, after, before, lambda);
    if (mode == ScalarSign::Positive || first || all_nonempty(pos)) {
      candidates = std::move(pos);
    } else {
      candidates = filter(candidates, after, before, -lambda);
    }
    first = false;
  }
  SignedPerm out;
  std::array<bool, kGammaCount> used{};
  for (int i = 0; i < kGammaCount; ++i) {
    const auto& c = candidates[static_cast<std::size_t>(i)];
    if (c.size() != 1) fail(ErrorKind::InternalInconsistency, "no unique signed match for gamma " + std::to_string(i));
    const auto [j, sg] = c.front();
    if (used[static_cast<std::size_t>(j)]) fail(ErrorKind::InternalInconsistency, "signed match is not a permutation");
    used[static_cast<std::size_t>(j)] = true;
    out.p[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(j);
    out.s[static_cast<std::size_t>(i)] = static_cast<std::int8_t>(sg);
  }
  return out;
}

SixPointConfig act_s6(const std::array<int, 6>& sigma, const SixPointConfig& c) {
  SixPointConfig out;
  for (std::size_t i = 0; i < 6; ++i) out.points[static_cast<std::size_t>(sigma[i] - 1)] = c.points[i];
  return out;
}

SixPointConfig act_i123(const SixPointConfig& c) { return naive_config(cremona_i123(normalize_to_standard(c).coords)); }

namespace {

constexpr int kOracleSamples = 6;

template <typename Map>
SignedPerm oracle(std::uint64_t seed, Map after_of, ScalarSign mode = ScalarSign::Positive) {
  Rng rng(seed);
  std::vector<std::pair<GammaVector, GammaVector>> samples;
  while (static_cast<int>(samples.size()) < kOracleSamples) {
    const NaiveCoords n = random_naive(rng);
    try {
      const SixPointConfig after = after_of(n);
      if (!general_position(after)) continue;
      samples.emplace_back(evaluate_all_raw(after), evaluate_all_raw(naive_config(n)));
    } catch (const MathError& e) {
      if (e.kind() != ErrorKind::NotDefinedHere) throw;
    }
  }
  return match_signed_permutation(samples, mode);
}

}  // namespace

SignedPerm oracle_s6(const std::array<int, 6>& sigma, std::uint64_t seed) {
  return oracle(seed, [&](const NaiveCoords& n) { return act_s6(sigma, naive_config(n)); });
}

SignedPerm oracle_i123(std::uint64_t seed) {
  return oracle(seed, [](const NaiveCoords& n) { return naive_config(cremona_i123(n)); });
}

SignedPerm oracle_partner(std::uint64_t seed) {
  return oracle(seed, [](const NaiveCoords& n) { return naive_config(partner(n)); }, ScalarSign::Free);
}

std::size_t WeylGroup::Hash::operator()(const std::array<std::uint8_t, kLineCount>& a) const {
  std::uint64_t h = 1469598103934665603ULL;
  for (auto b : a) h = (h ^ b) * 1099511628211ULL;
  return static_cast<std::size_t>(h);
}

namespace {

std::vector<WE6Element> default_generators() {
  return {transposition(1, 2), transposition(2, 3), transposition(3, 4), transposition(4, 5), transposition(5, 6),
          i123_element()};
}

std::vector<Perm> as_perms(const std::vector<WE6Element>& gens) {
  std::vector<Perm> out;
  for (const auto& g : gens) out.push_back(g.as_perm());
  return out;
}

}  // namespace

WeylGroup::WeylGroup() : generators_(default_generators()), chain_(kLineCount, as_perms(generators_)) {
  std::vector<SignedPerm> gen_actions;
  for (int k = 1; k <= 5; ++k) {
    std::array<int, 6> s{1, 2, 3, 4, 5, 6};
    std::swap(s[static_cast<std::size_t>(k - 1)], s[static_cast<std::size_t>(k)]);
    gen_actions.push_back(oracle_s6(s));
  }
  gen_actions.push_back(oracle_i123());

  elements_.push_back(WE6Element::identity());
  actions_.push_back(SignedPerm::identity());
  parity_.push_back(0);
  index_.emplace(elements_.back().perm, 0);
  for (std::size_t k = 0; k < elements_.size(); ++k) {
    for (std::size_t t = 0; t < generators_.size(); ++t) {
      const WE6Element y = elements_[k] * generators_[t];
      const SignedPerm py = actions_[k] * gen_actions[t];
      const auto par = static_cast<std::uint8_t>(parity_[k] ^ 1U);
      const auto it = index_.find(y.perm);
      if (it != index_.end()) {
        if (!(actions_[it->second] == py))
          fail(ErrorKind::InternalInconsistency, "gamma action is not a function of the line permutation");
        if (parity_[it->second] != par) fail(ErrorKind::InternalInconsistency, "reflection parity is not well defined");
        continue;
      }
      index_.emplace(y.perm, static_cast<std::uint32_t>(elements_.size()));
      elements_.push_back(y);
      actions_.push_back(py);
      parity_.push_back(par);
    }
  }
  if (elements_.size() != chain_.order())
    fail(ErrorKind::InternalInconsistency, "enumeration and stabilizer chain disagree on the group order");
}

std::optional<std::size_t> WeylGroup::find(const WE6Element& g) const {
  const auto it = index_.find(g.perm);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const SignedPerm& WeylGroup::gamma_action(const WE6Element& g) const {
  const auto k = find(g);
  if (!k) fail(ErrorKind::NotInGroup, "line permutation is not in W(E6)");
  return actions_[*k];
}

int WeylGroup::parity(const WE6Element& g) const {
  const auto k = find(g);
  if (!k) fail(ErrorKind::NotInGroup, "line permutation is not in W(E6)");
  return parity_[*k];
}

const WeylGroup& weyl_group() {
  static const WeylGroup group;
  return group;
}

GroupReport verify_group(const std::vector<WE6Element>& generators) {
  GroupReport r;
  r.order = StabilizerChain(kLineCount, as_perms(generators)).order();
  std::vector<Perm> g80, g40;
  for (const auto& g : generators) {
    const SignedPerm& p = weyl_group().gamma_action(g);
    g80.push_back(p.as_perm80());
    g40.push_back(p.as_perm40());
  }
  const int n80 = 2 * kGammaCount;
  r.transitive80 = !g80.empty() && is_transitive(n80, g80);
  const auto pairs = minimal_block(n80, g80, 0, kGammaCount);
  r.block_count = static_cast<int>(std::set<int>(pairs.begin(), pairs.end()).size());
  if (r.transitive80) {
    std::vector<int> expected(static_cast<std::size_t>(n80));
    for (int i = 0; i < n80; ++i) expected[static_cast<std::size_t>(i)] = i % kGammaCount;
    const auto systems = minimal_block_systems(n80, g80);
    r.sign_pairs_only_blocks = systems.size() == 1 && systems.front() == expected;
  }
  r.transitive40 = !g40.empty() && is_transitive(kGammaCount, g40);
  r.primitive40 = r.transitive40 && minimal_block_systems(kGammaCount, g40).empty();
  return r;
}

std::vector<std::array<int, 9>> steiner_trihedral_pairs() {
  std::vector<std::array<int, 3>> planes;
  for (int a = 0; a < kLineCount; ++a)
    for (int b = a + 1; b < kLineCount; ++b)
      for (int c = b + 1; c < kLineCount; ++c)
        if (lines_meet(a, b) && lines_meet(a, c) && lines_meet(b, c)) planes.push_back({a, b, c});
  auto plane = [](int a, int b, int c) { return lines_meet(a, b) && lines_meet(a, c) && lines_meet(b, c); };
  auto disjoint = [](const std::array<int, 3>& x, const std::array<int, 3>& y) {
    for (int a : x)
      for (int b : y)
        if (a == b) return false;
    return true;
  };
  std::set<std::array<int, 9>> found;
  for (std::size_t r1 = 0; r1 < planes.size(); ++r1)
    for (std::size_t r2 = r1 + 1; r2 < planes.size(); ++r2) {
      if (!disjoint(planes[r1], planes[r2])) continue;
      for (std::size_t r3 = r2 + 1; r3 < planes.size(); ++r3) {
        if (!disjoint(planes[r1], planes[r3]) || !disjoint(planes[r2], planes[r3])) continue;
        std::array<int, 3> b = planes[r2], c = planes[r3];
        bool grid = false;
        std::sort(b.begin(), b.end());
        do {
          std::sort(c.begin(), c.end());
          do {
            grid = true;
            for (int k = 0; k < 3 && grid; ++k) grid = plane(planes[r1][static_cast<std::size_t>(k)], b[static_cast<std::size_t>(k)], c[static_cast<std::size_t>(k)]);
          } while (!grid && std::next_permutation(c.begin(), c.end()));
        } while (!grid && std::next_permutation(b.begin(), b.end()));
        if (!grid) continue;
        std::array<int, 9> set{};
        for (int k = 0; k < 3; ++k) {
          set[static_cast<std::size_t>(k)] = planes[r1][static_cast<std::size_t>(k)];
          set[static_cast<std::size_t>(k + 3)] = planes[r2][static_cast<std::size_t>(k)];
          set[static_cast<std::size_t>(k + 6)] = planes[r3][static_cast<std::size_t>(k)];
        }
        std::sort(set.begin(), set.end());
        found.insert(set);
      }
    }
  return {found.begin(), found.end()};
}

std::vector<std::array<int, 3>> steiner_triads() {
  const auto pairs = steiner_trihedral_pairs();
  auto disjoint = [](const std::array<int, 9>& x, const std::array<int, 9>& y) {
    for (int a : x)
      if (std::binary_search(y.begin(), y.end(), a)) return false;
    return true;
  };
  std::vector<std::array<int, 3>> out;
  for (std::size_t a = 0; a < pairs.size(); ++a)
    for (std::size_t b = a + 1; b < pairs.size(); ++b) {
      if (!disjoint(pairs[a], pairs[b])) continue;
      for (std::size_t c = b + 1; c < pairs.size(); ++c)
        if (disjoint(pairs[a], pairs[c]) && disjoint(pairs[b], pairs[c]))
          out.push_back({static_cast<int>(a), static_cast<int>(b), static_cast<int>(c)});
    }
  return out;
}

WE6Element parse_element(const std::vector<std::string>& images) {
  if (images.size() != kLineCount) fail(ErrorKind::InvalidInput, "an element lists the images of all 27 labels");
  Perm p;
  for (const auto& s : images) p.push_back(label_index(s));
  return WE6Element::from_perm(p);
}

std::vector<std::string> format_element(const WE6Element& g) {
  std::vector<std::string> out;
  for (auto v : g.perm) out.push_back(line_labels()[v]);
  return out;
}

}  // namespace coble
