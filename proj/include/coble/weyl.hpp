#pragma once

// W(E6) as permutations of the 27 line labels and its signed action on the
// 40 gammas.
//
// Labels, in index order: l1..l6 (0..5), m1..m6 for l'_i (6..11), c12..c56
// for l''_ij (12..26, lexicographic).
//
// Conventions. Elements act on marked surfaces; g maps the label of a line
// to the label the same line carries after the change of marking, and
// (g h)(a) = g(h(a)). The signed permutation P_g of g satisfies
//   gamma(g . c) = lambda * P_g gamma(c),   (P v)_i = s_i v_{p(i)},
// for one common scalar lambda, with P_{gh} = P_g P_h.

#include "coble/gamma.hpp"
#include "coble/perm_group.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace coble {

inline constexpr int kLineCount = 27;

const std::vector<std::string>& line_labels();
/// Throws InvalidInput for an unknown label.
int label_index(const std::string& label);
/// Intersection pairing of distinct lines.
bool lines_meet(int a, int b);

struct WE6Element {
  std::array<std::uint8_t, kLineCount> perm{};

  static WE6Element identity();
  /// Throws InvalidInput unless p is a permutation of 0..26.
  static WE6Element from_perm(const Perm& p);
  Perm as_perm() const;
  WE6Element inverse() const;
  int order() const;
  /// Maps intersecting pairs to intersecting pairs.
  bool preserves_incidence() const;

  friend WE6Element operator*(const WE6Element& a, const WE6Element& b);
  friend bool operator==(const WE6Element&, const WE6Element&) = default;
};

/// sigma[i-1] is the image of i.
WE6Element from_s6(const std::array<int, 6>& sigma);
/// Transposition (i j) of points, 1-based.
WE6Element transposition(int i, int j);
/// Quadratic transformation centred at p1, p2, p3.
WE6Element i123_element();
/// l_i <-> l'_i, l''_ij fixed: the relabeling of the partner point.
WE6Element double_six_swap();

/// Signed permutation of the 40 gammas.
struct SignedPerm {
  std::array<std::uint8_t, kGammaCount> p{};
  std::array<std::int8_t, kGammaCount> s{};

  static SignedPerm identity();
  QVector apply(const QVector& v) const;
  /// Permutation of the 80 signed gammas: index i is +gamma_i, 40 + i is -gamma_i.
  Perm as_perm80() const;
  /// Action on the 40 pairs {gamma, -gamma}.
  Perm as_perm40() const;
  SignedPerm inverse() const;
  SignedPerm negated() const;

  friend SignedPerm operator*(const SignedPerm& a, const SignedPerm& b);
  friend bool operator==(const SignedPerm&, const SignedPerm&) = default;
};

/// How the common scalar of a sample is fixed. |lambda_k| is always the
/// square root of P2(after_k) / P2(before_k).
enum class ScalarSign {
  Positive,  // lambda_k > 0 for every sample
  Free,      // sign chosen per sample; the first sample has lambda > 0, which
             // fixes P up to this one global sign
};

/// The unique signed permutation P with after_k = lambda_k P before_k for
/// every sample pair. Throws InternalInconsistency when no such P exists or
/// it is not unique.
SignedPerm match_signed_permutation(const std::vector<std::pair<GammaVector, GammaVector>>& samples,
                                    ScalarSign mode = ScalarSign::Positive);

/// Oracle results for the generators and the partner map, derived by
/// evaluating gammas on seeded random naive configurations.
SignedPerm oracle_s6(const std::array<int, 6>& sigma, std::uint64_t seed = 7);
SignedPerm oracle_i123(std::uint64_t seed = 7);
/// The partner's scalar changes sign between samples, so its result is only
/// defined up to a global sign.
SignedPerm oracle_partner(std::uint64_t seed = 7);

/// Geometric action of from_s6(sigma) on a configuration: point i moves to
/// position sigma(i), representatives kept.
SixPointConfig act_s6(const std::array<int, 6>& sigma, const SixPointConfig& c);
/// Geometric action of I123: normalize to the naive chart, then invert.
SixPointConfig act_i123(const SixPointConfig& c);

/// The generated group, enumerated once: every element with its signed
/// permutation and its parity as a word in reflections.
class WeylGroup {
 public:
  /// Generators: transpositions (12),(23),(34),(45),(56) and I123.
  WeylGroup();

  std::size_t size() const { return elements_.size(); }
  const std::vector<WE6Element>& elements() const { return elements_; }
  const std::vector<WE6Element>& generators() const { return generators_; }
  std::optional<std::size_t> find(const WE6Element& g) const;
  bool contains(const WE6Element& g) const { return find(g).has_value(); }
  /// Throws NotInGroup for elements outside the group.
  const SignedPerm& gamma_action(const WE6Element& g) const;
  /// 0 for products of an even number of reflections.
  int parity(const WE6Element& g) const;
  const StabilizerChain& chain() const { return chain_; }

 private:
  struct Hash {
    std::size_t operator()(const std::array<std::uint8_t, kLineCount>& a) const;
  };
  std::vector<WE6Element> generators_;
  std::vector<WE6Element> elements_;
  std::vector<SignedPerm> actions_;
  std::vector<std::uint8_t> parity_;
  std::unordered_map<std::array<std::uint8_t, kLineCount>, std::uint32_t, Hash> index_;
  StabilizerChain chain_;
};

/// Shared instance, built on first use.
const WeylGroup& weyl_group();

struct GroupReport {
  std::uint64_t order = 0;
  bool transitive80 = false;
  /// The pairs {gamma, -gamma} form a block system and the only
  /// nontrivial one.
  bool sign_pairs_only_blocks = false;
  int block_count = 0;
  bool transitive40 = false;
  bool primitive40 = false;
};

/// Generators must lie in W(E6) (NotInGroup otherwise).
GroupReport verify_group(const std::vector<WE6Element>& generators);

/// The 120 Steiner trihedral pairs (9-line sets) and the 40 ways to split the
/// 27 lines into three of them, from the intersection graph alone.
std::vector<std::array<int, 9>> steiner_trihedral_pairs();
std::vector<std::array<int, 3>> steiner_triads();

/// Parses a generator given as the images of the canonical labels in order.
WE6Element parse_element(const std::vector<std::string>& images);
std::vector<std::string> format_element(const WE6Element& g);

}  // namespace coble
