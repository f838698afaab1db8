#pragma once

// Coble's 40 irrational invariants.
//
// Sign convention: every minor is taken with its three point indices in
// increasing order. With that choice the defining products depend only on
// the symbol's equivalence class, so each gamma is a single-valued function
// of the point representatives; the remaining +-1 ambiguity of the theory is
// carried by the signed permutations in weyl_e6.

#include "coble/exact.hpp"
#include "coble/plane_config.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace coble {

inline constexpr int kGammaCount = 40;
inline constexpr int kGammaRank = 10;

struct GammaSymbol {
  enum class Kind { TripleSplit, PairSplit };
  Kind kind = Kind::TripleSplit;
  // TripleSplit: (i0 i1 i2)(i3 i4 i5). PairSplit: (i0 i1)(i2 i3)(i4 i5).
  std::array<int, 6> idx{};

  /// Canonical representative of the same symbol. Throws InvalidInput unless
  /// idx is a permutation of 1..6.
  GammaSymbol canonical() const;

  std::string str() const;
  /// Parses "(123)(456)" or "(12)(34)(56)" and canonicalizes.
  static GammaSymbol parse(const std::string& text);

  friend bool operator==(const GammaSymbol&, const GammaSymbol&) = default;
  friend auto operator<=>(const GammaSymbol&, const GammaSymbol&) = default;
};

/// The 40 canonical symbols: 10 TripleSplit then 30 PairSplit, each block in
/// lexicographic order of the index tuple.
const std::vector<GammaSymbol>& enumerate_symbols();

/// Position of a symbol (canonicalized first) in enumerate_symbols().
int symbol_index(const GammaSymbol& s);

using GammaVector = QVector;

/// Value of one gamma at the stored representatives of c (no canonicalization).
Rational evaluate_raw(const SixPointConfig& c, const GammaSymbol& s);
/// All 40 at the stored representatives; no general-position check.
GammaVector evaluate_all_raw(const SixPointConfig& c);

/// Evaluation at canonical representatives. Throws DegenerateConfig unless c
/// is in general position.
Rational evaluate(const SixPointConfig& c, const GammaSymbol& s);
GammaVector evaluate_all(const SixPointConfig& c);

struct PowerSums {
  Rational p2, p4, p6, p8, p10;
  friend bool operator==(const PowerSums&, const PowerSums&) = default;
};

PowerSums power_sums(const GammaVector& g);

/// The six-term cubic identity among PairSplit invariants.
bool check_cubic_relation(const GammaVector& g);

/// Evaluation samples drawn in the naive chart with coordinates in
/// [-20, 20], evaluated on the naive representatives (integral values).
std::vector<GammaVector> sample_gammas(std::uint64_t seed, int count);

struct RelationSpace {
  Eigen::Index rank = 0;
  std::vector<QVector> kernel;  // relations, coefficients on the monomials
};

/// The fixed ten basis invariants and the expression of all 40 through them.
struct GammaBasis {
  std::array<int, kGammaRank> indices{};
  QMatrix expand;  // 40 x 10; gamma_j = sum_k expand(j, k) * gamma_{indices[k]}
};

/// Relations of the given degree holding on all samples. Degree 1 works on
/// the 40 gammas; degrees 2 and 3 on the ten basis coordinates (55 and 220
/// monomials, descending lex). Throws InsufficientSamples when there are
/// fewer samples than monomials or when no sample turned out redundant.
RelationSpace sampled_relation_space(int degree, const std::vector<GammaVector>& samples,
                                     const GammaBasis& basis);

/// Lexicographically first independent set of 10 symbols on the samples.
GammaBasis find_gamma_basis(const std::vector<GammaVector>& samples);

/// The ten basis coordinates of a gamma vector.
QVector basis_coordinates(const GammaVector& g, const GammaBasis& b);

/// Default seed and sample count used for the shared relation data.
inline constexpr std::uint64_t kDefaultSeed = 20240531;
inline constexpr int kDefaultSamples = 400;

/// Basis and cubic relations computed once from the default samples and then
/// shared. Thread-safe lazy initialization.
struct GammaData {
  std::uint64_t seed = 0;
  int samples = 0;
  GammaBasis basis;
  RelationSpace linear;
  RelationSpace quadratic;
  RelationSpace cubic;  // 30 relations on 220 monomials in the basis coordinates
};
const GammaData& default_gamma_data();
GammaData compute_gamma_data(std::uint64_t seed, int samples);

}  // namespace coble
