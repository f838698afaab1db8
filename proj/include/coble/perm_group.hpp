#pragma once

// Permutation groups on {0, ..., n-1}: stabilizer chains and block systems.

#include <cstdint>
#include <vector>

namespace coble {

/// p[i] is the image of i.
using Perm = std::vector<int>;

Perm identity_perm(int n);
/// (a * b)(i) = a(b(i)): apply b first.
Perm compose(const Perm& a, const Perm& b);
Perm inverse(const Perm& p);
bool is_identity(const Perm& p);

/// Deterministic Schreier-Sims. Base points are taken as the first point
/// moved by a residue, so the chain depends only on the generator order.
class StabilizerChain {
 public:
  StabilizerChain(int degree, const std::vector<Perm>& generators);

  std::uint64_t order() const;
  bool contains(const Perm& g) const;
  const std::vector<int>& base() const { return base_; }

 private:
  struct Level {
    int point = 0;
    std::vector<Perm> gens;
    std::vector<int> orbit;
    std::vector<Perm> transversal;  // indexed by point; empty when not in the orbit
  };

  // Residue of g after sifting from `from` on; `depth` receives the level
  // where sifting stopped (levels_.size() when it went through).
  Perm sift(Perm g, std::size_t from, std::size_t& depth) const;
  void insert(std::size_t level, const Perm& g);
  void add_generator(std::size_t level, const Perm& g);

  int n_;
  std::vector<int> base_;
  std::vector<Level> levels_;
};

/// Orbit of a point under the generators.
std::vector<int> orbit(int degree, const std::vector<Perm>& generators, int point);
bool is_transitive(int degree, const std::vector<Perm>& generators);

/// Finest block system with a and b in one block (Atkinson). Returns for
/// every point the smallest point of its block.
std::vector<int> minimal_block(int degree, const std::vector<Perm>& generators, int a, int b);

/// All nontrivial blocks containing 0 that are minimal blocks of some pair
/// {0, b}, deduplicated, as block-label vectors. For a transitive group the
/// action is primitive iff this is empty.
std::vector<std::vector<int>> minimal_block_systems(int degree, const std::vector<Perm>& generators);

}  // namespace coble
