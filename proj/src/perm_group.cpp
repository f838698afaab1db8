#include "coble/perm_group.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace coble {

Perm identity_perm(int n) {
  Perm p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  return p;
}

Perm compose(const Perm& a, const Perm& b) {
  Perm c(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) c[i] = a[static_cast<std::size_t>(b[i])];
  return c;
}

Perm inverse(const Perm& p) {
  Perm q(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) q[static_cast<std::size_t>(p[i])] = static_cast<int>(i);
  return q;
}

bool is_identity(const Perm& p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != static_cast<int>(i)) return false;
  return true;
}

StabilizerChain::StabilizerChain(int degree, const std::vector<Perm>& generators) : n_(degree) {
  for (const auto& g : generators)
    if (!is_identity(g)) insert(0, g);
}

Perm StabilizerChain::sift(Perm g, std::size_t from, std::size_t& depth) const {
  for (std::size_t i = from; i < levels_.size(); ++i) {
    const auto& t = levels_[i].transversal[static_cast<std::size_t>(g[static_cast<std::size_t>(levels_[i].point)])];
    if (t.empty()) {
      depth = i;
      return g;
    }
    g = compose(inverse(t), g);
  }
  depth = levels_.size();
  return g;
}

void StabilizerChain::insert(std::size_t level, const Perm& g) {
  std::size_t depth = 0;
  Perm r = sift(g, level, depth);
  if (is_identity(r)) return;
  if (depth == levels_.size()) {
    Level l;
    while (r[static_cast<std::size_t>(l.point)] == l.point) ++l.point;
    l.transversal.assign(static_cast<std::size_t>(n_), Perm());
    l.transversal[static_cast<std::size_t>(l.point)] = identity_perm(n_);
    l.orbit.push_back(l.point);
    base_.push_back(l.point);
    levels_.push_back(std::move(l));
  }
  add_generator(depth, r);
}

void StabilizerChain::add_generator(std::size_t level, const Perm& g) {
  levels_[level].gens.push_back(g);
  // g fixes the base points above `level`, so it belongs to every stabilizer
  // from the top down to `level`; each of those levels uses the generators
  // of all deeper levels too.
  for (std::size_t j = level + 1; j-- > 0;) {
    std::vector<Perm> gens;
    for (std::size_t k = j; k < levels_.size(); ++k)
      gens.insert(gens.end(), levels_[k].gens.begin(), levels_[k].gens.end());
    for (std::size_t k = 0; k < levels_[j].orbit.size(); ++k) {
      const int p = levels_[j].orbit[k];
      for (const auto& gen : gens) {
        const int q = gen[static_cast<std::size_t>(p)];
        if (levels_[j].transversal[static_cast<std::size_t>(q)].empty()) {
          levels_[j].transversal[static_cast<std::size_t>(q)] =
              compose(gen, levels_[j].transversal[static_cast<std::size_t>(p)]);
          levels_[j].orbit.push_back(q);
        }
      }
    }
    // Schreier generators go one level down. The orbit is copied because
    // insertion below may grow levels_.
    const std::vector<int> orb = levels_[j].orbit;
    for (int p : orb) {
      for (const auto& s : gens) {
        const Perm& up = levels_[j].transversal[static_cast<std::size_t>(p)];
        const Perm& usp = levels_[j].transversal[static_cast<std::size_t>(s[static_cast<std::size_t>(p)])];
        const Perm h = compose(inverse(usp), compose(s, up));
        if (!is_identity(h)) insert(j + 1, h);
      }
    }
  }
}

std::uint64_t StabilizerChain::order() const {
  std::uint64_t o = 1;
  for (const auto& l : levels_) o *= l.orbit.size();
  return o;
}

bool StabilizerChain::contains(const Perm& g) const {
  if (static_cast<int>(g.size()) != n_) return false;
  std::size_t depth = 0;
  return is_identity(sift(g, 0, depth));
}

std::vector<int> orbit(int degree, const std::vector<Perm>& generators, int point) {
  std::vector<char> seen(static_cast<std::size_t>(degree), 0);
  std::vector<int> out{point};
  seen[static_cast<std::size_t>(point)] = 1;
  for (std::size_t k = 0; k < out.size(); ++k)
    for (const auto& g : generators) {
      const int q = g[static_cast<std::size_t>(out[k])];
      if (!seen[static_cast<std::size_t>(q)]) {
        seen[static_cast<std::size_t>(q)] = 1;
        out.push_back(q);
      }
    }
  return out;
}

bool is_transitive(int degree, const std::vector<Perm>& generators) {
  return degree == 0 || static_cast<int>(orbit(degree, generators, 0).size()) == degree;
}

namespace {

int find(std::vector<int>& parent, int x) {
  while (parent[static_cast<std::size_t>(x)] != x) {
    parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    x = parent[static_cast<std::size_t>(x)];
  }
  return x;
}

}  // namespace

std::vector<int> minimal_block(int degree, const std::vector<Perm>& generators, int a, int b) {
  std::vector<int> parent(static_cast<std::size_t>(degree));
  std::iota(parent.begin(), parent.end(), 0);
  std::vector<std::pair<int, int>> queue;
  auto unite = [&](int x, int y) {
    x = find(parent, x);
    y = find(parent, y);
    if (x == y) return;
    if (y < x) std::swap(x, y);
    parent[static_cast<std::size_t>(y)] = x;
    queue.emplace_back(x, y);
  };
  unite(a, b);
  for (std::size_t k = 0; k < queue.size(); ++k) {
    const auto [x, y] = queue[k];
    for (const auto& g : generators) unite(g[static_cast<std::size_t>(x)], g[static_cast<std::size_t>(y)]);
  }
  std::vector<int> label(static_cast<std::size_t>(degree));
  for (int i = 0; i < degree; ++i) label[static_cast<std::size_t>(i)] = find(parent, i);
  return label;
}

std::vector<std::vector<int>> minimal_block_systems(int degree, const std::vector<Perm>& generators) {
  std::set<std::vector<int>> found;
  for (int b = 1; b < degree; ++b) {
    auto label = minimal_block(degree, generators, 0, b);
    const bool everything = std::all_of(label.begin(), label.end(), [](int l) { return l == 0; });
    if (!everything) found.insert(std::move(label));
  }
  return {found.begin(), found.end()};
}

}  // namespace coble
