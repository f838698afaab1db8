#include "coble/monomials.hpp"

namespace coble {

namespace {

void fill(int var, int left, Exponent& cur, std::vector<Exponent>& out) {
  const int n = static_cast<int>(cur.size());
  if (var == n - 1) {
    cur[static_cast<std::size_t>(var)] = left;
    out.push_back(cur);
    return;
  }
  for (int e = left; e >= 0; --e) {
    cur[static_cast<std::size_t>(var)] = e;
    fill(var + 1, left - e, cur, out);
  }
}

}  // namespace

std::vector<Exponent> monomials(int nvars, int degree) {
  std::vector<Exponent> out;
  if (nvars == 0) return out;
  Exponent cur(static_cast<std::size_t>(nvars), 0);
  fill(0, degree, cur, out);
  return out;
}

std::map<Exponent, std::size_t> monomial_index(int nvars, int degree) {
  std::map<Exponent, std::size_t> idx;
  const auto mons = monomials(nvars, degree);
  for (std::size_t i = 0; i < mons.size(); ++i) idx.emplace(mons[i], i);
  return idx;
}

}  // namespace coble
