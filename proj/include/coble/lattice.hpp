#pragma once

#include "coble/exact.hpp"

#include <optional>
#include <vector>

namespace coble {

/// Integer lattice given by a basis. The optional Gram matrix G defines the
/// inner product <u, v> = u^T G v on the ambient space; without it the
/// standard dot product is used.
struct IntLattice {
  std::vector<ZVector> basis;
  std::optional<QMatrix> gram;
};

/// Exact-rational LLL. The output spans the same lattice (the change of basis
/// is unimodular by construction) and satisfies size reduction and the Lovász
/// condition for `delta` under the given inner product. A Gram matrix that is
/// only an approximation of some real form changes which basis comes out,
/// never whether it is a basis.
/// Throws NotABasis for dependent input, InvalidInput for delta outside (1/4, 1).
IntLattice lll_reduce(const IntLattice& l, const Rational& delta = Rational(3, 4));

/// Inner product under the lattice's Gram matrix (or the dot product).
Rational inner(const IntLattice& l, const ZVector& u, const ZVector& v);

}  // namespace coble
