#pragma once

// Twists of the gamma variety by a homomorphism from a Galois group to
// W(E6), and the search for rational points on them.
//
// L = Q[T]/(f) with f monic and integral. An element of L^10 is a 10 x n
// rational matrix whose row a holds the a-th basis-gamma coordinate in the
// power basis 1, T, ..., T^(n-1).

#include "coble/clebsch.hpp"
#include "coble/errors.hpp"
#include "coble/etale.hpp"
#include "coble/gamma.hpp"
#include "coble/surface.hpp"
#include "coble/weyl.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace coble {

struct GaloisFieldData {
  UniPoly modulus;
  /// Image of T under each generator of the Galois group.
  std::vector<UniPoly> automorphisms;
  /// Optional Z-basis of an order of L; the power basis is used otherwise.
  std::optional<std::vector<UniPoly>> order_basis;

  int degree() const { return modulus.degree(); }
};

/// Monic integral squarefree modulus, automorphisms mapping roots to roots,
/// and a generated group of order deg f. Throws InvalidInput otherwise.
void validate_field(const GaloisFieldData& field);

/// Matrix of the automorphism T -> image on the power basis; column j holds
/// image^j mod f.
QMatrix automorphism_matrix(const UniPoly& modulus, const UniPoly& image);

/// One W(E6) element per automorphism generator.
using RhoAssignment = std::vector<WE6Element>;

/// Whether the assignment on generators extends to a homomorphism on the
/// whole (enumerated) Galois group.
bool extends_to_homomorphism(const GaloisFieldData& field, const RhoAssignment& rho);

/// Action of a signed permutation of the 40 gammas on the ten basis
/// coordinates: P E = E M for the 40 x 10 expansion E.
QMatrix basis_action(const SignedPerm& p, const GammaBasis& basis);

struct TwistedModel {
  UniPoly modulus;
  /// Ten vectors of L^10: a Z-basis of the vectors of the descent space
  /// whose coordinates lie in the order (the power-basis order by default).
  std::vector<QMatrix> basis;
  /// Rational cubics in the ten model coordinates, on monomials(10, 3).
  std::vector<QVector> cubics;
  std::uint64_t seed = 0;
  int samples = 0;

  int degree() const { return modulus.degree(); }
  /// sum_k t_k basis_k
  QMatrix point(const QVector& t) const;
};

/// Solutions y of M_g sigma(y) = y for every generator sigma with g = rho(sigma).
/// DescentDimensionMismatch unless the space has dimension 10 and rho is a
/// homomorphism; InvalidInput for a bad field or rho of the wrong length.
TwistedModel build_descent_space(const GaloisFieldData& field, const RhoAssignment& rho,
                                 const GammaData& data = default_gamma_data());

/// Whether y satisfies the descent condition for every generator.
bool satisfies_descent(const GaloisFieldData& field, const RhoAssignment& rho, const QMatrix& y,
                       const GammaData& data = default_gamma_data());

/// Coordinates of y in the model basis, if y lies in their span.
std::optional<QVector> model_coordinates(const TwistedModel& model, const QMatrix& y);

/// Replaces the basis by the given vectors, which must lie in the span of the
/// current one and be independent (InvalidInput). Drops restricted cubics.
TwistedModel with_basis(const TwistedModel& model, const std::vector<QMatrix>& basis);

/// Sum over the complex embeddings of |y_a|^2, in doubles.
double embedding_norm(const TwistedModel& model, const QMatrix& y);

/// LLL under the Minkowski form, rounded to integers at scale 2^30. Keeps the
/// old basis when the largest embedding norm does not go down.
TwistedModel reduce_basis(const TwistedModel& model, const GaloisFieldData& field);

/// The 30 cubic relations in model coordinates, made rational by taking
/// traces tr(T^j R(sum t_k basis_k)). RelationTransportError unless their span
/// has dimension 30.
TwistedModel restrict_cubics(const TwistedModel& model, const GammaData& data = default_gamma_data());

/// Exact test of a point against every restricted cubic.
bool on_model(const TwistedModel& model, const ZVector& t);

/// Primitive t in [-bound, bound]^10 with first nonzero entry positive on
/// every cubic, in lexicographic order. The modular filter's random weights
/// come from `seed`; the result does not depend on it or on `workers`.
/// `progress(done, total)` is called after each block of the box, one call
/// at a time.
using SearchProgress = std::function<void(std::size_t done, std::size_t total)>;
std::vector<ZVector> point_search(const TwistedModel& model, int bound, int workers = 1, std::uint64_t seed = 1,
                                  const SearchProgress& progress = {});

/// The 40 gammas at y, as elements of L.
std::vector<EtaleElement> gammas_at(const TwistedModel& model, const QMatrix& y,
                                    const GammaData& data = default_gamma_data());

struct RecoveredSurface {
  PowerSums power_sums;
  ClebschVector clebsch;
  /// Empty when the equation problem failed; the reason is kept instead.
  std::optional<EquationSolution> equation;
  std::optional<ErrorKind> failure;
  std::string failure_detail;
};

/// Power sums, Clebsch invariants and the equation problem at a point of the
/// model. InvalidInput if t is off the model, ZeroVector if every power sum
/// vanishes. NoProperPentahedron and MultipleZeroes are recorded in the
/// result, not thrown.
RecoveredSurface recover_surface(const TwistedModel& model, const ZVector& t,
                                 const GammaData& data = default_gamma_data());

/// Necessary conditions for Q(sqrt d) to embed in a cyclic field of degree 4
/// or 8. InvalidInput for d = 0 or another degree.
bool cyclic_embedding_pretest(long long d, int target_degree);

}  // namespace coble
