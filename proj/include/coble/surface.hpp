#pragma once

// Cubic surfaces in P^3 as 20 coefficients in the glex order of
// monomials(4, 3): x0^3, x0^2 x1, x0^2 x2, ..., x3^3.

#include "coble/clebsch.hpp"
#include "coble/etale.hpp"
#include "coble/forms.hpp"
#include "coble/plane_config.hpp"

#include <array>

namespace coble {

inline constexpr const char* kCubicOrderTag = "glex-x0x1x2x3-v1";

struct CubicForm4 {
  std::array<Rational, 20> coeffs;

  static CubicForm4 from_form(const Form& f);
  Form form() const;
  bool is_zero() const;
  /// Coprime integers with the first nonzero coefficient positive.
  CubicForm4 normalized() const;
  friend bool operator==(const CubicForm4&, const CubicForm4&) = default;
};

/// Same projective surface: proportional coefficient vectors.
bool proportional(const CubicForm4& a, const CubicForm4& b);

/// Basis of the ternary cubics through the six points (the kernel basis of
/// the 6 x 10 evaluation matrix, reduced echelon order).
std::vector<Form> cubics_through(const SixPointConfig& c);

/// The cubic relation G(F_1, ..., F_4) = 0 among four ternary forms of equal
/// degree, from the (degree 3 * deg F) expansion of all 20 monomials.
/// UnexpectedKernel unless the relation is unique up to scaling.
CubicForm4 cubic_relation(const std::vector<Form>& f);

/// Normalized cubic_relation(cubics_through(c)); DegenerateConfig unless c is
/// in general position.
CubicForm4 surface_from_points(const SixPointConfig& c);

/// a0 X0^3 + ... + a3 X3^3 - a4 (X0 + ... + X3)^3.
CubicForm4 pentahedral_expand(const PentahedralCoeffs& a);

/// det of the second partials; 35 coefficients in the order of monomials(4, 4).
Form hessian(const CubicForm4& f);

/// Trace-zero basis C_0..C_3 of Q[T]/(g), from the reduced echelon kernel of
/// (tr 1, tr T, ..., tr T^4).
std::array<EtaleElement, 4> descent_forms(const UniPoly& g);

/// tr(T * (C_0 X_0 + ... + C_3 X_3)^3), coefficientwise. g must be monic of
/// degree 5 (InvalidInput) and separable (MultipleZeroes).
CubicForm4 galois_descent(const UniPoly& g);

/// T^5 - s1 T^4 + s2 T^3 - s3 T^2 + s4 T - s5.
UniPoly pentahedral_polynomial(const SigmaVector& s);

struct EquationSolution {
  SigmaVector sigma;
  UniPoly g;
  CubicForm4 surface;
};

/// sigma_from_clebsch, then galois_descent. NoProperPentahedron for E = 0,
/// MultipleZeroes when g is inseparable.
EquationSolution equation_problem(const ClebschVector& v);

}  // namespace coble
