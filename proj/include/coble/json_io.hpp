#pragma once

// JSON encodings of the module types. Rationals are "p/q" strings,
// polynomials are coefficient arrays from the constant term up.
// Decoders throw MathError(InvalidInput) with the offending path.

#include "coble/clebsch.hpp"
#include "coble/gamma.hpp"
#include "coble/plane_config.hpp"
#include "coble/surface.hpp"
#include "coble/twist.hpp"
#include "coble/weyl.hpp"

#include "json.hpp"

namespace coble::io {

using json = nlohmann::json;

json to_json(const Rational& q);
/// Accepts rational strings and JSON integers.
Rational rational_from_json(const json& j, const std::string& path);

json to_json(const UniPoly& p);
UniPoly poly_from_json(const json& j, const std::string& path);

/// Six arrays of three rationals.
json to_json(const SixPointConfig& c);
SixPointConfig config_from_json(const json& j);

/// Object from canonical symbol strings to rationals.
json gamma_to_json(const GammaVector& g);
GammaVector gamma_from_json(const json& j);

json to_json(const PowerSums& p);
json to_json(const ClebschVector& c);
ClebschVector clebsch_from_json(const json& j);
json sigma_to_json(const SigmaVector& s);

/// {"monomial_order": tag, "coefficients": [20 rationals]}
json to_json(const CubicForm4& f);
CubicForm4 cubic_from_json(const json& j);

json to_json(const EquationSolution& s);

json to_json(const WE6Element& g);
WE6Element element_from_json(const json& j, const std::string& path);

json to_json(const ZVector& v);

/// Ten rows of n rationals.
json matrix_to_json(const QMatrix& m);
QMatrix matrix_from_json(const json& j, const std::string& path);

/// Job file of the twist command.
struct TwistJob {
  GaloisFieldData field;
  RhoAssignment rho;
  int bound = 2;
  std::uint64_t seed = 1;
  /// Replaces the reduced descent basis when present.
  std::optional<std::vector<QMatrix>> basis;
};
TwistJob job_from_json(const json& j);

}  // namespace coble::io
