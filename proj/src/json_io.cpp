#include "coble/json_io.hpp"

#include "coble/errors.hpp"

namespace coble::io {

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& what) { fail(ErrorKind::InvalidInput, path + ": " + what); }

const json& array_of(const json& j, const std::string& path, std::optional<std::size_t> size = std::nullopt) {
  if (!j.is_array()) bad(path, "expected an array");
  if (size && j.size() != *size) bad(path, "expected " + std::to_string(*size) + " entries, got " + std::to_string(j.size()));
  return j;
}

const json& field_of(const json& j, const char* key, const std::string& path) {
  if (!j.is_object()) bad(path, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) bad(path, std::string("missing field \"") + key + "\"");
  return *it;
}

std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

}  // namespace

json to_json(const Rational& q) { return to_string(q); }

Rational rational_from_json(const json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (!j.is_string()) bad(path, "expected a rational string");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const MathError& e) {
    bad(path, e.what());
  }
}

json to_json(const UniPoly& p) {
  json out = json::array();
  for (const auto& c : p.coeffs()) out.push_back(to_json(c));
  return out;
}

UniPoly poly_from_json(const json& j, const std::string& path) {
  array_of(j, path);
  std::vector<Rational> c;
  for (std::size_t i = 0; i < j.size(); ++i) c.push_back(rational_from_json(j[i], at(path, i)));
  return UniPoly(c);
}

json to_json(const SixPointConfig& c) {
  json out = json::array();
  for (const auto& p : c.points) out.push_back({to_json(p[0]), to_json(p[1]), to_json(p[2])});
  return out;
}

SixPointConfig config_from_json(const json& j) {
  array_of(j, "config", 6);
  SixPointConfig c;
  for (std::size_t i = 0; i < 6; ++i) {
    array_of(j[i], at("config", i), 3);
    for (std::size_t k = 0; k < 3; ++k) c.points[i][k] = rational_from_json(j[i][k], at(at("config", i), k));
    if (std::all_of(c.points[i].begin(), c.points[i].end(), [](const Rational& x) { return x.is_zero(); }))
      bad(at("config", i), "the zero vector is not a point");
  }
  return c;
}

json gamma_to_json(const GammaVector& g) {
  json out = json::object();
  const auto& symbols = enumerate_symbols();
  for (std::size_t i = 0; i < symbols.size(); ++i) out[symbols[i].str()] = to_json(g(static_cast<Eigen::Index>(i)));
  return out;
}

GammaVector gamma_from_json(const json& j) {
  if (!j.is_object() || j.size() != kGammaCount) bad("gammas", "expected an object with 40 symbols");
  GammaVector g(kGammaCount);
  std::vector<bool> seen(kGammaCount, false);
  for (const auto& [key, value] : j.items()) {
    int i = 0;
    try {
      i = symbol_index(GammaSymbol::parse(key));
    } catch (const MathError& e) {
      bad("gammas." + key, e.what());
    }
    if (seen[static_cast<std::size_t>(i)]) bad("gammas." + key, "symbol given twice");
    seen[static_cast<std::size_t>(i)] = true;
    g(i) = rational_from_json(value, "gammas." + key);
  }
  return g;
}

json to_json(const PowerSums& p) {
  return {{"p2", to_json(p.p2)}, {"p4", to_json(p.p4)}, {"p6", to_json(p.p6)}, {"p8", to_json(p.p8)}, {"p10", to_json(p.p10)}};
}

json to_json(const ClebschVector& c) {
  json out = json::array();
  for (const auto& x : c.v) out.push_back(to_json(x));
  return out;
}

ClebschVector clebsch_from_json(const json& j) {
  array_of(j, "clebsch", 5);
  ClebschVector c;
  for (std::size_t i = 0; i < 5; ++i) c.v[i] = rational_from_json(j[i], at("clebsch", i));
  return c;
}

json sigma_to_json(const SigmaVector& s) {
  json out = json::array();
  for (const auto& x : s) out.push_back(to_json(x));
  return out;
}

json to_json(const CubicForm4& f) {
  json c = json::array();
  for (const auto& x : f.coeffs) c.push_back(to_json(x));
  return {{"monomial_order", kCubicOrderTag}, {"coefficients", c}};
}

CubicForm4 cubic_from_json(const json& j) {
  const json& tag = field_of(j, "monomial_order", "surface");
  if (!tag.is_string() || tag.get<std::string>() != kCubicOrderTag)
    bad("surface.monomial_order", std::string("expected \"") + kCubicOrderTag + "\"");
  const json& c = field_of(j, "coefficients", "surface");
  array_of(c, "surface.coefficients", 20);
  CubicForm4 f;
  for (std::size_t i = 0; i < 20; ++i) f.coeffs[i] = rational_from_json(c[i], at("surface.coefficients", i));
  return f;
}

json to_json(const EquationSolution& s) {
  return {{"sigma", sigma_to_json(s.sigma)}, {"pentahedral_polynomial", to_json(s.g)}, {"surface", to_json(s.surface)}};
}

json to_json(const WE6Element& g) { return format_element(g); }

WE6Element element_from_json(const json& j, const std::string& path) {
  array_of(j, path, kLineCount);
  std::vector<std::string> images;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_string()) bad(at(path, i), "expected a line label");
    images.push_back(j[i].get<std::string>());
  }
  try {
    return parse_element(images);
  } catch (const MathError& e) {
    bad(path, e.what());
  }
}

json to_json(const ZVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (v(i) > std::numeric_limits<long long>::max() || v(i) < std::numeric_limits<long long>::min())
      out.push_back(to_string(v(i)));
    else
      out.push_back(v(i).convert_to<long long>());
  }
  return out;
}

json matrix_to_json(const QMatrix& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    out.push_back(row);
  }
  return out;
}

QMatrix matrix_from_json(const json& j, const std::string& path) {
  array_of(j, path);
  if (j.empty()) bad(path, "empty matrix");
  array_of(j[0], at(path, 0));
  const std::size_t cols = j[0].size();
  QMatrix m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < j.size(); ++r) {
    array_of(j[r], at(path, r), cols);
    for (std::size_t c = 0; c < cols; ++c) m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rational_from_json(j[r][c], at(at(path, r), c));
  }
  return m;
}

TwistJob job_from_json(const json& j) {
  TwistJob job;
  const json& f = field_of(j, "field", "job");
  job.field.modulus = poly_from_json(field_of(f, "modulus", "field"), "field.modulus");
  const json& autos = array_of(field_of(f, "automorphisms", "field"), "field.automorphisms");
  for (std::size_t i = 0; i < autos.size(); ++i) job.field.automorphisms.push_back(poly_from_json(autos[i], at("field.automorphisms", i)));
  if (const auto it = f.find("order_basis"); it != f.end() && !it->is_null()) {
    array_of(*it, "field.order_basis");
    std::vector<UniPoly> ob;
    for (std::size_t i = 0; i < it->size(); ++i) ob.push_back(poly_from_json((*it)[i], at("field.order_basis", i)));
    job.field.order_basis = ob;
  }

  // rho: a list in generator order, or an object keyed by generator index.
  const json& rho = field_of(j, "rho", "job");
  if (rho.is_array()) {
    for (std::size_t i = 0; i < rho.size(); ++i) job.rho.push_back(element_from_json(rho[i], at("rho", i)));
  } else if (rho.is_object()) {
    job.rho.assign(rho.size(), WE6Element::identity());
    std::vector<bool> seen(rho.size(), false);
    for (const auto& [key, value] : rho.items()) {
      std::size_t i = 0;
      try {
        std::size_t used = 0;
        i = std::stoul(key, &used);
        if (used != key.size()) throw std::invalid_argument(key);
      } catch (const std::exception&) {
        bad("rho." + key, "generator keys are indices 0, 1, ...");
      }
      if (i >= rho.size() || seen[i]) bad("rho." + key, "generator indices must be 0 .. " + std::to_string(rho.size() - 1));
      seen[i] = true;
      job.rho[i] = element_from_json(value, "rho." + key);
    }
  } else {
    bad("rho", "expected a list or an object of generator images");
  }

  if (const auto it = j.find("bound"); it != j.end()) {
    if (!it->is_number_integer() || it->get<long long>() < 0 || it->get<long long>() > 1000) bad("bound", "expected an integer in [0, 1000]");
    job.bound = it->get<int>();
  }
  if (const auto it = j.find("seed"); it != j.end()) {
    if (!it->is_number_integer() || (!it->is_number_unsigned() && it->get<long long>() < 0))
      bad("seed", "expected a non-negative integer");
    job.seed = it->get<std::uint64_t>();
  }
  if (const auto it = j.find("basis"); it != j.end() && !it->is_null()) {
    array_of(*it, "basis", kGammaRank);
    std::vector<QMatrix> b;
    for (std::size_t i = 0; i < it->size(); ++i) b.push_back(matrix_from_json((*it)[i], at("basis", i)));
    job.basis = b;
  }
  return job;
}

}  // namespace coble::io
