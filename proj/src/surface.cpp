#include "coble/surface.hpp"

#include "coble/errors.hpp"
#include "coble/linalg.hpp"

namespace coble {

CubicForm4 CubicForm4::from_form(const Form& f) {
  if (f.nvars() != 4 || f.degree() != 3) fail(ErrorKind::InvalidInput, "not a cubic form in four variables");
  CubicForm4 out;
  for (std::size_t i = 0; i < 20; ++i) out.coeffs[i] = f.coeffs()(static_cast<Eigen::Index>(i));
  return out;
}

Form CubicForm4::form() const {
  QVector v(20);
  for (std::size_t i = 0; i < 20; ++i) v(static_cast<Eigen::Index>(i)) = coeffs[i];
  return Form(4, 3, v);
}

bool CubicForm4::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const Rational& x) { return x.is_zero(); });
}

CubicForm4 CubicForm4::normalized() const {
  if (is_zero()) fail(ErrorKind::ZeroVector, "zero cubic form");
  QVector v(20);
  for (std::size_t i = 0; i < 20; ++i) v(static_cast<Eigen::Index>(i)) = coeffs[i];
  ZVector z = primitive_integer(v);
  normalize_sign(z);
  CubicForm4 out;
  for (std::size_t i = 0; i < 20; ++i) out.coeffs[i] = Rational(z(static_cast<Eigen::Index>(i)));
  return out;
}

bool proportional(const CubicForm4& a, const CubicForm4& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  return a.normalized() == b.normalized();
}

std::vector<Form> cubics_through(const SixPointConfig& c) {
  QMatrix m(6, 10);
  for (int k = 0; k < 6; ++k) {
    QVector p(3);
    for (int i = 0; i < 3; ++i) p(i) = c.points[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)];
    m.row(k) = monomial_values(p, 3).transpose();
  }
  std::vector<Form> out;
  for (const auto& v : kernel_basis(m)) out.emplace_back(3, 3, v);
  return out;
}

CubicForm4 cubic_relation(const std::vector<Form>& f) {
  if (f.size() != 4) fail(ErrorKind::UnexpectedKernel, "expected 4 forms, got " + std::to_string(f.size()));
  const auto& mons = monomial_table(4, 3).mons;
  const int n = f.front().nvars();
  const int d = 3 * f.front().degree();
  const auto rows = static_cast<Eigen::Index>(monomial_table(n, d).mons.size());
  std::vector<std::vector<Form>> powers(4);
  for (std::size_t i = 0; i < 4; ++i) {
    powers[i].push_back(Form::constant(n, 1));
    for (int k = 1; k <= 3; ++k) powers[i].push_back(powers[i].back() * f[i]);
  }
  QMatrix m(rows, 20);
  for (std::size_t j = 0; j < 20; ++j) {
    Form p = Form::constant(n, 1);
    for (std::size_t i = 0; i < 4; ++i) p = p * powers[i][static_cast<std::size_t>(mons[j][i])];
    m.col(static_cast<Eigen::Index>(j)) = p.coeffs();
  }
  const auto k = kernel_basis(m);
  if (k.size() != 1)
    fail(ErrorKind::UnexpectedKernel, "cubic relation space has dimension " + std::to_string(k.size()));
  CubicForm4 out;
  for (std::size_t i = 0; i < 20; ++i) out.coeffs[i] = k[0](static_cast<Eigen::Index>(i));
  return out;
}

CubicForm4 surface_from_points(const SixPointConfig& c) {
  if (const auto w = degeneracy(c)) fail(ErrorKind::DegenerateConfig, w->describe());
  const auto f = cubics_through(c);
  if (f.size() != 4) fail(ErrorKind::UnexpectedKernel, "cubics through the points: dimension " + std::to_string(f.size()));
  return cubic_relation(f).normalized();
}

CubicForm4 pentahedral_expand(const PentahedralCoeffs& a) {
  Form sum(4, 1);
  Form f(4, 3);
  for (int i = 0; i < 4; ++i) {
    const Form x = Form::variable(4, i);
    f = f + a[static_cast<std::size_t>(i)] * x.pow(3);
    sum = sum + x;
  }
  return CubicForm4::from_form(f - a[4] * sum.pow(3));
}

Form hessian(const CubicForm4& f) {
  const Form g = f.form();
  std::vector<std::vector<Form>> m(4, std::vector<Form>(4));
  for (int i = 0; i < 4; ++i) {
    const Form gi = g.derivative(i);
    for (int j = 0; j < 4; ++j) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = gi.derivative(j);
  }
  return determinant(m);
}

namespace {

void require_quintic(const UniPoly& g) {
  if (g.degree() != 5 || g.leading() != 1) fail(ErrorKind::InvalidInput, "expected a monic polynomial of degree 5");
  if (!is_squarefree(g)) fail(ErrorKind::MultipleZeroes, "g has a multiple zero");
}

}  // namespace

std::array<EtaleElement, 4> descent_forms(const UniPoly& g) {
  require_quintic(g);
  const auto t = power_traces(g, 5);
  QMatrix row(1, 5);
  for (Eigen::Index j = 0; j < 5; ++j) row(0, j) = t[static_cast<std::size_t>(j)];
  const auto k = kernel_basis(row);
  if (k.size() != 4) fail(ErrorKind::InternalInconsistency, "trace kernel has dimension " + std::to_string(k.size()));
  std::array<EtaleElement, 4> out;
  for (std::size_t i = 0; i < 4; ++i) {
    std::vector<Rational> c(5);
    for (std::size_t j = 0; j < 5; ++j) c[j] = k[i](static_cast<Eigen::Index>(j));
    out[i] = EtaleElement::make(g, UniPoly(c));
  }
  return out;
}

CubicForm4 galois_descent(const UniPoly& g) {
  const auto c = descent_forms(g);
  const auto t = power_traces(g, 5);
  const EtaleElement T = EtaleElement::make(g, UniPoly({Rational(0), Rational(1)}));
  // tr of an element is the dot product of its residue with tr(T^j).
  auto trace = [&](const EtaleElement& x) {
    Rational s = 0;
    for (std::size_t j = 0; j < 5; ++j) s += x.residue.coeff(j) * t[j];
    return s;
  };
  // Powers C_i^k, k = 0..3.
  std::array<std::array<EtaleElement, 4>, 4> pw;
  for (std::size_t i = 0; i < 4; ++i) {
    pw[i][0] = EtaleElement::make(g, UniPoly::constant(1));
    for (std::size_t k = 1; k < 4; ++k) pw[i][k] = pw[i][k - 1] * c[i];
  }
  const auto& mons = monomial_table(4, 3).mons;
  CubicForm4 out;
  for (std::size_t m = 0; m < 20; ++m) {
    EtaleElement x = T;
    for (std::size_t i = 0; i < 4; ++i) x = x * pw[i][static_cast<std::size_t>(mons[m][i])];
    out.coeffs[m] = Rational(multinomial(mons[m])) * trace(x);
  }
  return out;
}

UniPoly pentahedral_polynomial(const SigmaVector& s) {
  return UniPoly({-s[4], s[3], -s[2], s[1], -s[0], Rational(1)});
}

EquationSolution equation_problem(const ClebschVector& v) {
  EquationSolution out;
  out.sigma = sigma_from_clebsch(v);
  out.g = pentahedral_polynomial(out.sigma);
  out.surface = galois_descent(out.g);
  return out;
}

}  // namespace coble
