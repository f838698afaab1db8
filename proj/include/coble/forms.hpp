#pragma once

// Homogeneous forms over Q in a fixed number of variables, dense in the
// descending-lex monomial order of monomials.hpp.

#include "coble/exact.hpp"
#include "coble/monomials.hpp"

namespace coble {

class Form {
 public:
  Form() = default;
  /// The zero form.
  Form(int nvars, int degree);
  /// Throws InvalidInput when the coefficient count is wrong.
  Form(int nvars, int degree, QVector coeffs);

  static Form variable(int nvars, int i);
  static Form constant(int nvars, const Rational& c);
  /// sum_i l(i) x_i
  static Form linear(const QVector& l);

  int nvars() const { return nvars_; }
  int degree() const { return degree_; }
  const QVector& coeffs() const { return c_; }
  bool is_zero() const { return c_.isZero(); }
  Rational coeff(const Exponent& e) const;

  Rational operator()(const QVector& x) const;
  Form derivative(int var) const;
  /// Substitute x_i -> subs[i]; all substitutes share one degree.
  Form substitute(const std::vector<Form>& subs) const;
  Form pow(int k) const;

  friend Form operator+(const Form& a, const Form& b);
  friend Form operator-(const Form& a, const Form& b);
  friend Form operator*(const Form& a, const Form& b);
  friend Form operator*(const Rational& s, const Form& a);
  friend bool operator==(const Form& a, const Form& b) {
    return a.nvars_ == b.nvars_ && a.degree_ == b.degree_ && a.c_ == b.c_;
  }

 private:
  int nvars_ = 0;
  int degree_ = 0;
  QVector c_;
};

/// Cached monomial list and index, shared and never invalidated.
struct MonomialTable {
  std::vector<Exponent> mons;
  std::map<Exponent, std::size_t> index;
};
const MonomialTable& monomial_table(int nvars, int degree);

/// Multinomial coefficient deg! / prod e_i!.
Integer multinomial(const Exponent& e);

/// Determinant of a square matrix of forms by cofactor expansion.
Form determinant(const std::vector<std::vector<Form>>& m);

}  // namespace coble
