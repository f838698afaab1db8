#include "coble/forms.hpp"

#include "coble/errors.hpp"

#include <memory>
#include <mutex>

namespace coble {

const MonomialTable& monomial_table(int nvars, int degree) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<MonomialTable>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{nvars, degree}];
  if (!slot) {
    slot = std::make_unique<MonomialTable>();
    slot->mons = monomials(nvars, degree);
    for (std::size_t i = 0; i < slot->mons.size(); ++i) slot->index.emplace(slot->mons[i], i);
  }
  return *slot;
}

Integer multinomial(const Exponent& e) {
  Integer num = 1, den = 1;
  int n = 0;
  for (int k : e)
    for (int i = 1; i <= k; ++i) {
      num *= ++n;
      den *= i;
    }
  return num / den;
}

Form::Form(int nvars, int degree) : nvars_(nvars), degree_(degree) {
  if (nvars < 1 || degree < 0) fail(ErrorKind::InvalidInput, "form needs at least one variable and degree >= 0");
  c_ = QVector::Zero(static_cast<Eigen::Index>(monomial_table(nvars, degree).mons.size()));
}

Form::Form(int nvars, int degree, QVector coeffs) : Form(nvars, degree) {
  if (coeffs.size() != c_.size())
    fail(ErrorKind::InvalidInput, "expected " + std::to_string(c_.size()) + " coefficients, got " + std::to_string(coeffs.size()));
  c_ = std::move(coeffs);
}

Form Form::variable(int nvars, int i) {
  Form f(nvars, 1);
  f.c_(i) = 1;
  return f;
}

Form Form::constant(int nvars, const Rational& c) {
  Form f(nvars, 0);
  f.c_(0) = c;
  return f;
}

Form Form::linear(const QVector& l) { return Form(static_cast<int>(l.size()), 1, l); }

Rational Form::coeff(const Exponent& e) const {
  const auto& t = monomial_table(nvars_, degree_);
  const auto it = t.index.find(e);
  return it == t.index.end() ? Rational(0) : c_(static_cast<Eigen::Index>(it->second));
}

Rational Form::operator()(const QVector& x) const { return monomial_values(x, degree_).dot(c_); }

Form Form::derivative(int var) const {
  if (degree_ == 0) return Form(nvars_, 0);
  Form out(nvars_, degree_ - 1);
  const auto& src = monomial_table(nvars_, degree_);
  const auto& dst = monomial_table(nvars_, degree_ - 1);
  const auto v = static_cast<std::size_t>(var);
  for (std::size_t m = 0; m < src.mons.size(); ++m) {
    const auto k = static_cast<Eigen::Index>(m);
    if (c_(k).is_zero() || src.mons[m][v] == 0) continue;
    Exponent e = src.mons[m];
    const int p = e[v]--;
    out.c_(static_cast<Eigen::Index>(dst.index.at(e))) += p * c_(k);
  }
  return out;
}

Form Form::pow(int k) const {
  Form acc = constant(nvars_, 1);
  for (int i = 0; i < k; ++i) acc = acc * *this;
  return acc;
}

Form Form::substitute(const std::vector<Form>& subs) const {
  if (static_cast<int>(subs.size()) != nvars_) fail(ErrorKind::InvalidInput, "wrong number of substitutes");
  const int n = subs.front().nvars();
  const int d = subs.front().degree();
  // Powers of each substitute, computed once.
  std::vector<std::vector<Form>> powers(subs.size());
  for (std::size_t i = 0; i < subs.size(); ++i) {
    powers[i].push_back(constant(n, 1));
    for (int k = 1; k <= degree_; ++k) powers[i].push_back(powers[i].back() * subs[i]);
  }
  Form out(n, d * degree_);
  const auto& t = monomial_table(nvars_, degree_);
  for (std::size_t m = 0; m < t.mons.size(); ++m) {
    const auto k = static_cast<Eigen::Index>(m);
    if (c_(k).is_zero()) continue;
    Form term = constant(n, c_(k));
    for (std::size_t i = 0; i < subs.size(); ++i) term = term * powers[i][static_cast<std::size_t>(t.mons[m][i])];
    out = out + term;
  }
  return out;
}

Form operator+(const Form& a, const Form& b) {
  if (a.nvars_ != b.nvars_ || a.degree_ != b.degree_) fail(ErrorKind::InvalidInput, "adding forms of different shape");
  Form out = a;
  out.c_ += b.c_;
  return out;
}

Form operator-(const Form& a, const Form& b) { return a + Rational(-1) * b; }

Form operator*(const Rational& s, const Form& a) {
  Form out = a;
  out.c_ *= s;
  return out;
}

Form operator*(const Form& a, const Form& b) {
  if (a.nvars_ != b.nvars_) fail(ErrorKind::InvalidInput, "multiplying forms in different variables");
  Form out(a.nvars_, a.degree_ + b.degree_);
  const auto& ta = monomial_table(a.nvars_, a.degree_);
  const auto& tb = monomial_table(b.nvars_, b.degree_);
  const auto& to = monomial_table(out.nvars_, out.degree_);
  Exponent e(static_cast<std::size_t>(a.nvars_));
  for (std::size_t i = 0; i < ta.mons.size(); ++i) {
    const Rational& x = a.c_(static_cast<Eigen::Index>(i));
    if (x.is_zero()) continue;
    for (std::size_t j = 0; j < tb.mons.size(); ++j) {
      const Rational& y = b.c_(static_cast<Eigen::Index>(j));
      if (y.is_zero()) continue;
      for (std::size_t v = 0; v < e.size(); ++v) e[v] = ta.mons[i][v] + tb.mons[j][v];
      out.c_(static_cast<Eigen::Index>(to.index.at(e))) += x * y;
    }
  }
  return out;
}

Form determinant(const std::vector<std::vector<Form>>& m) {
  const std::size_t n = m.size();
  if (n == 0) fail(ErrorKind::InvalidInput, "empty determinant");
  if (n == 1) return m[0][0];
  Form acc;
  bool first = true;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::vector<Form>> minor_rows;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Form> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      minor_rows.push_back(std::move(row));
    }
    Form term = m[0][j] * determinant(minor_rows);
    if (j % 2) term = Rational(-1) * term;
    acc = first ? term : acc + term;
    first = false;
  }
  return acc;
}

}  // namespace coble
