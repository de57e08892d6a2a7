#pragma once

#include <string>
#include <utility>
#include <vector>

#include "k3b/matrix.hpp"
#include "k3b/rational.hpp"

namespace k3b {

/// Univariate polynomial over Q, coefficients in ascending degree order.
/// The zero polynomial has no coefficients; otherwise the last one is nonzero.
class QPoly {
 public:
  QPoly() = default;
  explicit QPoly(QVector coeffs);
  QPoly(std::initializer_list<Rational> coeffs) : QPoly(QVector(coeffs)) {}

  static QPoly constant(const Rational& c);
  static QPoly monomial(size_t k, const Rational& c = 1);
  static QPoly x() { return monomial(1); }

  const QVector& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  Rational coeff(size_t k) const { return k < c_.size() ? c_[k] : Rational(0); }
  Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }

  Rational eval(const Rational& x) const;
  QPoly derivative() const;
  QPoly monic() const;
  /// p(q(x)).
  QPoly compose(const QPoly& q) const;

  QPoly& operator+=(const QPoly& o);
  QPoly& operator-=(const QPoly& o);
  QPoly& operator*=(const Rational& s);

  friend bool operator==(const QPoly& a, const QPoly& b) { return a.c_ == b.c_; }

 private:
  void trim();
  QVector c_;
};

QPoly operator+(QPoly a, const QPoly& b);
QPoly operator-(QPoly a, const QPoly& b);
QPoly operator-(const QPoly& a);
QPoly operator*(const QPoly& a, const QPoly& b);
QPoly operator*(const Rational& s, QPoly a);

/// Euclidean division; throws DivisionByZero for b = 0.
std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b);
QPoly operator%(const QPoly& a, const QPoly& b);
QPoly operator/(const QPoly& a, const QPoly& b);

/// Monic gcd (zero if both inputs are zero).
QPoly gcd(QPoly a, QPoly b);

struct XGcd {
  QPoly g, s, t;  // s*a + t*b = g, g monic
};
XGcd xgcd(const QPoly& a, const QPoly& b);

bool is_squarefree(const QPoly& p);

/// Evaluates p at a square matrix.
QMatrix eval_matrix(const QPoly& p, const QMatrix& m);

/// Characteristic polynomial det(xI - M), monic.
QPoly charpoly(const QMatrix& m);

/// Minimal polynomial of a square matrix, monic: the first linear relation
/// among I, M, M^2, ...
QPoly minimal_polynomial(const QMatrix& m);

/// Sturm sequence p, p', -rem(p, p'), ... (p squarefree not required).
std::vector<QPoly> sturm_sequence(const QPoly& p);

/// Number of distinct real roots of p in (a, b]; infinite ends via the
/// `*_infinite` flags.
size_t count_real_roots(const QPoly& p, const Rational& a, const Rational& b, bool a_infinite = false,
                        bool b_infinite = false);
size_t count_real_roots(const QPoly& p);

/// Human-readable form in `var`, highest degree first, e.g. "x^2+x-1".
std::string to_string(const QPoly& p, const std::string& var = "x");

}  // namespace k3b
