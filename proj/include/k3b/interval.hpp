#pragma once

#include <string>

#include "k3b/poly.hpp"
#include "k3b/rational.hpp"

namespace k3b {

/// Closed interval [lo, hi] with rational endpoints. Operations are exact;
/// `round_out` coarsens endpoints to the dyadic grid 2^-prec, outward.
struct Interval {
  Rational lo, hi;

  Interval() = default;
  Interval(const Rational& x) : lo(x), hi(x) {}  // NOLINT: point intervals convert implicitly
  Interval(const Rational& l, const Rational& h);

  Rational width() const { return hi - lo; }
  Rational mid() const { return (lo + hi) / 2; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  bool contains_zero() const { return sgn(lo) <= 0 && sgn(hi) >= 0; }
  /// +1 / -1 when the whole interval is strictly on one side of 0, else 0.
  int certain_sign() const;
  double approx() const { return mid().get_d(); }
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator-(const Interval& a);
Interval operator*(const Interval& a, const Interval& b);
/// Throws DivisionByZero when b contains 0.
Interval operator/(const Interval& a, const Interval& b);
Interval hull(const Interval& a, const Interval& b);
bool intersects(const Interval& a, const Interval& b);
/// a is contained in the interior of b.
bool strictly_inside(const Interval& a, const Interval& b);
Interval square(const Interval& a);
/// Enclosure of sqrt over [max(lo,0), hi] at grid 2^-prec; throws
/// InvalidArgument when hi < 0.
Interval sqrt(const Interval& a, unsigned prec);

Rational floor_dyadic(const Rational& x, unsigned prec);
Rational ceil_dyadic(const Rational& x, unsigned prec);
Interval round_out(const Interval& a, unsigned prec);

/// Rectangle in C.
struct Box {
  Interval re, im;

  Box() = default;
  Box(Interval r, Interval i) : re(std::move(r)), im(std::move(i)) {}
  Box(const Rational& r) : re(r), im(Rational(0)) {}  // NOLINT

  Rational width() const { return std::max(re.width(), im.width()); }
  bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }
};

Box operator+(const Box& a, const Box& b);
Box operator-(const Box& a, const Box& b);
Box operator-(const Box& a);
Box operator*(const Box& a, const Box& b);
Box operator/(const Box& a, const Box& b);
Box conj(const Box& a);
/// |z|^2 as a real interval.
Interval norm(const Box& a);
bool intersects(const Box& a, const Box& b);
bool strictly_inside(const Box& a, const Box& b);
Box round_out(const Box& a, unsigned prec);
/// Principal square root enclosure of a box whose real interval is a
/// strictly nonzero real number (im = 0 exactly): sqrt of positive reals is
/// real, of negative reals is i*sqrt(-x).
Box sqrt_real(const Interval& x, unsigned prec);

/// Horner evaluation with rounding to `prec` after each step.
Box eval(const QPoly& p, const Box& z, unsigned prec);

std::string to_string(const Interval& a);

}  // namespace k3b
