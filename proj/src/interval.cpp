#include "k3b/interval.hpp"

#include <algorithm>

#include "k3b/error.hpp"

namespace k3b {

Interval::Interval(const Rational& l, const Rational& h) : lo(l), hi(h) {
  if (hi < lo) throw Error(ErrorCode::InvalidArgument, "interval with lo > hi");
}

int Interval::certain_sign() const {
  if (sgn(lo) > 0) return 1;
  if (sgn(hi) < 0) return -1;
  return 0;
}

Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }
Interval operator-(const Interval& a, const Interval& b) { return {a.lo - b.hi, a.hi - b.lo}; }
Interval operator-(const Interval& a) { return {-a.hi, -a.lo}; }

Interval operator*(const Interval& a, const Interval& b) {
  if (a.lo == a.hi && b.lo == b.hi) return Interval(a.lo * b.lo);
  const Rational p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains_zero()) throw Error(ErrorCode::DivisionByZero, "interval division by an interval containing 0");
  return a * Interval(1 / b.hi, 1 / b.lo);
}

Interval hull(const Interval& a, const Interval& b) { return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)}; }

bool intersects(const Interval& a, const Interval& b) { return a.lo <= b.hi && b.lo <= a.hi; }

bool strictly_inside(const Interval& a, const Interval& b) { return b.lo < a.lo && a.hi < b.hi; }

Interval square(const Interval& a) {
  if (a.contains_zero()) return {Rational(0), std::max(a.lo * a.lo, a.hi * a.hi)};
  const Rational l = a.lo * a.lo, h = a.hi * a.hi;
  return {std::min(l, h), std::max(l, h)};
}

Rational floor_dyadic(const Rational& x, unsigned prec) {
  Integer n = x.get_num();
  n <<= prec;
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), n.get_mpz_t(), x.get_den_mpz_t());
  Rational r(q);
  r >>= prec;
  return r;
}

Rational ceil_dyadic(const Rational& x, unsigned prec) {
  Integer n = x.get_num();
  n <<= prec;
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), n.get_mpz_t(), x.get_den_mpz_t());
  Rational r(q);
  r >>= prec;
  return r;
}

Interval round_out(const Interval& a, unsigned prec) { return {floor_dyadic(a.lo, prec), ceil_dyadic(a.hi, prec)}; }

Interval sqrt(const Interval& a, unsigned prec) {
  if (sgn(a.hi) < 0) throw Error(ErrorCode::InvalidArgument, "sqrt of a negative interval");
  auto isqrt_floor = [prec](const Rational& x) {
    // floor(sqrt(floor(x * 4^prec))) / 2^prec <= sqrt(x).
    Integer n = x.get_num();
    n <<= 2 * prec;
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), n.get_mpz_t(), x.get_den_mpz_t());
    Integer s;
    mpz_sqrt(s.get_mpz_t(), q.get_mpz_t());
    Rational r(s);
    r >>= prec;
    return r;
  };
  auto isqrt_ceil = [prec](const Rational& x) {
    Integer n = x.get_num();
    n <<= 2 * prec;
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), n.get_mpz_t(), x.get_den_mpz_t());
    Integer s;
    mpz_sqrt(s.get_mpz_t(), q.get_mpz_t());
    if (s * s < q) s += 1;
    Rational r(s);
    r >>= prec;
    return r;
  };
  const Rational lo = sgn(a.lo) > 0 ? isqrt_floor(a.lo) : Rational(0);
  return {lo, isqrt_ceil(a.hi)};
}

Box operator+(const Box& a, const Box& b) { return {a.re + b.re, a.im + b.im}; }
Box operator-(const Box& a, const Box& b) { return {a.re - b.re, a.im - b.im}; }
Box operator-(const Box& a) { return {-a.re, -a.im}; }

Box operator*(const Box& a, const Box& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

Box operator/(const Box& a, const Box& b) {
  const Interval n = norm(b);
  if (n.contains_zero()) throw Error(ErrorCode::DivisionByZero, "box division by a box containing 0");
  const Box num = a * conj(b);
  return {num.re / n, num.im / n};
}

Box conj(const Box& a) { return {a.re, -a.im}; }

Interval norm(const Box& a) { return square(a.re) + square(a.im); }

bool intersects(const Box& a, const Box& b) { return intersects(a.re, b.re) && intersects(a.im, b.im); }

bool strictly_inside(const Box& a, const Box& b) { return strictly_inside(a.re, b.re) && strictly_inside(a.im, b.im); }

Box round_out(const Box& a, unsigned prec) { return {round_out(a.re, prec), round_out(a.im, prec)}; }

Box sqrt_real(const Interval& x, unsigned prec) {
  if (x.certain_sign() > 0) return {sqrt(x, prec), Interval(Rational(0))};
  if (x.certain_sign() < 0) return {Interval(Rational(0)), sqrt(-x, prec)};
  throw Error(ErrorCode::SignUndecided, "square root of an interval straddling 0");
}

Box eval(const QPoly& p, const Box& z, unsigned prec) {
  Box r(Rational(0));
  for (size_t i = p.coeffs().size(); i-- > 0;) {
    r = r * z + Box(p.coeffs()[i]);
    r = round_out(r, prec);
  }
  return r;
}

std::string to_string(const Interval& a) { return "[" + to_string(a.lo) + ", " + to_string(a.hi) + "]"; }

}  // namespace k3b
