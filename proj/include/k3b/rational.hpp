#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace k3b {

using Rational = mpq_class;
using Integer = mpz_class;
using QVector = std::vector<Rational>;

/// Parses "p", "-p" or "p/q" (q != 0) into a canonical rational.
/// Throws Error(ParseError) on anything else.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" (or "p" when q == 1).
std::string to_string(const Rational& x);

/// Comma-separated list of rationals, e.g. "1/2,0".
QVector parse_rational_list(std::string_view text);
std::string to_string(const QVector& v);

int sign(const Rational& x);

Integer lcm_of_denominators(const QVector& v);
bool is_integral(const QVector& v);
bool is_zero(const QVector& v);

QVector operator+(const QVector& a, const QVector& b);
QVector operator-(const QVector& a, const QVector& b);
QVector operator*(const Rational& s, const QVector& v);
Rational dot(const QVector& a, const QVector& b);

/// Scales v by a positive rational so that it becomes a primitive integer
/// vector (gcd of entries 1). Zero vectors are returned unchanged.
QVector primitive_integral(const QVector& v);

}  // namespace k3b
