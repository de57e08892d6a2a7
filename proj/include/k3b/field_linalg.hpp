#pragma once

#include <optional>
#include <string>
#include <vector>

#include "k3b/matrix.hpp"
#include "k3b/number_field.hpp"

namespace k3b {

/// A column vector with entries in one number field.
using KVector = std::vector<FieldElement>;

KVector to_kvector(const QVector& v, const FieldPtr& field);
/// Smallest field (along quadratic-extension parents) holding every entry.
FieldPtr common_field(const KVector& v);
KVector coerce(const KVector& v, const FieldPtr& target);
KVector conjugate(const KVector& v);

KVector operator+(const KVector& a, const KVector& b);
KVector operator-(const KVector& a, const KVector& b);
KVector operator*(const FieldElement& s, const KVector& v);
KVector operator*(const QMatrix& m, const KVector& v);

/// v^T G w (bilinear; no conjugation).
FieldElement pair(const QMatrix& gram, const KVector& v, const KVector& w);
/// (v . conj(v)), a conj-fixed element.
FieldElement hermitian_norm(const QMatrix& gram, const KVector& v);

/// For each power-basis index k, the rational vector of k-th coefficients.
std::vector<QVector> coefficient_vectors(const KVector& v);

/// Expands K-linear equations in rational unknowns into rational rows: the
/// equation sum_j row[j] x_j = 0 over K (degree m) becomes m equations over
/// Q, one per power-basis coefficient.
QMatrix expand_rows(const std::vector<KVector>& rows, size_t unknowns);

/// Rational x with sum_j x_j columns[j] = rhs, if any.
std::optional<QVector> solve_rational(const std::vector<KVector>& columns, const KVector& rhs);

/// Coordinates y in K^k with v = sum_j y_j basis[j] for a rational basis,
/// if v lies in the K-span.
std::optional<KVector> coordinates_in(const Basis& basis, const KVector& v);

/// Basis of {x in K^n : A x = 0} where A is given by its rows, each
/// normalized so its first nonzero coordinate is 1.
std::vector<KVector> nullspace_over(const std::vector<KVector>& rows, const FieldPtr& field, size_t n);

bool is_zero(const KVector& v);
std::string to_string(const KVector& v, const std::string& var = "g");

}  // namespace k3b
