#include "k3b/field_linalg.hpp"

#include <algorithm>

#include "k3b/error.hpp"

namespace k3b {

KVector to_kvector(const QVector& v, const FieldPtr& field) {
  KVector out;
  out.reserve(v.size());
  for (const auto& x : v) out.emplace_back(field, x);
  return out;
}

FieldPtr common_field(const KVector& v) {
  if (v.empty()) return rationals();
  FieldPtr f = v.front().field();
  for (const auto& x : v) f = common_field(f, x.field());
  return f;
}

KVector coerce(const KVector& v, const FieldPtr& target) {
  KVector out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(coerce(x, target));
  return out;
}

KVector conjugate(const KVector& v) {
  KVector out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(nf_conjugate(x));
  return out;
}

KVector operator+(const KVector& a, const KVector& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "vector sum");
  KVector out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

KVector operator-(const KVector& a, const KVector& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "vector difference");
  KVector out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

KVector operator*(const FieldElement& s, const KVector& v) {
  KVector out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = s * v[i];
  return out;
}

KVector operator*(const QMatrix& m, const KVector& v) {
  if (m.cols() != v.size()) throw Error(ErrorCode::DimensionMismatch, "matrix times vector");
  const FieldPtr f = common_field(v);
  KVector out(m.rows(), FieldElement::zero(f));
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0) out[i] += m(i, j) * v[j];
  return out;
}

FieldElement pair(const QMatrix& gram, const KVector& v, const KVector& w) {
  if (gram.rows() != v.size() || gram.cols() != w.size()) throw Error(ErrorCode::DimensionMismatch, "pairing");
  const KVector gw = gram * w;
  FieldElement s = FieldElement::zero(common_field(common_field(v), common_field(w)));
  for (size_t i = 0; i < v.size(); ++i) s += v[i] * gw[i];
  return s;
}

FieldElement hermitian_norm(const QMatrix& gram, const KVector& v) { return pair(gram, v, conjugate(v)); }

std::vector<QVector> coefficient_vectors(const KVector& v) {
  const FieldPtr f = common_field(v);
  const KVector w = coerce(v, f);
  std::vector<QVector> out(f->degree(), QVector(v.size(), 0));
  for (size_t i = 0; i < w.size(); ++i)
    for (size_t k = 0; k < f->degree(); ++k) out[k][i] = w[i].coeffs()[k];
  return out;
}

QMatrix expand_rows(const std::vector<KVector>& rows, size_t unknowns) {
  FieldPtr f = rationals();
  for (const auto& r : rows) f = common_field(f, common_field(r));
  const size_t m = f->degree();
  QMatrix out(rows.size() * m, unknowns);
  for (size_t e = 0; e < rows.size(); ++e) {
    if (rows[e].size() != unknowns) throw Error(ErrorCode::DimensionMismatch, "equation width");
    for (size_t j = 0; j < unknowns; ++j) {
      const FieldElement x = coerce(rows[e][j], f);
      for (size_t k = 0; k < m; ++k) out(e * m + k, j) = x.coeffs()[k];
    }
  }
  return out;
}

std::optional<QVector> solve_rational(const std::vector<KVector>& columns, const KVector& rhs) {
  const size_t n = rhs.size();
  std::vector<KVector> rows(n, KVector(columns.size() + 1));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < columns.size(); ++j) {
      if (columns[j].size() != n) throw Error(ErrorCode::DimensionMismatch, "column height");
      rows[i][j] = columns[j][i];
    }
    rows[i][columns.size()] = rhs[i];
  }
  const QMatrix aug = expand_rows(rows, columns.size() + 1);
  QMatrix a(aug.rows(), columns.size());
  QVector b(aug.rows());
  for (size_t i = 0; i < aug.rows(); ++i) {
    for (size_t j = 0; j < columns.size(); ++j) a(i, j) = aug(i, j);
    b[i] = aug(i, columns.size());
  }
  return solve(a, b);
}

std::optional<KVector> coordinates_in(const Basis& basis, const KVector& v) {
  const FieldPtr f = common_field(v);
  std::vector<QVector> coords;
  for (const auto& c : coefficient_vectors(v)) {
    auto y = coordinates_in(basis, c);
    if (!y) return std::nullopt;
    coords.push_back(std::move(*y));
  }
  KVector out;
  for (size_t j = 0; j < basis.size(); ++j) {
    QVector e(f->degree());
    for (size_t k = 0; k < f->degree(); ++k) e[k] = coords[k][j];
    out.emplace_back(f, std::move(e));
  }
  return out;
}

std::vector<KVector> nullspace_over(const std::vector<KVector>& rows, const FieldPtr& field, size_t n) {
  std::vector<KVector> a;
  for (const auto& r : rows) {
    if (r.size() != n) throw Error(ErrorCode::DimensionMismatch, "row width");
    a.push_back(coerce(r, field));
  }
  std::vector<size_t> pivots;
  size_t row = 0;
  for (size_t col = 0; col < n && row < a.size(); ++col) {
    size_t p = row;
    while (p < a.size() && a[p][col].is_zero()) ++p;
    if (p == a.size()) continue;
    std::swap(a[row], a[p]);
    const FieldElement inv = nf_inverse(a[row][col]);
    for (auto& x : a[row]) x = x * inv;
    for (size_t i = 0; i < a.size(); ++i) {
      if (i == row || a[i][col].is_zero()) continue;
      const FieldElement s = a[i][col];
      for (size_t j = 0; j < n; ++j) a[i][j] -= s * a[row][j];
    }
    pivots.push_back(col);
    ++row;
  }
  std::vector<KVector> out;
  for (size_t free = 0; free < n; ++free) {
    if (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) continue;
    KVector v(n, FieldElement::zero(field));
    v[free] = FieldElement::one(field);
    for (size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -a[i][free];
    size_t lead = 0;
    while (v[lead].is_zero()) ++lead;
    out.push_back(nf_inverse(v[lead]) * v);
  }
  return out;
}

bool is_zero(const KVector& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

std::string to_string(const KVector& v, const std::string& var) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += to_string(v[i], var);
  }
  return s + ")";
}

}  // namespace k3b
