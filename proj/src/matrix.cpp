#include "k3b/matrix.hpp"

#include "k3b/error.hpp"
#include "k3b/kernels.hpp"

namespace k3b {

QMatrix::QMatrix(std::initializer_list<std::initializer_list<Rational>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorCode::DimensionMismatch, "ragged matrix literal");
    for (const auto& x : r) data_.push_back(x);
  }
}

QMatrix QMatrix::identity(size_t n) {
  QMatrix m(n, n);
  for (size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

QMatrix QMatrix::diagonal(const QVector& d) {
  QMatrix m(d.size(), d.size());
  for (size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

QMatrix QMatrix::from_columns(const std::vector<QVector>& columns, size_t rows) {
  QMatrix m(rows, columns.size());
  for (size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != rows) throw Error(ErrorCode::DimensionMismatch, "column length");
    for (size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
  }
  return m;
}

QMatrix QMatrix::from_rows(const std::vector<QVector>& rows, size_t cols) {
  QMatrix m(rows.size(), cols);
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw Error(ErrorCode::DimensionMismatch, "row length");
    for (size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

QVector QMatrix::row(size_t i) const { return QVector(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_); }

QVector QMatrix::column(size_t j) const {
  QVector c(rows_);
  for (size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

std::vector<QVector> QMatrix::columns() const {
  std::vector<QVector> out;
  out.reserve(cols_);
  for (size_t j = 0; j < cols_; ++j) out.push_back(column(j));
  return out;
}

QMatrix QMatrix::transpose() const {
  QMatrix t(cols_, rows_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool QMatrix::is_symmetric() const {
  if (!is_square()) return false;
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

bool QMatrix::is_zero() const { return k3b::is_zero(data_); }

QMatrix QMatrix::unflatten(const QVector& flat, size_t rows, size_t cols) {
  if (flat.size() != rows * cols) throw Error(ErrorCode::DimensionMismatch, "unflatten size");
  QMatrix m(rows, cols);
  m.data_ = flat;
  return m;
}

QMatrix& QMatrix::operator+=(const QMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(ErrorCode::DimensionMismatch, "matrix sum shape");
  for (size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

QMatrix& QMatrix::operator-=(const QMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(ErrorCode::DimensionMismatch, "matrix difference shape");
  for (size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

QMatrix& QMatrix::operator*=(const Rational& s) {
  for (auto& x : data_) x *= s;
  return *this;
}

QMatrix operator+(QMatrix a, const QMatrix& b) { return a += b; }
QMatrix operator-(QMatrix a, const QMatrix& b) { return a -= b; }
QMatrix operator*(const Rational& s, QMatrix a) { return a *= s; }
QMatrix operator*(const QMatrix& a, const QMatrix& b) { return kernels::matmul(a, b); }

QVector operator*(const QMatrix& a, const QVector& v) {
  if (a.cols() != v.size()) throw Error(ErrorCode::DimensionMismatch, "matrix-vector shape");
  QVector out(a.rows());
  for (size_t i = 0; i < a.rows(); ++i) {
    Rational s = 0;
    for (size_t j = 0; j < a.cols(); ++j) {
      if (sgn(v[j]) != 0) s += a(i, j) * v[j];
    }
    out[i] = s;
  }
  return out;
}

QMatrix rref(QMatrix a, std::vector<size_t>* pivots) {
  if (pivots) pivots->clear();
  size_t r = 0;
  for (size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    size_t p = r;
    while (p < a.rows() && sgn(a(p, c)) == 0) ++p;
    if (p == a.rows()) continue;
    if (p != r) {
      for (size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(r, j));
    }
    const Rational inv = 1 / a(r, c);
    for (size_t j = c; j < a.cols(); ++j) a(r, j) *= inv;
    kernels::eliminate_column(a, r, c);
    if (pivots) pivots->push_back(c);
    ++r;
  }
  return a;
}

size_t rank(const QMatrix& a) {
  std::vector<size_t> piv;
  rref(a, &piv);
  return piv.size();
}

Rational determinant(QMatrix a) {
  if (!a.is_square()) throw Error(ErrorCode::DimensionMismatch, "determinant of non-square matrix");
  const size_t n = a.rows();
  Rational det = 1;
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (p < n && sgn(a(p, c)) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
      det = -det;
    }
    det *= a(c, c);
    for (size_t i = c + 1; i < n; ++i) {
      if (sgn(a(i, c)) == 0) continue;
      const Rational f = a(i, c) / a(c, c);
      for (size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
    }
  }
  return det;
}

std::optional<QMatrix> inverse(const QMatrix& a) {
  if (!a.is_square()) throw Error(ErrorCode::DimensionMismatch, "inverse of non-square matrix");
  const size_t n = a.rows();
  QMatrix aug(n, 2 * n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = 1;
  }
  std::vector<size_t> piv;
  aug = rref(std::move(aug), &piv);
  if (piv.size() < n || piv[n - 1] >= n) return std::nullopt;
  QMatrix inv(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

std::vector<QVector> nullspace(const QMatrix& a) {
  std::vector<size_t> piv;
  QMatrix r = rref(a, &piv);
  std::vector<bool> is_pivot(a.cols(), false);
  for (size_t c : piv) is_pivot[c] = true;
  std::vector<QVector> basis;
  for (size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    QVector v(a.cols());
    v[free] = 1;
    for (size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -r(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<QVector> solve(const QMatrix& a, const QVector& b) {
  if (b.size() != a.rows()) throw Error(ErrorCode::DimensionMismatch, "solve right-hand side");
  QMatrix aug(a.rows(), a.cols() + 1);
  for (size_t i = 0; i < a.rows(); ++i) {
    for (size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  std::vector<size_t> piv;
  aug = rref(std::move(aug), &piv);
  if (!piv.empty() && piv.back() == a.cols()) return std::nullopt;
  QVector x(a.cols());
  for (size_t i = 0; i < piv.size(); ++i) x[piv[i]] = aug(i, a.cols());
  return x;
}

std::vector<QVector> span_basis(const std::vector<QVector>& vectors, size_t dim) {
  if (vectors.empty()) return {};
  std::vector<size_t> piv;
  QMatrix r = rref(QMatrix::from_rows(vectors, dim), &piv);
  std::vector<QVector> out;
  for (size_t i = 0; i < piv.size(); ++i) out.push_back(r.row(i));
  return out;
}

std::optional<QVector> coordinates_in(const std::vector<QVector>& basis, const QVector& v) {
  if (basis.empty()) {
    if (k3b::is_zero(v)) return QVector{};
    return std::nullopt;
  }
  return solve(QMatrix::from_columns(basis, v.size()), v);
}

}  // namespace k3b
