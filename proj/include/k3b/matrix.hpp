#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <vector>

#include "k3b/rational.hpp"

namespace k3b {

/// A list of vectors spanning a subspace (or sublattice).
using Basis = std::vector<QVector>;

/// Dense row-major matrix over Q. Vectors are columns; the pairing of a
/// form G is v^T G w.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  QMatrix(std::initializer_list<std::initializer_list<Rational>> rows);

  static QMatrix identity(size_t n);
  static QMatrix diagonal(const QVector& d);
  static QMatrix from_columns(const std::vector<QVector>& columns, size_t rows);
  static QMatrix from_rows(const std::vector<QVector>& rows, size_t cols);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Rational& operator()(size_t i, size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(size_t i, size_t j) const { return data_[i * cols_ + j]; }

  QVector row(size_t i) const;
  QVector column(size_t j) const;
  std::vector<QVector> columns() const;
  QMatrix transpose() const;
  bool is_symmetric() const;
  bool is_zero() const;
  /// Row-major flattening; used to treat matrices as vectors in Q^{n*n}.
  const QVector& flat() const { return data_; }
  static QMatrix unflatten(const QVector& flat, size_t rows, size_t cols);

  QMatrix& operator+=(const QMatrix& o);
  QMatrix& operator-=(const QMatrix& o);
  QMatrix& operator*=(const Rational& s);

  friend bool operator==(const QMatrix& a, const QMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  size_t rows_ = 0;
  size_t cols_ = 0;
  QVector data_;
};

QMatrix operator+(QMatrix a, const QMatrix& b);
QMatrix operator-(QMatrix a, const QMatrix& b);
QMatrix operator*(const Rational& s, QMatrix a);
QMatrix operator*(const QMatrix& a, const QMatrix& b);
QVector operator*(const QMatrix& a, const QVector& v);

/// Reduced row echelon form. `pivots` receives the pivot column of each
/// nonzero row.
QMatrix rref(QMatrix a, std::vector<size_t>* pivots = nullptr);
size_t rank(const QMatrix& a);
Rational determinant(QMatrix a);
std::optional<QMatrix> inverse(const QMatrix& a);

/// Basis of {x : A x = 0}, one vector per free column of rref(A).
std::vector<QVector> nullspace(const QMatrix& a);

/// Some solution of A x = b, or nullopt when inconsistent.
std::optional<QVector> solve(const QMatrix& a, const QVector& b);

/// Nonzero rows of rref of the matrix whose rows are `vectors`; a canonical
/// basis of their span.
std::vector<QVector> span_basis(const std::vector<QVector>& vectors, size_t dim);

/// Coordinates of v in the basis `basis` (linearly independent), if v lies in
/// their span.
std::optional<QVector> coordinates_in(const std::vector<QVector>& basis, const QVector& v);

}  // namespace k3b
