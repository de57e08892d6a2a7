#include "k3b/kernels.hpp"

#include <omp.h>

#include <cstdint>

#include "k3b/error.hpp"

namespace k3b::kernels {

namespace {

void check_product_shape(const QMatrix& a, const QMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "matrix product shape");
}

}  // namespace

int max_threads() { return omp_get_max_threads(); }

QMatrix matmul(const QMatrix& a, const QMatrix& b) {
  check_product_shape(a, b);
  const size_t n = a.rows(), m = b.cols(), k = a.cols();
  if (n * m < kParallelThreshold) return serial::matmul(a, b);
  QMatrix c(n, m);
  const auto total = static_cast<std::int64_t>(n * m);
#pragma omp parallel for schedule(static)
  for (std::int64_t idx = 0; idx < total; ++idx) {
    const size_t i = static_cast<size_t>(idx) / m, j = static_cast<size_t>(idx) % m;
    Rational s = 0;
    for (size_t t = 0; t < k; ++t) {
      if (sgn(a(i, t)) != 0) s += a(i, t) * b(t, j);
    }
    c(i, j) = s;
  }
  return c;
}

QMatrix congruence(const QMatrix& p, const QMatrix& g) { return matmul(matmul(p.transpose(), g), p); }

void eliminate_column(QMatrix& a, size_t pivot_row, size_t col) {
  const size_t rows = a.rows(), cols = a.cols();
  if (rows * cols < kParallelThreshold) {
    serial::eliminate_column(a, pivot_row, col);
    return;
  }
  const auto n = static_cast<std::int64_t>(rows);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t r = 0; r < n; ++r) {
    const auto row = static_cast<size_t>(r);
    if (row == pivot_row || sgn(a(row, col)) == 0) continue;
    const Rational factor = a(row, col);
    for (size_t j = col; j < cols; ++j) {
      if (sgn(a(pivot_row, j)) != 0) a(row, j) -= factor * a(pivot_row, j);
    }
  }
}

void parallel_for(size_t n, const std::function<void(size_t)>& fn) {
  std::vector<std::exception_ptr> errors(n);
  const auto total = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < total; ++i) {
    try {
      fn(static_cast<size_t>(i));
    } catch (...) {
      errors[static_cast<size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

namespace serial {

QMatrix matmul(const QMatrix& a, const QMatrix& b) {
  check_product_shape(a, b);
  QMatrix c(a.rows(), b.cols());
  for (size_t i = 0; i < a.rows(); ++i) {
    for (size_t t = 0; t < a.cols(); ++t) {
      if (sgn(a(i, t)) == 0) continue;
      for (size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, t) * b(t, j);
    }
  }
  return c;
}

QMatrix congruence(const QMatrix& p, const QMatrix& g) { return matmul(matmul(p.transpose(), g), p); }

void eliminate_column(QMatrix& a, size_t pivot_row, size_t col) {
  for (size_t row = 0; row < a.rows(); ++row) {
    if (row == pivot_row || sgn(a(row, col)) == 0) continue;
    const Rational factor = a(row, col);
    for (size_t j = col; j < a.cols(); ++j) {
      if (sgn(a(pivot_row, j)) != 0) a(row, j) -= factor * a(pivot_row, j);
    }
  }
}

void parallel_for(size_t n, const std::function<void(size_t)>& fn) {
  for (size_t i = 0; i < n; ++i) fn(i);
}

}  // namespace serial

}  // namespace k3b::kernels
