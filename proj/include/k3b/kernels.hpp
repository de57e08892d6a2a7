#pragma once

// Data-parallel kernels for the exact linear algebra. Each kernel has an
// OpenMP implementation and a serial reference in `serial::`; the two must
// agree bit for bit (exact arithmetic), which the kernel tests check.

#include <cstddef>
#include <exception>
#include <functional>
#include <vector>

#include "k3b/matrix.hpp"

namespace k3b::kernels {

/// Below this many output entries the parallel kernels run serially.
inline constexpr size_t kParallelThreshold = 64;

QMatrix matmul(const QMatrix& a, const QMatrix& b);

/// P^T G P.
QMatrix congruence(const QMatrix& p, const QMatrix& g);

/// Clears column `col` in every row except `pivot_row`, assuming
/// a(pivot_row, col) == 1.
void eliminate_column(QMatrix& a, size_t pivot_row, size_t col);

/// Runs fn(i) for i in [0, n). Exceptions thrown by fn are captured per
/// index and the first one (in index order) is rethrown after the loop.
void parallel_for(size_t n, const std::function<void(size_t)>& fn);

int max_threads();

namespace serial {

QMatrix matmul(const QMatrix& a, const QMatrix& b);
QMatrix congruence(const QMatrix& p, const QMatrix& g);
void eliminate_column(QMatrix& a, size_t pivot_row, size_t col);
void parallel_for(size_t n, const std::function<void(size_t)>& fn);

}  // namespace serial

}  // namespace k3b::kernels
