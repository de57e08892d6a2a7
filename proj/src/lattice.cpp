#include "k3b/lattice.hpp"

#include <algorithm>
#include <numeric>

#include "k3b/error.hpp"
#include "k3b/kernels.hpp"

namespace k3b {

QuadLattice::QuadLattice(QMatrix gram) : gram_(std::move(gram)) {
  if (!gram_.is_symmetric()) {
    for (size_t i = 0; i < gram_.rows(); ++i)
      for (size_t j = 0; j < gram_.cols(); ++j)
        if (!gram_.is_square() || gram_(i, j) != gram_(j, i))
          throw Error(ErrorCode::NonSymmetricGram,
                      "gram entry (" + std::to_string(i) + "," + std::to_string(j) + ") differs from its transpose");
  }
}

bool QuadLattice::integral() const { return is_integral(gram_.flat()); }

Rational QuadLattice::pair(const QVector& v, const QVector& w) const {
  if (v.size() != rank() || w.size() != rank()) throw Error(ErrorCode::DimensionMismatch, "pairing");
  return dot(v, gram_ * w);
}

SignatureTriple signature(const QMatrix& gram) {
  QMatrix a = gram;
  std::vector<size_t> live(a.rows());
  std::iota(live.begin(), live.end(), 0);
  SignatureTriple sig;

  // Schur complement of the block `piv` against the remaining indices.
  auto eliminate = [&](const std::vector<size_t>& piv, const QMatrix& inv) {
    std::vector<size_t> rest;
    for (size_t i : live)
      if (std::find(piv.begin(), piv.end(), i) == piv.end()) rest.push_back(i);
    QMatrix next = a;
    for (size_t i : rest)
      for (size_t j : rest) {
        Rational s = 0;
        for (size_t p = 0; p < piv.size(); ++p)
          for (size_t q = 0; q < piv.size(); ++q) s += a(i, piv[p]) * inv(p, q) * a(piv[q], j);
        next(i, j) = a(i, j) - s;
      }
    a = std::move(next);
    live = std::move(rest);
  };

  while (!live.empty()) {
    auto diag = std::find_if(live.begin(), live.end(), [&](size_t i) { return a(i, i) != 0; });
    if (diag != live.end()) {
      const size_t i = *diag;
      (a(i, i) > 0 ? sig.positive : sig.negative) += 1;
      eliminate({i}, QMatrix{{1 / Rational(a(i, i))}});
      continue;
    }
    bool found = false;
    for (size_t x = 0; x < live.size() && !found; ++x)
      for (size_t y = x + 1; y < live.size() && !found; ++y) {
        const size_t i = live[x], j = live[y];
        if (a(i, j) == 0) continue;
        const Rational inv_off = 1 / Rational(a(i, j));
        sig.positive += 1;
        sig.negative += 1;
        eliminate({i, j}, QMatrix{{0, inv_off}, {inv_off, 0}});
        found = true;
      }
    if (!found) {
      sig.null += live.size();
      live.clear();
    }
  }
  return sig;
}

QMatrix restrict_form(const QMatrix& gram, const Basis& basis) {
  return kernels::congruence(QMatrix::from_columns(basis, gram.rows()), gram);
}

Basis orthogonal_complement(const QMatrix& gram, const Basis& basis) {
  std::vector<QVector> rows;
  for (const auto& b : basis) rows.push_back(gram * b);
  return nullspace(QMatrix::from_rows(rows, gram.cols()));
}

namespace {

void swap_columns(QMatrix& m, size_t a, size_t b) {
  if (a == b) return;
  for (size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

// column dst -= q * column src
void axpy_column(QMatrix& m, size_t dst, size_t src, const Rational& q) {
  for (size_t i = 0; i < m.rows(); ++i) m(i, dst) -= q * m(i, src);
}

void negate_column(QMatrix& m, size_t c) {
  for (size_t i = 0; i < m.rows(); ++i) m(i, c) = -m(i, c);
}

Rational floor_div(const Rational& a, const Rational& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_num_mpz_t(), b.get_num_mpz_t());
  return Rational(q);
}

}  // namespace

HermiteForm column_hermite(const QMatrix& a) {
  if (!is_integral(a.flat())) throw Error(ErrorCode::InvalidArgument, "hermite form needs an integer matrix");
  HermiteForm hf{a, QMatrix::identity(a.cols()), 0};
  QMatrix& h = hf.h;
  QMatrix& u = hf.u;
  size_t col = 0;
  for (size_t row = 0; row < h.rows() && col < h.cols(); ++row) {
    while (true) {
      size_t best = h.cols();
      for (size_t j = col; j < h.cols(); ++j)
        if (h(row, j) != 0 && (best == h.cols() || abs(h(row, j)) < abs(h(row, best)))) best = j;
      if (best == h.cols()) break;
      swap_columns(h, col, best);
      swap_columns(u, col, best);
      bool clean = true;
      for (size_t j = col + 1; j < h.cols(); ++j) {
        if (h(row, j) == 0) continue;
        const Rational q = floor_div(h(row, j), h(row, col));
        axpy_column(h, j, col, q);
        axpy_column(u, j, col, q);
        if (h(row, j) != 0) clean = false;
      }
      if (clean) break;
    }
    if (col >= h.cols() || h(row, col) == 0) continue;
    if (h(row, col) < 0) {
      negate_column(h, col);
      negate_column(u, col);
    }
    for (size_t j = 0; j < col; ++j) {
      const Rational q = floor_div(h(row, j), h(row, col));
      axpy_column(h, j, col, q);
      axpy_column(u, j, col, q);
    }
    ++col;
  }
  hf.rank = col;
  return hf;
}

Basis integer_kernel(const QMatrix& a) {
  const HermiteForm hf = column_hermite(a);
  Basis out;
  for (size_t j = hf.rank; j < a.cols(); ++j) out.push_back(hf.u.column(j));
  return out;
}

Basis saturate(const QuadLattice& ambient, const Basis& basis) {
  if (!ambient.integral()) throw Error(ErrorCode::NonIntegralAmbient, "saturation needs an integral ambient lattice");
  const size_t n = ambient.rank();
  for (const auto& b : basis)
    if (!is_integral(b) || b.size() != n) throw Error(ErrorCode::NonIntegralAmbient, "basis vector not integral");
  if (basis.empty()) return {};
  // The saturation is the integer kernel of the integer annihilator.
  const Basis annihilator = integer_kernel(QMatrix::from_rows(basis, n));
  Basis sat;
  if (annihilator.empty()) {
    for (size_t i = 0; i < n; ++i) {
      QVector e(n, 0);
      e[i] = 1;
      sat.push_back(e);
    }
  } else {
    sat = integer_kernel(QMatrix::from_rows(annihilator, n));
  }
  const HermiteForm hf = column_hermite(QMatrix::from_columns(sat, n));
  Basis out;
  for (size_t j = 0; j < hf.rank; ++j) out.push_back(hf.h.column(j));
  return out;
}

QuadLattice extend_by_class(const QuadLattice& t, const Rational& d) {
  const size_t r = t.rank();
  QMatrix g(r + 1, r + 1);
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < r; ++j) g(i, j) = t.gram()(i, j);
  g(r, r) = d;
  return QuadLattice(std::move(g));
}

Integer quotient_order(const QVector& v) { return lcm_of_denominators(v); }

QMatrix bfield_shift(const QuadLattice& extended, const QVector& b) {
  const size_t n = extended.rank();
  if (n == 0 || b.size() != n - 1) throw Error(ErrorCode::DimensionMismatch, "B must live in T");
  for (size_t i = 0; i < n; ++i)
    if (extended.gram()(n - 1, i) != 0) throw Error(ErrorCode::NonIsotropicClass, "l must be isotropic and orthogonal to T");
  if (!is_integral(b)) throw Error(ErrorCode::InvalidArgument, "B must be integral");
  QMatrix m = QMatrix::identity(n);
  for (size_t i = 0; i + 1 < n; ++i) {
    Rational s = 0;
    for (size_t j = 0; j + 1 < n; ++j) s += extended.gram()(i, j) * b[j];
    m(n - 1, i) = s;
  }
  return m;
}

bool is_isometry(const QMatrix& m, const QuadLattice& l) {
  if (!m.is_square() || m.rows() != l.rank()) return false;
  return kernels::congruence(m, l.gram()) == l.gram();
}

}  // namespace k3b
