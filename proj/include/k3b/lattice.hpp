#pragma once

#include <vector>

#include "k3b/matrix.hpp"

namespace k3b {

/// A rational quadratic lattice given by its Gram matrix; possibly
/// degenerate. The standard basis e_1..e_r is implicit.
class QuadLattice {
 public:
  QuadLattice() = default;
  /// Throws NonSymmetricGram.
  explicit QuadLattice(QMatrix gram);

  size_t rank() const { return gram_.rows(); }
  const QMatrix& gram() const { return gram_; }
  bool integral() const;
  Rational pair(const QVector& v, const QVector& w) const;

  friend bool operator==(const QuadLattice& a, const QuadLattice& b) { return a.gram_ == b.gram_; }

 private:
  QMatrix gram_;
};

struct SignatureTriple {
  size_t positive = 0;
  size_t negative = 0;
  size_t null = 0;
  friend bool operator==(const SignatureTriple&, const SignatureTriple&) = default;
};

/// Sylvester signature by symmetric elimination; zero diagonals are handled
/// with hyperbolic 2x2 steps.
SignatureTriple signature(const QMatrix& gram);
inline SignatureTriple signature(const QuadLattice& l) { return signature(l.gram()); }

/// Gram matrix of the form restricted to span(basis): B^T G B.
QMatrix restrict_form(const QMatrix& gram, const Basis& basis);

/// All v with (v.b) = 0 for every b in basis. Contains the radical.
Basis orthogonal_complement(const QMatrix& gram, const Basis& basis);

/// Integral vectors in the rational span of an integral basis, as a basis in
/// Hermite normal form. Throws NonIntegralAmbient for non-integral input.
Basis saturate(const QuadLattice& ambient, const Basis& basis);

/// T + Q.l with (l.l) = d and l orthogonal to T (l is the last coordinate).
QuadLattice extend_by_class(const QuadLattice& t, const Rational& d);

/// Order of v in Q^r / Z^r.
Integer quotient_order(const QVector& v);

/// Matrix of a + n l -> a + ((a.B) + n) l on the extension T + Z.l with d = 0.
QMatrix bfield_shift(const QuadLattice& extended, const QVector& b);

bool is_isometry(const QMatrix& m, const QuadLattice& l);

// Integer matrix normal forms used by saturate.

struct HermiteForm {
  QMatrix h;  // A U, lower-triangular column echelon form, zero columns last
  QMatrix u;  // unimodular
  size_t rank = 0;
};
/// Column-style Hermite normal form of an integer matrix. Pivots are found
/// by repeatedly reducing against the smallest nonzero entry in the row.
HermiteForm column_hermite(const QMatrix& a);

/// Z-basis of {x in Z^n : A x = 0} for an integer matrix A.
Basis integer_kernel(const QMatrix& a);

}  // namespace k3b
