#pragma once

// Hand-built Hodge structures shared by the module tests. They are assembled
// here from first principles (trace forms, eigenvectors) rather than read
// from the fixture files, so the fixture loader is itself checked against
// them.

#include "k3b/field_linalg.hpp"
#include "k3b/hodge.hpp"

namespace teststruct {

using namespace k3b;

inline Box rect(Rational rl, Rational rh, Rational il, Rational ih) { return Box(Interval(rl, rh), Interval(il, ih)); }

inline FieldPtr gaussian() {
  static const FieldPtr f = nf_create(QPoly{1, 0, 1}, {0, -1}, rect(0, 0, Rational(1, 2), Rational(3, 2)), "Q(i)");
  return f;
}

inline FieldPtr cyclotomic5() {
  static const FieldPtr f = nf_create(QPoly{1, 1, 1, 1, 1}, {-1, -1, -1, -1},
                                      rect(Rational(1, 4), Rational(3, 8), Rational(9, 10), 1), "Q(zeta5)");
  return f;
}

/// diag(8,8) with sigma = (1, i).
inline K3HodgeStructure fermat() {
  const FieldPtr k = gaussian();
  const FieldElement i = FieldElement::generator(k);
  return validate_period(QuadLattice(QMatrix::diagonal({8, 8})), {FieldElement::one(k), i});
}

/// Gram of (x, y) -> Tr(xi x conj(y)) on the power basis, computed with
/// traces of multiplication matrices.
inline QMatrix trace_form(const FieldPtr& k, const FieldElement& xi) {
  const size_t m = k->degree();
  QMatrix g(m, m);
  for (size_t a = 0; a < m; ++a)
    for (size_t b = 0; b < m; ++b) {
      const FieldElement x = xi * nf_pow(FieldElement::generator(k), a) *
                             nf_conjugate(nf_pow(FieldElement::generator(k), b));
      const QMatrix mm = multiplication_matrix(x);
      Rational tr = 0;
      for (size_t i = 0; i < m; ++i) tr += mm(i, i);
      g(a, b) = tr;
    }
  return g;
}

/// Q(zeta5) as a rank-4 lattice with the trace form of xi = zeta + zeta^4 and
/// sigma the zeta-eigenvector of multiplication by zeta.
inline K3HodgeStructure cm4() {
  const FieldPtr k = cyclotomic5();
  const FieldElement z = FieldElement::generator(k);
  const QMatrix g = trace_form(k, z + nf_conjugate(z));
  const QMatrix mz = multiplication_matrix(z);
  std::vector<KVector> rows;
  for (size_t i = 0; i < 4; ++i) {
    KVector row = to_kvector(mz.row(i), k);
    row[i] -= z;
    rows.push_back(row);
  }
  const auto ns = nullspace_over(rows, k, 4);
  return validate_period(QuadLattice(g), ns.at(0));
}

}  // namespace teststruct
