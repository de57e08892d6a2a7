#pragma once

#include <optional>
#include <vector>

#include "k3b/field_linalg.hpp"
#include "k3b/lattice.hpp"

namespace k3b {

/// A rational lattice of signature (2, r-2) with a period sigma satisfying
/// (sigma.sigma) = 0 and (sigma.conj sigma) > 0.
struct K3HodgeStructure {
  QuadLattice lattice;
  FieldPtr field;
  KVector period;

  size_t rank() const { return lattice.rank(); }
};

/// Throws ZeroPeriod, WrongSignature, NotIsotropic or NotPositive.
K3HodgeStructure validate_period(const QuadLattice& lattice, const KVector& period);

/// Rational span of the coefficient vectors of sigma, in reduced echelon
/// form. Any rational subspace whose complexification contains sigma
/// contains these vectors, and their span contains sigma and conj(sigma), so
/// it is the transcendental lattice.
Basis transcendental_lattice(const KVector& sigma);

/// Ambient rank minus the rank of the transcendental lattice.
size_t picard_number(size_t ambient_rank, const KVector& sigma);

bool is_irreducible(const K3HodgeStructure& h);

enum class EndoConditions {
  LineOnly,        // M sigma in K.sigma
  LineAndAdjoint,  // additionally M^dagger sigma in span(sigma, conj sigma)
};

struct HodgeEndoAlgebra {
  std::vector<QMatrix> basis;
  std::vector<FieldElement> eigenvalues;
  /// Column j holds the basis coordinates of basis[j]^dagger; absent when
  /// the solution space is not closed under the adjoint.
  std::optional<QMatrix> adjoint;

  size_t dim() const { return basis.size(); }
  std::optional<QVector> coordinates(const QMatrix& phi) const;
  QMatrix element(const QVector& coords) const;
};

/// Throws NotIrreducible.
HodgeEndoAlgebra endo_algebra(const K3HodgeStructure& h, EndoConditions conditions = EndoConditions::LineAndAdjoint);

/// G^-1 M^T G.
QMatrix form_adjoint(const QMatrix& gram, const QMatrix& m);

enum class EndoKind { RM, CM };

struct EndoClassification {
  EndoKind kind = EndoKind::RM;
  size_t degree = 0;
  bool is_cm_hodge = false;
  QMatrix primitive;  // the primitive element found
  QPoly primitive_minpoly;
  /// Minimal polynomial of a primitive element of the adjoint-fixed
  /// subalgebra; the polynomial x when that subalgebra is Q.
  QPoly k0_minpoly;
  QMatrix k0_primitive;
  size_t k0_degree = 0;
};

/// Throws NotAField.
EndoClassification classify_endo(const K3HodgeStructure& h, const HodgeEndoAlgebra& algebra);

/// The lambda with phi sigma = lambda sigma. Throws NotInAlgebra.
FieldElement eigenvalue_embedding(const K3HodgeStructure& h, const HodgeEndoAlgebra& algebra, const QMatrix& phi);

/// The algebra as a number field generated by the primitive element, with
/// conjugation phi -> phi^dagger and the embedding phi -> lambda(phi).
struct EndoField {
  FieldPtr field;
  std::vector<QMatrix> powers;  // primitive^0 .. primitive^(n-1)

  /// Coordinates of phi in powers of the primitive element.
  FieldElement element(const QMatrix& phi) const;
};
EndoField endo_field(const K3HodgeStructure& h, const HodgeEndoAlgebra& algebra, const EndoClassification& cls);

/// Seeded primitive-element search in the Q-span of `basis`: the basis
/// elements are tried first, then random integer combinations with
/// coefficients bounded by 1, 2, 3, ... Returns the element and its minimal
/// polynomial, or nullopt if none of degree basis.size() is found.
std::optional<std::pair<QMatrix, QPoly>> find_primitive_element(const std::vector<QMatrix>& basis);

}  // namespace k3b
