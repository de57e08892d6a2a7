#pragma once

#include <optional>

#include "k3b/brilliant.hpp"

namespace k3b {

/// The Hodge structure on the transcendental lattice of an NL point: the
/// restricted form on `basis` and the period in those coordinates.
struct FiberStructure {
  K3HodgeStructure hodge;
  Basis basis;  // in the coordinates of T + Q.l
};

/// Throws NotNLPoint.
FiberStructure fiber_structure(const BrilliantFamily& family, const PeriodPoint& point);

/// X^2 + gamma X + delta over K0 = Q[r]/(k0_minpoly), gamma and delta given
/// by their coordinates in powers of r. Trivial when the fiber field is K0.
struct RelativePoly {
  bool trivial = false;
  QPoly k0_minpoly;
  QVector gamma, delta;
  QVector discriminant;  // gamma^2 - 4 delta
  bool discriminant_totally_negative = false;
};

/// The fiber algebra under condition (a) alone (M sigma_t in K.sigma_t).
struct LineOnlyFiber {
  size_t dim = 0;
  bool is_field = false;
  QPoly minpoly;  // of a primitive element, when a field
  bool totally_imaginary = false;
  bool k0_embeds = false;
  bool discrepancy = false;  // dim differs from the Hodge algebra
};

struct PropagationReport {
  EndoClassification base_classification;
  EndoClassification fiber_classification;
  bool k0_embeds = false;
  bool fields_k0_isomorphic = false;
  bool fields_isomorphic = false;
  /// (s0.conj s0) and the primitive generator l' of T_t^perp in T + Q.l with
  /// m = (l.l'), for checks by hand.
  FieldElement s0;
  QVector perp_class;
  Rational m;
  FiberStructure fiber;
  EndoField fiber_field;
  std::optional<RelativePoly> relative_poly;
  LineOnlyFiber line_only;
};

/// Throws BaseNotCM or NotNLPoint.
PropagationReport verify_cm_propagation(const BrilliantFamily& family, const PeriodPoint& point);

/// Throws EmbeddingMissing when K0 of the base has no image in the fiber
/// field.
RelativePoly relative_minpoly(const PropagationReport& report);

/// Whether every real embedding of the element with coordinates `x` in
/// Q[r]/(q) is negative (q irreducible, totally real).
bool totally_negative(const QPoly& q, const QVector& x);

/// Whether Q[x]/(p) and Q[x]/(q) are isomorphic (both irreducible).
bool fields_isomorphic(const QPoly& p, const QPoly& q);

}  // namespace k3b
