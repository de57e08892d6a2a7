#pragma once

#include "k3b/hodge.hpp"

namespace k3b {

/// T + Q.l with (l.l) = d over an irreducible base; l is the last coordinate.
struct BrilliantFamily {
  K3HodgeStructure base;
  Rational d;
  QuadLattice extended;

  size_t rank() const { return extended.rank(); }
  /// The class l as a vector of the extended lattice.
  QVector ell() const;
};

/// Throws NotIrreducible.
BrilliantFamily make_family(const K3HodgeStructure& base, const Rational& d);

enum class DomainClass { TwistorSphere, BrauerTwoLines, DworkTwoHalfPlanes };
DomainClass classify_domain(const BrilliantFamily& family);
const char* domain_class_name(DomainClass c);

/// sigma = a sigma0 + b conj(sigma0) + c l, normalized to a = 1 when a != 0
/// (otherwise b = 1). All coordinates live in one field.
struct PeriodPoint {
  FieldElement a, b, c;
  KVector sigma;
};

/// Throws NotOnConic or NotPositive.
PeriodPoint make_period(const BrilliantFamily& family, const FieldElement& a, const FieldElement& b,
                        const FieldElement& c);

/// True iff l is not of the form x sigma + conj(x) conj(sigma) with x in the
/// coefficient field.
bool is_brilliant(const BrilliantFamily& family, const PeriodPoint& point);

/// l in P_sigma. Throws NotTwistorType when d <= 0.
bool equator_test(const BrilliantFamily& family, const PeriodPoint& point);

/// Signature test: the transcendental lattice of sigma has the base
/// signature (2, r-2, 0). For d = 0 the B-field system is solved as well and
/// a disagreement throws InternalInconsistency.
bool nl_test(const BrilliantFamily& family, const PeriodPoint& point);
bool nl_test_by_signature(const BrilliantFamily& family, const PeriodPoint& point);
/// d = 0 only: sigma is sigma0 + (sigma0.B) l or its conjugate analogue for
/// some rational B. Throws NotBrauerType.
bool nl_test_by_bfield(const BrilliantFamily& family, const PeriodPoint& point);

struct Projection {
  Basis tt;        // basis of T_t in extended coordinates
  QMatrix matrix;  // columns: images of the tt basis in T
  bool bijective = false;
  bool isometry = false;      // restricted Gram equals the base Gram of the images
  bool period_match = false;  // sigma_t maps to sigma0 or conj(sigma0)
};
/// Throws NotNLPoint.
Projection projection_to_base(const BrilliantFamily& family, const PeriodPoint& point);

/// The point (1, 0, (sigma0.B)). Throws NotBrauerType.
PeriodPoint brauer_period_from_B(const BrilliantFamily& family, const QVector& b);

struct BrauerClass {
  QVector b;
  Integer order;
};
/// Throws NotBrauerType, WrongComponent (a = 0) or NotNLPoint.
BrauerClass recover_bfield(const BrilliantFamily& family, const PeriodPoint& point);

struct BFieldEmbedding {
  QMatrix matrix;  // (r+1) x r, alpha -> alpha + (alpha.B) l
  Basis image;
  bool image_is_transcendental = false;
  bool isometric = false;
};
/// Throws NotBrauerType.
BFieldEmbedding fB_embedding(const BrilliantFamily& family, const QVector& b);

/// Rational classes orthogonal to sigma.
Basis one_one_space(const BrilliantFamily& family, const PeriodPoint& point);

}  // namespace k3b
