#pragma once

#include <optional>
#include <string>
#include <vector>

#include "k3b/brilliant.hpp"

namespace k3b {

/// T + Q.l1 + Q.l2 with (l1.l1) = d, (l2.l2) = -d, both orthogonal to T; the
/// class f = l1 + l2 is isotropic. Coordinates: T, then l1, then l2.
struct TwoClassFamily {
  K3HodgeStructure base;
  Rational d;
  QuadLattice extended;

  size_t rank() const { return extended.rank(); }
  QVector ell1() const;
  QVector ell2() const;
  QVector f() const;
  /// c1 l1 + c2 l2.
  QVector ell(const Rational& c1, const Rational& c2) const;
  /// The one-class family T + Q.l for l = c1 l1 + c2 l2.
  BrilliantFamily one_class(const Rational& c1, const Rational& c2) const;
  /// A period of the one-class family for l = c1 l1 + c2 l2, rewritten in
  /// the coordinates of this lattice.
  KVector embed(const PeriodPoint& p, const Rational& c1, const Rational& c2) const;
};

/// Throws NonPositiveD or NotIrreducible.
TwoClassFamily make_two_class(const K3HodgeStructure& base, const Rational& d);

struct ConnectorClass {
  QVector v;
  Rational square;  // (l'.l')
  Rational with_f;  // (l'.f)
};

/// Throws NotPositiveSquare, NotPositiveWithF or InSpanOfClasses.
ConnectorClass check_connector(const TwoClassFamily& family, const QVector& v);

struct IntersectionPoint {
  PeriodPoint point;  // on family.one_class(c1, c2)
  bool nl = false;
};

struct CurveIntersection {
  Rational c1, c2;
  BrilliantFamily family;
  std::vector<IntersectionPoint> points;
  /// Solutions in D_l that are not brilliant (|b| = 1, on the equator). They
  /// occur exactly when (l.l') = 0 and (l.l) > 0.
  std::vector<PeriodPoint> non_brilliant;
  /// A solution with a = 0 (outside the chart) exists; only possible when
  /// (l.l) = 0.
  bool chart_excluded = false;
};

/// Brilliant points of D_l (l = c1 l1 + c2 l2, chart a = 1) orthogonal to l'.
/// Throws InvalidConnector or NoIntersectionInChart.
CurveIntersection curve_meets_brilliant(const TwoClassFamily& family, const QVector& connector, const Rational& c1,
                                        const Rational& c2);

/// A connector orthogonal to an NL point of the one-class family for
/// l = c1 l1 + c2 l2. Throws PointIsSigmaZero or NotNLPoint.
ConnectorClass connector_from_nl(const TwoClassFamily& family, const Rational& c1, const Rational& c2,
                                 const PeriodPoint& point);

struct BrauerTransport {
  ConnectorClass connector;
  QVector b;
  Integer order;
  PeriodPoint point;  // on family.one_class(1, 1), i.e. l = f
  KVector sigma;      // in the coordinates of the two-class lattice
  bool on_lf = false;
  bool in_nl = false;
  bool orthogonal = false;
};

/// From an NL point of the one-class family for l = c1 l1 + c2 l2 to the
/// Brauer family of f.
BrauerTransport twistor_to_brauer(const TwoClassFamily& family, const Rational& c1, const Rational& c2,
                                  const PeriodPoint& point);

struct EquatorSample {
  Rational s, theta;
  FieldElement distance_squared;  // exact, conj-fixed
  Interval distance;              // certified enclosure
};

/// Chordal distance (standard Hermitian metric on the coordinates) between
/// [f] and the equator point of D_{l1 + s l2} with rotation parameter theta.
/// Throws SOutOfRange.
EquatorSample equator_flow(const TwoClassFamily& family, const Rational& s, const Rational& theta,
                           unsigned prec = 96);

/// The equator point itself, over K or K(sqrt rho).
PeriodPoint equator_point(const TwoClassFamily& family, const Rational& s, const Rational& theta);

struct SpecializationRow {
  Rational s;
  std::optional<CurveIntersection> intersection;
  std::string error;  // set when the row has no chart intersection
};

struct SpecializationTrace {
  std::vector<SpecializationRow> rows;
  std::optional<BrauerClass> terminal;  // from the s = 1 row
};

/// Runs curve_meets_brilliant for l = l1 + s l2 over the grid (in parallel,
/// merged in grid order); at s = 1 recovers the Brauer class.
SpecializationTrace nl_specialization(const TwoClassFamily& family, const QVector& connector,
                                      const std::vector<Rational>& grid);

}  // namespace k3b
