#include "k3b/compose.hpp"

#include "k3b/error.hpp"
#include "k3b/kernels.hpp"

namespace k3b {

QVector TwoClassFamily::ell1() const { return ell(1, 0); }
QVector TwoClassFamily::ell2() const { return ell(0, 1); }
QVector TwoClassFamily::f() const { return ell(1, 1); }

QVector TwoClassFamily::ell(const Rational& c1, const Rational& c2) const {
  QVector v(rank(), 0);
  v[rank() - 2] = c1;
  v[rank() - 1] = c2;
  return v;
}

BrilliantFamily TwoClassFamily::one_class(const Rational& c1, const Rational& c2) const {
  return make_family(base, d * (c1 * c1 - c2 * c2));
}

KVector TwoClassFamily::embed(const PeriodPoint& p, const Rational& c1, const Rational& c2) const {
  KVector out(p.sigma.begin(), p.sigma.end() - 1);
  const FieldElement& c = p.sigma.back();
  out.push_back(c1 * c);
  out.push_back(c2 * c);
  return out;
}

TwoClassFamily make_two_class(const K3HodgeStructure& base, const Rational& d) {
  if (d <= 0) throw Error(ErrorCode::NonPositiveD, "two-class families need d > 0");
  if (!is_irreducible(base)) throw Error(ErrorCode::NotIrreducible, "two-class families need an irreducible base");
  const size_t r = base.rank();
  QMatrix g(r + 2, r + 2);
  const QMatrix& t = base.lattice.gram();
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < r; ++j) g(i, j) = t(i, j);
  g(r, r) = d;
  g(r + 1, r + 1) = -d;
  return {base, d, QuadLattice(g)};
}

ConnectorClass check_connector(const TwoClassFamily& family, const QVector& v) {
  if (v.size() != family.rank())
    throw Error(ErrorCode::DimensionMismatch, "connector has " + std::to_string(v.size()) + " coordinates");
  ConnectorClass c{v, family.extended.pair(v, v), family.extended.pair(v, family.f())};
  if (c.square <= 0) throw Error(ErrorCode::NotPositiveSquare, "(l'.l') = " + to_string(c.square));
  if (c.with_f <= 0) throw Error(ErrorCode::NotPositiveWithF, "(l'.f) = " + to_string(c.with_f));
  bool t_part = false;
  for (size_t i = 0; i + 2 < v.size(); ++i) t_part = t_part || v[i] != 0;
  if (!t_part) throw Error(ErrorCode::InSpanOfClasses, "connector lies in span(l1, l2)");
  return c;
}

namespace {

QVector t_part(const QVector& v) { return QVector(v.begin(), v.end() - 2); }

}  // namespace

CurveIntersection curve_meets_brilliant(const TwoClassFamily& family, const QVector& connector, const Rational& c1,
                                        const Rational& c2) {
  try {
    check_connector(family, connector);
  } catch (const Error& e) {
    throw Error(ErrorCode::InvalidConnector, e.what());
  }
  if (c1 == 0 && c2 == 0) throw Error(ErrorCode::InvalidArgument, "(c1, c2) = (0, 0)");

  const K3HodgeStructure& base = family.base;
  const FieldPtr k = base.field;
  CurveIntersection out{c1, c2, family.one_class(c1, c2), {}, {}, false};
  const Rational dl = out.family.d;

  const FieldElement p = pair(base.lattice.gram(), base.period, to_kvector(t_part(connector), k));
  const FieldElement pb = nf_conjugate(p);
  const Rational m = family.extended.pair(family.ell(c1, c2), connector);
  const FieldElement s0 = hermitian_norm(base.lattice.gram(), base.period);
  if (p.is_zero())
    throw Error(ErrorCode::InternalInconsistency, "valid connector orthogonal to sigma0");

  std::vector<std::pair<FieldElement, FieldElement>> bc;
  if (dl == 0) {
    if (m == 0) throw Error(ErrorCode::NoIntersectionInChart, "(l.l') = 0 and (l.l) = 0");
    bc.emplace_back(FieldElement::zero(k), -(nf_inverse(FieldElement(k, m)) * p));
    out.chart_excluded = true;
  } else {
    // d_l pb c^2 - 2 s0 m c - 2 s0 p = 0, from b = -(p + c m)/pb.
    const FieldElement a2 = dl * pb;
    const FieldElement a1 = Rational(-2 * m) * s0;
    const FieldElement a0 = Rational(-2) * (s0 * p);
    const FieldElement disc = a1 * a1 - Rational(4) * (a2 * a0);
    std::vector<FieldElement> roots;
    const FieldElement inv2a = nf_inverse(Rational(2) * a2);
    if (disc.is_zero()) {
      roots.push_back(-(a1 * inv2a));
    } else {
      FieldElement root;
      if (auto r = nf_sqrt(disc)) {
        root = *r;
      } else {
        root = nf_quadratic_extension(disc).root;
      }
      const FieldPtr f = root.field();
      const FieldElement na1 = coerce(-a1, f), i2 = coerce(inv2a, f);
      roots.push_back((na1 + root) * i2);
      roots.push_back((na1 - root) * i2);
    }
    for (const auto& c : roots) {
      const FieldPtr f = c.field();
      const FieldElement b = -((coerce(p, f) + m * c) * nf_inverse(coerce(pb, f)));
      bc.emplace_back(b, c);
    }
  }

  for (const auto& [b, c] : bc) {
    const FieldPtr f = common_field(b.field(), c.field());
    try {
      IntersectionPoint ip{make_period(out.family, FieldElement::one(f), b, c), false};
      if (!is_brilliant(out.family, ip.point)) {
        out.non_brilliant.push_back(ip.point);
        continue;
      }
      ip.nl = nl_test(out.family, ip.point);
      out.points.push_back(std::move(ip));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotPositive) throw;
    }
  }
  return out;
}

ConnectorClass connector_from_nl(const TwoClassFamily& family, const Rational& c1, const Rational& c2,
                                 const PeriodPoint& point) {
  const bool on_conj_line = point.a.is_zero();
  if (point.c.is_zero() && (on_conj_line || point.b.is_zero()))
    throw Error(ErrorCode::PointIsSigmaZero, "the point is sigma0 (or its conjugate)");
  const BrilliantFamily one = family.one_class(c1, c2);
  if (!nl_test(one, point)) throw Error(ErrorCode::NotNLPoint, "point is not in the Noether-Lefschetz locus");

  const size_t r = family.base.rank();
  QVector v(r + 2, 0), u(r + 2, 0);
  if (one.d != 0) {
    const Basis perp = orthogonal_complement(one.extended.gram(), transcendental_lattice(point.sigma));
    if (perp.size() != 1) throw Error(ErrorCode::InternalInconsistency, "NL point with Picard number != 1");
    for (size_t i = 0; i < r; ++i) v[i] = perp[0][i];
    v[r] = c1 * perp[0][r];
    v[r + 1] = c2 * perp[0][r];
    u[r] = c2;
    u[r + 1] = c1;
  } else {
    // A conjugate-line point has the same orthogonal rational classes as its
    // conjugate on L_l.
    const PeriodPoint q = on_conj_line ? make_period(one, FieldElement::one(point.c.field()),
                                                     FieldElement::zero(point.c.field()), nf_conjugate(point.c))
                                       : point;
    const BrauerClass bf = recover_bfield(one, q);
    for (size_t i = 0; i < r; ++i) v[i] = -bf.b[i];
    v[r] = 1 / (c1 * family.d);
    const Rational ac1 = abs(c1);
    u[r] = c1 / ac1;
    u[r + 1] = c2 / ac1;
  }

  const QMatrix& g = family.extended.gram();
  const QVector f = family.f();
  // (v + k u)^2 = (v.v) + 2k (v.u) + k^2 (u.u); for d_l <= 0 the leading
  // coefficient is positive.
  const Rational uu = dot(u, g * u), vu = dot(v, g * u);
  if (one.d < 0 && uu <= 0) throw Error(ErrorCode::InternalInconsistency, "connector search: (u.u) <= 0");
  if (one.d == 0 && (uu != 0 || vu <= 0))
    throw Error(ErrorCode::InternalInconsistency, "connector search: linear coefficient <= 0");

  for (long k = 0; k <= (1L << 24); ++k) {
    const QVector w = v + Rational(k) * u;
    const Rational sq = dot(w, g * w), wf = dot(w, g * f);
    if (sq > 0 && wf != 0) {
      const QVector out = primitive_integral(wf > 0 ? w : Rational(-1) * w);
      const ConnectorClass cc = check_connector(family, out);
      if (!pair(g, family.embed(point, c1, c2), to_kvector(out, common_field(point.sigma))).is_zero())
        throw Error(ErrorCode::InternalInconsistency, "connector is not orthogonal to the point");
      return cc;
    }
    if (one.d > 0 && sq <= 0) break;
  }
  throw Error(ErrorCode::InternalInconsistency, "no connector found by the k search");
}

BrauerTransport twistor_to_brauer(const TwoClassFamily& family, const Rational& c1, const Rational& c2,
                                  const PeriodPoint& point) {
  BrauerTransport out;
  out.connector = connector_from_nl(family, c1, c2, point);
  const QVector& lp = out.connector.v;
  const size_t r = family.base.rank();
  out.b = QVector(r);
  for (size_t i = 0; i < r; ++i) out.b[i] = -lp[i] / out.connector.with_f;
  out.order = quotient_order(out.b);

  const BrilliantFamily lf = family.one_class(1, 1);
  out.point = brauer_period_from_B(lf, out.b);
  out.sigma = family.embed(out.point, 1, 1);

  const FieldPtr k = family.base.field;
  const FieldElement sb = pair(family.base.lattice.gram(), family.base.period, to_kvector(out.b, k));
  KVector expected = family.base.period;
  expected.push_back(sb);
  expected.push_back(sb);
  const QMatrix& g = family.extended.gram();
  out.on_lf = out.sigma == expected && pair(g, out.sigma, out.sigma).is_zero() &&
              nf_sign(hermitian_norm(g, out.sigma)) > 0;
  out.in_nl = nl_test(lf, out.point);
  out.orthogonal = pair(g, out.sigma, to_kvector(lp, k)).is_zero();
  return out;
}

namespace {

struct EquatorData {
  FieldElement u, b, rho, x, y;
  Rational ds;
};

EquatorData equator_data(const TwoClassFamily& family, const Rational& s, const Rational& theta) {
  if (s < 0 || s >= 1) throw Error(ErrorCode::SOutOfRange, "s = " + to_string(s) + " is outside [0, 1)");
  const FieldPtr k = family.base.field;
  const FieldElement g = FieldElement::generator(k);
  const FieldElement w = g - nf_conjugate(g);
  if (w.is_zero()) throw Error(ErrorCode::InvalidArgument, "the field generator is conj-fixed");
  EquatorData e;
  e.u = FieldElement::one(k) + theta * w;
  const FieldElement ub = nf_conjugate(e.u);
  e.b = -(e.u * nf_inverse(ub));
  e.ds = family.d * (1 - s * s);
  const FieldElement s0 = hermitian_norm(family.base.lattice.gram(), family.base.period);
  e.y = Rational(2 / e.ds) * s0;
  e.rho = e.y * nf_inverse(e.u * ub);
  e.x = FieldElement::zero(k);
  for (const auto& x : family.base.period) {
    const FieldElement z = x + e.b * nf_conjugate(x);
    e.x += z * nf_conjugate(z);
  }
  return e;
}

}  // namespace

EquatorSample equator_flow(const TwoClassFamily& family, const Rational& s, const Rational& theta, unsigned prec) {
  const EquatorData e = equator_data(family, s, theta);
  // 1 - |<sigma, f>|^2 / (|sigma|^2 |f|^2) with |c|^2 = Y.
  const Rational one_minus = (1 - s) * (1 - s), one_plus = 1 + s * s;
  const FieldElement num = Rational(2) * e.x + one_minus * e.y;
  const FieldElement den = Rational(2) * (e.x + one_plus * e.y);
  EquatorSample out{s, theta, num * nf_inverse(den), {}};
  out.distance = sqrt(nf_embed(out.distance_squared, prec).re, prec);
  return out;
}

PeriodPoint equator_point(const TwoClassFamily& family, const Rational& s, const Rational& theta) {
  const EquatorData e = equator_data(family, s, theta);
  FieldElement root;
  if (auto r = nf_sqrt(e.rho)) {
    root = *r;
  } else {
    root = nf_quadratic_extension(e.rho).root;
  }
  const FieldPtr f = root.field();
  return make_period(family.one_class(1, s), FieldElement::one(f), coerce(e.b, f), coerce(e.u, f) * root);
}

SpecializationTrace nl_specialization(const TwoClassFamily& family, const QVector& connector,
                                      const std::vector<Rational>& grid) {
  try {
    check_connector(family, connector);
  } catch (const Error& e) {
    throw Error(ErrorCode::InvalidConnector, e.what());
  }
  SpecializationTrace out;
  out.rows.resize(grid.size());
  kernels::parallel_for(grid.size(), [&](size_t i) {
    SpecializationRow& row = out.rows[i];
    row.s = grid[i];
    try {
      row.intersection = curve_meets_brilliant(family, connector, 1, grid[i]);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NoIntersectionInChart) throw;
      row.error = e.what();
    }
  });
  for (const auto& row : out.rows) {
    if (row.s != 1 || !row.intersection) continue;
    for (const auto& ip : row.intersection->points) {
      if (!ip.nl) continue;
      out.terminal = recover_bfield(row.intersection->family, ip.point);
      break;
    }
  }
  return out;
}

}  // namespace k3b
