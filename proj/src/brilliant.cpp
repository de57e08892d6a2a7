#include "k3b/brilliant.hpp"

#include "k3b/error.hpp"

namespace k3b {

QVector BrilliantFamily::ell() const {
  QVector v(rank(), 0);
  v.back() = 1;
  return v;
}

BrilliantFamily make_family(const K3HodgeStructure& base, const Rational& d) {
  if (!is_irreducible(base)) throw Error(ErrorCode::NotIrreducible, "brilliant families need an irreducible base");
  return {base, d, extend_by_class(base.lattice, d)};
}

DomainClass classify_domain(const BrilliantFamily& family) {
  const int s = sign(family.d);
  if (s > 0) return DomainClass::TwistorSphere;
  if (s == 0) return DomainClass::BrauerTwoLines;
  return DomainClass::DworkTwoHalfPlanes;
}

const char* domain_class_name(DomainClass c) {
  switch (c) {
    case DomainClass::TwistorSphere:
      return "TwistorSphere";
    case DomainClass::BrauerTwoLines:
      return "BrauerTwoLines";
    case DomainClass::DworkTwoHalfPlanes:
      return "DworkTwoHalfPlanes";
  }
  return "?";
}

namespace {

KVector assemble(const BrilliantFamily& family, const FieldElement& a, const FieldElement& b, const FieldElement& c) {
  const FieldPtr f = common_field(common_field(common_field(a.field(), b.field()), c.field()), family.base.field);
  const KVector s0 = coerce(family.base.period, f);
  const KVector s0b = conjugate(s0);
  KVector sigma;
  for (size_t i = 0; i < s0.size(); ++i) sigma.push_back(a * s0[i] + b * s0b[i]);
  sigma.push_back(coerce(c, f));
  return sigma;
}

KVector ell_vector(const BrilliantFamily& family, const FieldPtr& f) { return to_kvector(family.ell(), f); }

void require_brauer(const BrilliantFamily& family) {
  if (family.d != 0) throw Error(ErrorCode::NotBrauerType, "operation needs (l.l) = 0");
}

}  // namespace

PeriodPoint make_period(const BrilliantFamily& family, const FieldElement& a, const FieldElement& b,
                        const FieldElement& c) {
  const FieldPtr f = common_field(common_field(common_field(a.field(), b.field()), c.field()), family.base.field);
  PeriodPoint p{coerce(a, f), coerce(b, f), coerce(c, f), {}};
  if (!p.a.is_zero()) {
    const FieldElement inv = nf_inverse(p.a);
    p = {FieldElement::one(f), p.b * inv, p.c * inv, {}};
  } else if (!p.b.is_zero()) {
    const FieldElement inv = nf_inverse(p.b);
    p = {p.a, FieldElement::one(f), p.c * inv, {}};
  }
  p.sigma = assemble(family, p.a, p.b, p.c);
  const QMatrix& g = family.extended.gram();
  if (!pair(g, p.sigma, p.sigma).is_zero()) throw Error(ErrorCode::NotOnConic, "(sigma.sigma) != 0");
  if (nf_sign(hermitian_norm(g, p.sigma)) <= 0) throw Error(ErrorCode::NotPositive, "(sigma.conj sigma) <= 0");
  return p;
}

bool is_brilliant(const BrilliantFamily& family, const PeriodPoint& point) {
  const FieldPtr f = common_field(point.sigma);
  const KVector sb = conjugate(point.sigma);
  std::vector<KVector> columns;
  for (size_t k = 0; k < f->degree(); ++k) {
    const FieldElement gk = nf_pow(FieldElement::generator(f), static_cast<unsigned>(k));
    columns.push_back(gk * point.sigma + nf_conjugate(gk) * sb);
  }
  return !solve_rational(columns, ell_vector(family, f)).has_value();
}

bool equator_test(const BrilliantFamily& family, const PeriodPoint& point) {
  if (family.d <= 0) throw Error(ErrorCode::NotTwistorType, "equator needs (l.l) > 0");
  return !is_brilliant(family, point);
}

bool nl_test_by_signature(const BrilliantFamily& family, const PeriodPoint& point) {
  const Basis tt = transcendental_lattice(point.sigma);
  const size_t r = family.base.rank();
  return signature(restrict_form(family.extended.gram(), tt)) == SignatureTriple{2, r - 2, 0};
}

bool nl_test_by_bfield(const BrilliantFamily& family, const PeriodPoint& point) {
  require_brauer(family);
  if (!point.a.is_zero() && !point.b.is_zero()) return false;
  // On L_l the point is sigma0 + (sigma0.B) l, on the conjugate line
  // conj(sigma0) + (conj(sigma0).B) l.
  const KVector s = point.a.is_zero() ? conjugate(family.base.period) : family.base.period;
  const KVector gs = family.base.lattice.gram() * s;
  std::vector<KVector> columns;
  for (const auto& x : gs) columns.push_back({x});
  return solve_rational(columns, {point.c}).has_value();
}

bool nl_test(const BrilliantFamily& family, const PeriodPoint& point) {
  const bool by_sig = nl_test_by_signature(family, point);
  if (family.d == 0 && nl_test_by_bfield(family, point) != by_sig)
    throw Error(ErrorCode::InternalInconsistency, "signature and B-field NL tests disagree");
  return by_sig;
}

Projection projection_to_base(const BrilliantFamily& family, const PeriodPoint& point) {
  if (!nl_test(family, point)) throw Error(ErrorCode::NotNLPoint, "point is not in the Noether-Lefschetz locus");
  const size_t r = family.base.rank();
  Projection pr;
  pr.tt = transcendental_lattice(point.sigma);
  pr.matrix = QMatrix(r, pr.tt.size());
  for (size_t j = 0; j < pr.tt.size(); ++j)
    for (size_t i = 0; i < r; ++i) pr.matrix(i, j) = pr.tt[j][i];
  pr.bijective = pr.matrix.is_square() && determinant(pr.matrix) != 0;
  pr.isometry = restrict_form(family.extended.gram(), pr.tt) == restrict_form(family.base.lattice.gram(), pr.matrix.columns());
  const auto y = coordinates_in(pr.tt, point.sigma);
  if (!y) throw Error(ErrorCode::InternalInconsistency, "period outside its transcendental lattice");
  const KVector image = pr.matrix * *y;
  const FieldPtr f = common_field(point.sigma);
  const KVector s0 = coerce(family.base.period, f);
  pr.period_match = image == s0 || image == conjugate(s0);
  return pr;
}

PeriodPoint brauer_period_from_B(const BrilliantFamily& family, const QVector& b) {
  require_brauer(family);
  const FieldPtr f = family.base.field;
  const FieldElement c = pair(family.base.lattice.gram(), family.base.period, to_kvector(b, f));
  return make_period(family, FieldElement::one(f), FieldElement::zero(f), c);
}

BrauerClass recover_bfield(const BrilliantFamily& family, const PeriodPoint& point) {
  require_brauer(family);
  if (point.a.is_zero()) throw Error(ErrorCode::WrongComponent, "point lies on the conjugate line");
  if (!point.b.is_zero()) throw Error(ErrorCode::NotNLPoint, "point is not of the form sigma0 + c l");
  const KVector gs = family.base.lattice.gram() * family.base.period;
  std::vector<KVector> columns;
  for (const auto& x : gs) columns.push_back({x});
  const auto b = solve_rational(columns, {point.c});
  if (!b) throw Error(ErrorCode::NotNLPoint, "c is not of the form (sigma0.B) with B rational");
  return {*b, quotient_order(*b)};
}

BFieldEmbedding fB_embedding(const BrilliantFamily& family, const QVector& b) {
  require_brauer(family);
  const size_t r = family.base.rank();
  const QVector gb = family.base.lattice.gram() * b;
  BFieldEmbedding out;
  out.matrix = QMatrix(r + 1, r);
  for (size_t i = 0; i < r; ++i) {
    out.matrix(i, i) = 1;
    out.matrix(r, i) = gb[i];
  }
  out.image = span_basis(out.matrix.columns(), r + 1);
  out.image_is_transcendental = out.image == transcendental_lattice(brauer_period_from_B(family, b).sigma);
  out.isometric = restrict_form(family.extended.gram(), out.matrix.columns()) == family.base.lattice.gram();
  return out;
}

Basis one_one_space(const BrilliantFamily& family, const PeriodPoint& point) {
  return nullspace(expand_rows({family.extended.gram() * point.sigma}, family.rank()));
}

}  // namespace k3b
