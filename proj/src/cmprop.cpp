#include "k3b/cmprop.hpp"

#include "k3b/error.hpp"
#include "k3b/roots.hpp"

namespace k3b {

FiberStructure fiber_structure(const BrilliantFamily& family, const PeriodPoint& point) {
  if (!nl_test(family, point)) throw Error(ErrorCode::NotNLPoint, "point is not in the Noether-Lefschetz locus");
  FiberStructure fs;
  fs.basis = transcendental_lattice(point.sigma);
  const auto y = coordinates_in(fs.basis, point.sigma);
  if (!y) throw Error(ErrorCode::InternalInconsistency, "period outside its transcendental lattice");
  fs.hodge = validate_period(QuadLattice(restrict_form(family.extended.gram(), fs.basis)), *y);
  return fs;
}

namespace {

bool is_x(const QPoly& p) { return p.degree() == 1 && p.coeffs()[0] == 0; }

// Q[x]/(q) for a totally real irreducible q, with trivial conjugation and
// the first real root.
FieldPtr real_field(const QPoly& q) {
  if (q.degree() == 1) return rationals();
  QVector id(q.degree(), 0);
  id[1] = 1;
  for (const Box& b : isolate_roots(q))
    if (b.im.contains_zero()) return nf_create(q, id, b);
  throw Error(ErrorCode::InvalidArgument, "polynomial has no real root: " + to_string(q));
}

// Whether q has a root in Q(mu) inside the field of mu.
bool has_root_in_span(const FieldElement& mu, size_t degree, const QPoly& q) {
  std::vector<QVector> powers;
  for (size_t i = 0; i < degree; ++i) powers.push_back(nf_pow(mu, static_cast<unsigned>(i)).coeffs());
  for (const auto& r : roots_in_field(mu.field(), q))
    if (coordinates_in(powers, r.coeffs())) return true;
  return false;
}

bool has_root(const FieldPtr& f, const QPoly& p) {
  if (p.degree() == 1) return true;
  return !roots_in_field(f, p).empty();
}

QMatrix companion(const QPoly& q) {
  const size_t k = static_cast<size_t>(q.degree());
  QMatrix c(k, k);
  for (size_t i = 1; i < k; ++i) c(i, i - 1) = 1;
  for (size_t i = 0; i < k; ++i) c(i, k - 1) = -q.coeffs()[i] / q.coeffs()[k];
  return c;
}

}  // namespace

bool fields_isomorphic(const QPoly& p, const QPoly& q) {
  if (p.degree() != q.degree()) return false;
  return has_root(real_field(q), p) && has_root(real_field(p), q);
}

bool totally_negative(const QPoly& q, const QVector& x) {
  const QPoly cp = charpoly(eval_matrix(QPoly(x), companion(q)));
  if (cp.coeff(0) == 0) return false;
  return count_real_roots(cp, 0, 0, false, true) == 0;
}

RelativePoly relative_minpoly(const PropagationReport& report) {
  const QPoly& q0 = report.base_classification.k0_minpoly;
  const FieldPtr f = report.fiber_field.field;
  FieldElement r = FieldElement::zero(f);
  if (!is_x(q0)) {
    const auto roots = roots_in_field(f, q0);
    if (roots.empty()) throw Error(ErrorCode::EmbeddingMissing, "K0 has no image in the fiber field");
    r = roots.front();
  }
  const size_t k = static_cast<size_t>(q0.degree()), n = f->degree();
  RelativePoly out;
  out.k0_minpoly = q0;
  if (n == k) {
    out.trivial = true;
    return out;
  }
  if (n != 2 * k) throw Error(ErrorCode::InternalInconsistency, "fiber field is not quadratic over K0");

  const FieldElement theta = FieldElement::generator(f);
  std::vector<KVector> columns;
  for (size_t i = 0; i < k; ++i) columns.push_back({nf_pow(r, static_cast<unsigned>(i)) * theta});
  for (size_t i = 0; i < k; ++i) columns.push_back({nf_pow(r, static_cast<unsigned>(i))});
  const auto sol = solve_rational(columns, {-(theta * theta)});
  if (!sol) throw Error(ErrorCode::InternalInconsistency, "no quadratic relation over K0");
  out.gamma = QVector(sol->begin(), sol->begin() + static_cast<long>(k));
  out.delta = QVector(sol->begin() + static_cast<long>(k), sol->end());
  const QPoly g(out.gamma), dl(out.delta);
  QPoly disc = (g * g - Rational(4) * dl) % q0;
  out.discriminant = disc.coeffs();
  out.discriminant.resize(k);
  out.discriminant_totally_negative = totally_negative(q0, out.discriminant);
  return out;
}

PropagationReport verify_cm_propagation(const BrilliantFamily& family, const PeriodPoint& point) {
  const K3HodgeStructure& base = family.base;
  const HodgeEndoAlgebra base_alg = endo_algebra(base);
  PropagationReport rep;
  rep.base_classification = classify_endo(base, base_alg);
  if (!rep.base_classification.is_cm_hodge || rep.base_classification.kind != EndoKind::CM)
    throw Error(ErrorCode::BaseNotCM, "base structure is not CM");
  rep.fiber = fiber_structure(family, point);
  const HodgeEndoAlgebra fiber_alg = endo_algebra(rep.fiber.hodge);
  rep.fiber_classification = classify_endo(rep.fiber.hodge, fiber_alg);
  rep.fiber_field = endo_field(rep.fiber.hodge, fiber_alg, rep.fiber_classification);

  const QPoly& q0 = rep.base_classification.k0_minpoly;
  rep.k0_embeds = is_x(q0) || has_root(rep.fiber_field.field, q0);
  const QPoly& q1 = rep.fiber_classification.k0_minpoly;
  rep.fields_k0_isomorphic = (is_x(q0) && is_x(q1)) || fields_isomorphic(q0, q1);

  const EndoField base_field = endo_field(base, base_alg, rep.base_classification);
  rep.fields_isomorphic = base_field.field->degree() == rep.fiber_field.field->degree() &&
                          has_root(rep.fiber_field.field, rep.base_classification.primitive_minpoly) &&
                          has_root(base_field.field, rep.fiber_classification.primitive_minpoly);

  rep.s0 = hermitian_norm(base.lattice.gram(), base.period);
  const Basis perp = orthogonal_complement(family.extended.gram(), rep.fiber.basis);
  if (perp.size() != 1) throw Error(ErrorCode::InternalInconsistency, "NL point with Picard number != 1");
  rep.perp_class = primitive_integral(perp[0]);
  rep.m = family.extended.pair(family.ell(), rep.perp_class);
  if (rep.k0_embeds) rep.relative_poly = relative_minpoly(rep);

  const HodgeEndoAlgebra line = endo_algebra(rep.fiber.hodge, EndoConditions::LineOnly);
  rep.line_only.dim = line.dim();
  if (const auto prim = find_primitive_element(line.basis); prim && is_irreducible(prim->second)) {
    rep.line_only.is_field = true;
    rep.line_only.minpoly = prim->second;
    rep.line_only.totally_imaginary = count_real_roots(prim->second) == 0;
    rep.line_only.k0_embeds =
        is_x(q0) || has_root_in_span(eigenvalue_embedding(rep.fiber.hodge, line, prim->first), line.dim(), q0);
  }
  rep.line_only.discrepancy = line.dim() != fiber_alg.dim();
  return rep;
}

}  // namespace k3b
