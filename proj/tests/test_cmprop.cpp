#include <doctest.h>

#include "k3b/cmprop.hpp"
#include "k3b/compose.hpp"
#include "k3b/error.hpp"
#include "k3b/roots.hpp"
#include "oracles.hpp"
#include "structures.hpp"

using namespace k3b;
using namespace teststruct;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InternalInconsistency;
}

struct Sample {
  BrilliantFamily family;
  PeriodPoint point;
};

// NL points of one-class families, reached through two-class intersections
// (d_l = d c1^2 - d c2^2 of either sign) or through B-fields (d = 0).
std::vector<Sample> nl_samples(const K3HodgeStructure& base, const Rational& d, const Rational& c1, const Rational& c2,
                               oracle::RandomRationals& rnd, size_t want) {
  const TwoClassFamily fam = make_two_class(base, d);
  std::vector<Sample> out;
  for (int tries = 0; out.size() < want && tries < 200; ++tries) {
    QVector v(fam.rank());
    for (size_t i = 0; i < v.size(); ++i) v[i] = rnd.next_int(i + 2 < v.size() ? -2 : -8, i + 2 < v.size() ? 2 : 8);
    try {
      check_connector(fam, v);
    } catch (const Error&) {
      continue;
    }
    const CurveIntersection ci = curve_meets_brilliant(fam, v, c1, c2);
    for (const auto& ip : ci.points)
      if (out.size() < want) out.push_back({ci.family, ip.point});
  }
  return out;
}

std::vector<Sample> bfield_samples(const K3HodgeStructure& base, oracle::RandomRationals& rnd, size_t want) {
  const BrilliantFamily fam = make_family(base, 0);
  std::vector<Sample> out;
  while (out.size() < want) {
    const QVector b = rnd.vector(base.rank(), 5, 6);
    if (is_zero(b)) continue;
    out.push_back({fam, brauer_period_from_B(fam, b)});
  }
  return out;
}

FieldPtr zeta8() {
  static const FieldPtr f = nf_create(QPoly{1, 0, 0, 0, 1}, {0, 0, 0, -1},
                                      rect(Rational(7, 10), Rational(71, 100), Rational(7, 10), Rational(71, 100)));
  return f;
}

// diag(1,1,-1) with sigma = (sqrt2, i, 1): odd rank, so no CM.
K3HodgeStructure rank3_generic() {
  const FieldPtr k = zeta8();
  const FieldElement z = FieldElement::generator(k);
  const FieldElement i = z * z, r2 = z - z * z * z;
  return validate_period(QuadLattice(QMatrix::diagonal({1, 1, -1})), {r2, i, FieldElement::one(k)});
}

// Delta1 / tau(Delta2) is a square in K0 for some automorphism tau of K0.
bool same_quadratic_extension(const QPoly& q0, const QVector& d1, const QVector& d2) {
  QVector id(q0.degree(), 0);
  if (q0.degree() == 1) return nf_sqrt(FieldElement(rationals(), d1[0] / d2[0])).has_value();
  id[1] = 1;
  Box real;
  for (const Box& b : isolate_roots(q0))
    if (b.im.contains_zero()) real = b;
  const FieldPtr k0 = nf_create(q0, id, real);
  const FieldElement a(k0, d1), b(k0, d2);
  for (const auto& t : roots_in_field(k0, q0)) {
    const FieldElement tb = nf_eval(QPoly(d2), t);
    if (nf_sqrt(a / tb)) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("fiber structure of an NL point") {
  const K3HodgeStructure h = fermat();
  const BrilliantFamily fam = make_family(h, 0);
  const PeriodPoint p = brauer_period_from_B(fam, {Rational(1, 2), 0});
  const FiberStructure fs = fiber_structure(fam, p);
  CHECK(fs.hodge.rank() == 2);
  CHECK(fs.hodge.lattice.gram() == restrict_form(fam.extended.gram(), fs.basis));
  CHECK(signature(fs.hodge.lattice) == SignatureTriple{2, 0, 0});
  // The period in fiber coordinates maps back onto sigma_t.
  KVector back(3, FieldElement::zero(h.field));
  for (size_t j = 0; j < fs.basis.size(); ++j)
    back = back + fs.hodge.period[j] * to_kvector(fs.basis[j], h.field);
  CHECK(back == p.sigma);
}

TEST_CASE("Fermat propagation") {
  oracle::RandomRationals rnd(3301);
  std::vector<Sample> samples = nl_samples(fermat(), 8, 1, 0, rnd, 4);
  for (const auto& s : nl_samples(fermat(), 4, 0, 1, rnd, 4)) samples.push_back(s);
  for (const auto& s : bfield_samples(fermat(), rnd, 4)) samples.push_back(s);
  REQUIRE(samples.size() == 12);
  for (const auto& s : samples) {
    const PropagationReport rep = verify_cm_propagation(s.family, s.point);
    CHECK(rep.base_classification.k0_minpoly == QPoly::x());
    CHECK(rep.fiber_classification.kind == EndoKind::CM);
    CHECK(rep.fiber_classification.degree == 2);
    CHECK(rep.fiber_classification.is_cm_hodge);
    CHECK(rep.k0_embeds);
    CHECK(rep.fields_k0_isomorphic);
    // The fiber algebra contains the identity.
    CHECK(rep.fiber_field.powers[0] == QMatrix::identity(2));
    REQUIRE(rep.relative_poly);
    CHECK_FALSE(rep.relative_poly->trivial);
    CHECK(rep.relative_poly->discriminant.size() == 1);
    CHECK(rep.relative_poly->discriminant[0] < 0);
    CHECK(rep.relative_poly->discriminant_totally_negative);
    // X^2 + gamma X + delta is the minimal polynomial of the fiber generator.
    CHECK(rep.fiber_field.field->minpoly() ==
          QPoly{rep.relative_poly->delta[0], rep.relative_poly->gamma[0], 1});
    CHECK(rep.s0 == FieldElement(fermat().field, 16));
  }
}

// The endomorphism of T_t obtained from phi on T through the projection
// T_t -> T that drops the l coordinate.
QMatrix projected(const QMatrix& phi, const Basis& basis) {
  const size_t r = phi.rows();
  std::vector<QVector> images;
  for (const auto& b : basis) images.push_back(QVector(b.begin(), b.begin() + static_cast<long>(r)));
  QMatrix m(basis.size(), basis.size());
  for (size_t j = 0; j < basis.size(); ++j) {
    const auto c = coordinates_in(images, phi * images[j]);
    REQUIRE(c);
    for (size_t i = 0; i < basis.size(); ++i) m(i, j) = (*c)[i];
  }
  return m;
}

TEST_CASE("cm4 with d = 0: the full CM field propagates") {
  oracle::RandomRationals rnd(8812);
  const K3HodgeStructure h = cm4();
  const EndoClassification base = classify_endo(h, endo_algebra(h));
  REQUIRE(base.k0_degree == 2);
  const BrilliantFamily d0 = make_family(h, 0);
  const PropagationReport self =
      verify_cm_propagation(d0, make_period(d0, FieldElement::one(h.field), FieldElement::zero(h.field),
                                            FieldElement::zero(h.field)));
  CHECK(self.fields_isomorphic);
  REQUIRE(self.relative_poly);

  for (const auto& s : bfield_samples(h, rnd, 6)) {
    const PropagationReport rep = verify_cm_propagation(s.family, s.point);
    CHECK(rep.fiber_classification.kind == EndoKind::CM);
    CHECK(rep.fiber_classification.is_cm_hodge);
    CHECK(rep.fiber_classification.degree == 4);
    CHECK(rep.k0_embeds);
    CHECK(rep.fields_k0_isomorphic);
    CHECK(rep.fields_isomorphic);
    CHECK_FALSE(rep.line_only.discrepancy);
    // The projection is a Hodge isometry, so phi_t is phi in the new basis.
    const QMatrix phit = projected(base.k0_primitive, rep.fiber.basis);
    CHECK(endo_algebra(rep.fiber.hodge).coordinates(phit));
    REQUIRE(rep.relative_poly);
    CHECK(rep.relative_poly->discriminant_totally_negative);
    CHECK(same_quadratic_extension(base.k0_minpoly, rep.relative_poly->discriminant, self.relative_poly->discriminant));
  }
}

// For d != 0 only the identity survives as a Hodge endomorphism of T_t.
// Oracle: a Hodge endomorphism with real eigenvalue in Q(lambda) would be
// a + b phi_t (both fix the line of sigma_t and Q-linear maps killing sigma_t
// vanish on T_t), and phi_t is not self-adjoint because phi does not fix the
// line through the T-part of l'.
TEST_CASE("cm4 with d != 0: K0 survives only on the (2,0) line") {
  oracle::RandomRationals rnd(8812);
  const K3HodgeStructure h = cm4();
  const EndoClassification base = classify_endo(h, endo_algebra(h));
  std::vector<Sample> samples = nl_samples(h, Rational(1, 4), 1, 0, rnd, 4);
  for (const auto& s : nl_samples(h, 8, 0, 1, rnd, 4)) samples.push_back(s);
  REQUIRE(samples.size() == 8);
  size_t twistor = 0, dwork = 0;
  for (const auto& s : samples) {
    (s.family.d > 0 ? twistor : dwork)++;
    const PropagationReport rep = verify_cm_propagation(s.family, s.point);
    const QMatrix phit = projected(base.k0_primitive, rep.fiber.basis);
    const QMatrix gram = rep.fiber.hodge.lattice.gram();
    const KVector& sig = rep.fiber.hodge.period;

    size_t p = 0;
    while (sig[p].is_zero()) ++p;
    const FieldElement lambda = (phit * sig)[p] / sig[p];
    CHECK(phit * sig == lambda * sig);
    CHECK(nf_is_totally_real(base.k0_minpoly));
    CHECK(form_adjoint(gram, phit) != phit);
    const QVector alpha(rep.perp_class.begin(), rep.perp_class.end() - 1);
    CHECK_FALSE(is_zero(alpha));
    const QVector image = base.k0_primitive * alpha;
    CHECK_FALSE(coordinates_in(std::vector<QVector>{alpha}, image));

    CHECK(rep.fiber_classification.degree == 1);
    CHECK_FALSE(rep.k0_embeds);
    CHECK_FALSE(rep.fiber_classification.is_cm_hodge);
    CHECK(rep.m != 0);
    // Under (a) alone, phi_t generates K0 inside a quartic field.
    CHECK(rep.line_only.discrepancy);
    CHECK(rep.line_only.dim == 4);
    CHECK(rep.line_only.is_field);
    CHECK(rep.line_only.k0_embeds);
    CHECK(endo_algebra(rep.fiber.hodge, EndoConditions::LineOnly).coordinates(phit));
  }
  CHECK(twistor == 4);
  CHECK(dwork == 4);
}

TEST_CASE("totally negative and field isomorphism helpers") {
  const QPoly q{-5, 0, 1};  // r = sqrt 5
  CHECK(totally_negative(q, {-1, 0}));
  CHECK_FALSE(totally_negative(q, {1, 0}));
  // -3 + r is negative at -sqrt5 and at sqrt5 (about -0.76).
  CHECK(totally_negative(q, {-3, 1}));
  // -2 + r is positive at sqrt5.
  CHECK_FALSE(totally_negative(q, {-2, 1}));
  CHECK_FALSE(totally_negative(q, {0, 0}));
  CHECK(fields_isomorphic(QPoly{-5, 0, 1}, QPoly{-1, -1, 1}));  // Q(sqrt5) = Q(golden ratio)
  CHECK_FALSE(fields_isomorphic(QPoly{-5, 0, 1}, QPoly{-2, 0, 1}));
  CHECK_FALSE(fields_isomorphic(QPoly{-5, 0, 1}, QPoly{-2, 1}));
}

TEST_CASE("propagation errors") {
  const K3HodgeStructure h = fermat();
  const BrilliantFamily fam = make_family(h, 0);
  const QuadraticExtension ext = nf_quadratic_extension(FieldElement(h.field, 2));
  const PeriodPoint bad =
      make_period(fam, FieldElement::one(ext.field), FieldElement::zero(ext.field), ext.root);
  CHECK(code_of([&] { verify_cm_propagation(fam, bad); }) == ErrorCode::NotNLPoint);
  CHECK(code_of([&] { fiber_structure(fam, bad); }) == ErrorCode::NotNLPoint);

  const K3HodgeStructure g = rank3_generic();
  CHECK(is_irreducible(g));
  const BrilliantFamily gf = make_family(g, 0);
  const PeriodPoint gp = brauer_period_from_B(gf, {1, 0, 0});
  CHECK(code_of([&] { verify_cm_propagation(gf, gp); }) == ErrorCode::BaseNotCM);

  PropagationReport rep = verify_cm_propagation(fam, brauer_period_from_B(fam, {1, 0}));
  // A K0 that cannot embed in Q(i).
  rep.base_classification.k0_minpoly = QPoly{-2, 0, 1};
  CHECK(code_of([&] { relative_minpoly(rep); }) == ErrorCode::EmbeddingMissing);
}
