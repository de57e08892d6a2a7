#include "k3b/hodge.hpp"

#include <random>

#include "k3b/error.hpp"
#include "k3b/kernels.hpp"
#include "k3b/roots.hpp"

namespace k3b {

K3HodgeStructure validate_period(const QuadLattice& lattice, const KVector& period) {
  const size_t r = lattice.rank();
  if (period.size() != r) throw Error(ErrorCode::DimensionMismatch, "period length differs from lattice rank");
  if (is_zero(period)) throw Error(ErrorCode::ZeroPeriod, "period is zero");
  const SignatureTriple sig = signature(lattice);
  if (r < 2 || sig != SignatureTriple{2, r - 2, 0})
    throw Error(ErrorCode::WrongSignature, "lattice signature is (" + std::to_string(sig.positive) + "," +
                                               std::to_string(sig.negative) + "," + std::to_string(sig.null) + ")");
  const FieldPtr f = common_field(period);
  const KVector p = coerce(period, f);
  const FieldElement ss = pair(lattice.gram(), p, p);
  if (!ss.is_zero()) throw Error(ErrorCode::NotIsotropic, "(sigma.sigma) = " + to_string(ss));
  if (nf_sign(hermitian_norm(lattice.gram(), p)) <= 0) throw Error(ErrorCode::NotPositive, "(sigma.conj sigma) <= 0");
  return {lattice, f, p};
}

Basis transcendental_lattice(const KVector& sigma) {
  return span_basis(coefficient_vectors(sigma), sigma.size());
}

size_t picard_number(size_t ambient_rank, const KVector& sigma) {
  return ambient_rank - transcendental_lattice(sigma).size();
}

bool is_irreducible(const K3HodgeStructure& h) { return transcendental_lattice(h.period).size() == h.rank(); }

QMatrix form_adjoint(const QMatrix& gram, const QMatrix& m) {
  const auto ginv = inverse(gram);
  if (!ginv) throw Error(ErrorCode::InvalidArgument, "adjoint needs a nondegenerate form");
  return kernels::matmul(*ginv, kernels::matmul(m.transpose(), gram));
}

std::optional<QVector> HodgeEndoAlgebra::coordinates(const QMatrix& phi) const {
  std::vector<QVector> flat;
  for (const auto& b : basis) flat.push_back(b.flat());
  return coordinates_in(flat, phi.flat());
}

QMatrix HodgeEndoAlgebra::element(const QVector& coords) const {
  QMatrix m(basis.front().rows(), basis.front().cols());
  for (size_t i = 0; i < basis.size(); ++i)
    if (coords[i] != 0) m += coords[i] * basis[i];
  return m;
}

namespace {

size_t pivot_index(const KVector& sigma) {
  size_t p = 0;
  while (sigma[p].is_zero()) ++p;
  return p;
}

}  // namespace

HodgeEndoAlgebra endo_algebra(const K3HodgeStructure& h, EndoConditions conditions) {
  if (!is_irreducible(h)) throw Error(ErrorCode::NotIrreducible, "transcendental lattice is a proper sublattice");
  const size_t r = h.rank(), n = r * r;
  const KVector& s = h.period;
  const FieldPtr f = h.field;
  const FieldElement zero = FieldElement::zero(f);
  const size_t p = pivot_index(s);

  // Unknown M_ab sits at index a*r + b.
  std::vector<KVector> rows;
  for (size_t i = 0; i < r; ++i) {
    if (i == p) continue;
    // (M s)_i s_p - (M s)_p s_i = 0
    KVector row(n, zero);
    for (size_t b = 0; b < r; ++b) {
      row[i * r + b] += s[b] * s[p];
      row[p * r + b] -= s[b] * s[i];
    }
    rows.push_back(std::move(row));
  }
  if (conditions == EndoConditions::LineAndAdjoint && r >= 3) {
    const auto ginv = inverse(h.lattice.gram());
    const KVector gs = h.lattice.gram() * s;
    const KVector sb = conjugate(s);
    // (M^dagger s)_x is linear in M: the coefficient of M_ab is Ginv_xb (G s)_a.
    auto component = [&](size_t x) {
      KVector c(n, zero);
      for (size_t a = 0; a < r; ++a)
        for (size_t b = 0; b < r; ++b) c[a * r + b] = (*ginv)(x, b) * gs[a];
      return c;
    };
    std::vector<KVector> comp;
    for (size_t x = 0; x < r; ++x) comp.push_back(component(x));
    auto minor2 = [&](size_t u, size_t v) { return s[u] * sb[v] - s[v] * sb[u]; };
    // Every 3x3 minor of (M^dagger s, s, conj s) vanishes.
    for (size_t x = 0; x < r; ++x)
      for (size_t y = x + 1; y < r; ++y)
        for (size_t z = y + 1; z < r; ++z) {
          const FieldElement cx = minor2(y, z), cy = minor2(x, z), cz = minor2(x, y);
          KVector row(n, zero);
          for (size_t j = 0; j < n; ++j) row[j] = comp[x][j] * cx - comp[y][j] * cy + comp[z][j] * cz;
          rows.push_back(std::move(row));
        }
  }

  HodgeEndoAlgebra alg;
  for (const auto& v : nullspace(expand_rows(rows, n))) alg.basis.push_back(QMatrix::unflatten(v, r, r));
  for (const auto& m : alg.basis) alg.eigenvalues.push_back((m * s)[p] / s[p]);

  QMatrix adj(alg.dim(), alg.dim());
  bool closed = true;
  for (size_t j = 0; j < alg.dim() && closed; ++j) {
    const auto c = alg.coordinates(form_adjoint(h.lattice.gram(), alg.basis[j]));
    if (!c) {
      closed = false;
      break;
    }
    for (size_t i = 0; i < alg.dim(); ++i) adj(i, j) = (*c)[i];
  }
  if (closed) alg.adjoint = std::move(adj);
  return alg;
}

std::optional<std::pair<QMatrix, QPoly>> find_primitive_element(const std::vector<QMatrix>& basis) {
  const size_t n = basis.size();
  if (n == 0) return std::nullopt;
  auto combine = [&](const std::vector<int>& c) {
    QMatrix m(basis.front().rows(), basis.front().cols());
    for (size_t i = 0; i < n; ++i)
      if (c[i] != 0) m += Rational(c[i]) * basis[i];
    return m;
  };
  for (const auto& b : basis) {
    QPoly mp = minimal_polynomial(b);
    if (static_cast<size_t>(mp.degree()) == n) return std::make_pair(b, std::move(mp));
  }
  std::mt19937 rng(20240601);
  for (int bound = 1; bound <= 6; ++bound) {
    std::uniform_int_distribution<int> dist(-bound, bound);
    for (int attempt = 0; attempt < 32; ++attempt) {
      std::vector<int> c(n);
      for (auto& x : c) x = dist(rng);
      QMatrix m = combine(c);
      QPoly mp = minimal_polynomial(m);
      if (static_cast<size_t>(mp.degree()) == n) return std::make_pair(std::move(m), std::move(mp));
    }
  }
  return std::nullopt;
}

EndoClassification classify_endo(const K3HodgeStructure& h, const HodgeEndoAlgebra& algebra) {
  const size_t n = algebra.dim();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      if (algebra.basis[i] * algebra.basis[j] != algebra.basis[j] * algebra.basis[i])
        throw Error(ErrorCode::NotAField, "endomorphism algebra is not commutative");
  auto prim = find_primitive_element(algebra.basis);
  if (!prim) throw Error(ErrorCode::NotAField, "no primitive element found");
  if (!is_irreducible(prim->second)) throw Error(ErrorCode::NotAField, "primitive minimal polynomial is reducible");

  EndoClassification cls;
  cls.degree = n;
  cls.primitive = prim->first;
  cls.primitive_minpoly = prim->second;
  cls.kind = nf_is_totally_real(cls.primitive_minpoly) ? EndoKind::RM : EndoKind::CM;
  cls.is_cm_hodge = cls.kind == EndoKind::CM && n == h.rank();

  if (!algebra.adjoint) throw Error(ErrorCode::NotAField, "algebra is not closed under the adjoint");
  std::vector<QMatrix> fixed;
  for (const auto& c : nullspace(*algebra.adjoint - QMatrix::identity(n))) fixed.push_back(algebra.element(c));
  cls.k0_degree = fixed.size();
  if (fixed.size() <= 1) {
    cls.k0_minpoly = QPoly::x();
    cls.k0_primitive = QMatrix::identity(h.rank());
  } else {
    auto k0 = find_primitive_element(fixed);
    if (!k0) throw Error(ErrorCode::NotAField, "no primitive element in the fixed subalgebra");
    cls.k0_primitive = k0->first;
    cls.k0_minpoly = k0->second;
  }
  if (cls.kind == EndoKind::CM && 2 * cls.k0_degree != n)
    throw Error(ErrorCode::InternalInconsistency, "CM algebra whose adjoint-fixed part is not of half dimension");
  if (cls.kind == EndoKind::RM && cls.k0_degree != n)
    throw Error(ErrorCode::InternalInconsistency, "RM algebra not fixed by the adjoint");
  return cls;
}

FieldElement eigenvalue_embedding(const K3HodgeStructure& h, const HodgeEndoAlgebra& algebra, const QMatrix& phi) {
  if (!algebra.coordinates(phi)) throw Error(ErrorCode::NotInAlgebra, "matrix is not in the endomorphism algebra");
  const size_t p = pivot_index(h.period);
  return (phi * h.period)[p] / h.period[p];
}

FieldElement EndoField::element(const QMatrix& phi) const {
  std::vector<QVector> flat;
  for (const auto& m : powers) flat.push_back(m.flat());
  const auto c = coordinates_in(flat, phi.flat());
  if (!c) throw Error(ErrorCode::NotInAlgebra, "matrix is not a polynomial in the primitive element");
  return FieldElement(field, *c);
}

EndoField endo_field(const K3HodgeStructure& h, const HodgeEndoAlgebra& algebra, const EndoClassification& cls) {
  EndoField ef;
  const size_t n = cls.degree;
  ef.powers.push_back(QMatrix::identity(h.rank()));
  for (size_t k = 1; k < n; ++k) ef.powers.push_back(ef.powers.back() * cls.primitive);
  std::vector<QVector> flat;
  for (const auto& m : ef.powers) flat.push_back(m.flat());
  const auto conj = coordinates_in(flat, form_adjoint(h.lattice.gram(), cls.primitive).flat());
  if (!conj) throw Error(ErrorCode::NotAField, "adjoint leaves the field");
  const FieldElement lambda = eigenvalue_embedding(h, algebra, cls.primitive);
  for (unsigned prec = 32; prec <= 1024; prec *= 2) {
    try {
      ef.field = nf_create(cls.primitive_minpoly, *conj, nf_embed(lambda, prec), "End");
      return ef;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::AmbiguousEmbedding) throw;
    }
  }
  throw Error(ErrorCode::AmbiguousEmbedding, "eigenvalue of the primitive element could not be isolated");
}

}  // namespace k3b
