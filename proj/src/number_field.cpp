#include "k3b/number_field.hpp"

#include <algorithm>
#include <cctype>

#include "k3b/error.hpp"
#include "k3b/roots.hpp"

namespace k3b {

namespace {

// Index of the unique root box meeting `b`, or -1 if none or several.
int unique_hit(const std::vector<Box>& roots, const Box& b) {
  int hit = -1;
  for (size_t i = 0; i < roots.size(); ++i) {
    if (!intersects(roots[i], b)) continue;
    if (hit >= 0) return -1;
    hit = static_cast<int>(i);
  }
  return hit;
}

QVector apply_poly(const QPoly& p, const QMatrix& m, const QVector& v) {
  QVector r(v.size());
  for (size_t i = p.coeffs().size(); i-- > 0;) {
    r = m * r;
    for (size_t j = 0; j < v.size(); ++j) r[j] += p.coeffs()[i] * v[j];
  }
  return r;
}

}  // namespace

struct FieldBuilder {
  static std::shared_ptr<NumberField> build(const QPoly& minpoly, const QVector& conj_image, const Box& embedding,
                                            std::string name) {
    if (minpoly.degree() < 1 || !minpoly.is_monic())
      throw Error(ErrorCode::InvalidArgument, "minimal polynomial must be monic of degree >= 1");
    if (minpoly.degree() > kMaxFieldDegree)
      throw Error(ErrorCode::UnsupportedDegree, "field degree " + std::to_string(minpoly.degree()) + " exceeds 8");
    if (!is_irreducible(minpoly)) throw Error(ErrorCode::ReducibleMinpoly, to_string(minpoly) + " is reducible");
    const size_t m = static_cast<size_t>(minpoly.degree());
    if (conj_image.size() != m) throw Error(ErrorCode::InvalidInvolution, "conj_image must have one entry per degree");

    std::shared_ptr<NumberField> f(new NumberField());
    f->minpoly_ = minpoly;
    f->conj_image_ = conj_image;
    f->name_ = std::move(name);

    const QPoly c(conj_image);
    if (!(minpoly.compose(c) % minpoly).is_zero())
      throw Error(ErrorCode::InvalidInvolution, "conj_image is not a root of the minimal polynomial");
    f->conj_ = QMatrix(m, m);
    QPoly cp = QPoly::constant(1);
    for (size_t j = 0; j < m; ++j) {
      const QVector col = f->reduce(cp);
      for (size_t i = 0; i < m; ++i) f->conj_(i, j) = col[i];
      cp = (cp * c) % minpoly;
    }
    if (f->reduce(c.compose(c)) != f->power(1)) throw Error(ErrorCode::InvalidInvolution, "conj applied twice is not the identity");

    // The embedding is the unique root whose isolating box, refined to width
    // 2^-64 (further while several qualify), meets the given rectangle.
    std::vector<Box> roots = isolate_roots(minpoly);
    int chosen = -1;
    for (unsigned prec = 64; prec <= 512; prec += 64) {
      size_t hits = 0;
      for (size_t i = 0; i < roots.size(); ++i) {
        roots[i] = refine_root(minpoly, roots[i], prec);
        if (intersects(roots[i], embedding)) {
          ++hits;
          chosen = static_cast<int>(i);
        }
      }
      if (hits == 0) throw Error(ErrorCode::AmbiguousEmbedding, "embedding box contains no root");
      if (hits == 1) break;
      chosen = -1;
    }
    if (chosen < 0) throw Error(ErrorCode::AmbiguousEmbedding, "embedding box meets several roots");

    // Conjugation compatibility: conj_image evaluated at the chosen root must
    // be the complex conjugate root.
    bool decided = false;
    for (unsigned prec = 64; prec <= 1024 && !decided; prec += 64) {
      for (auto& r : roots) r = refine_root(minpoly, r, prec);
      const Box image = eval(c, roots[static_cast<size_t>(chosen)], prec + 32);
      const int j1 = unique_hit(roots, image);
      const int j2 = unique_hit(roots, conj(roots[static_cast<size_t>(chosen)]));
      if (j1 < 0 || j2 < 0) continue;
      if (j1 != j2) throw Error(ErrorCode::IncompatibleConjugation, "conjugation does not match complex conjugation");
      decided = true;
    }
    if (!decided) throw Error(ErrorCode::IncompatibleConjugation, "could not match conjugation with the embedding");
    f->box_ = roots[static_cast<size_t>(chosen)];
    f->refined_ = f->box_;
    return f;
  }

  static void set_parent(NumberField& f, FieldPtr parent, QMatrix from_parent) {
    f.parent_ = std::move(parent);
    f.from_parent_ = std::move(from_parent);
  }
};

QVector NumberField::reduce(const QPoly& p) const {
  QVector out = (p % minpoly_).coeffs();
  out.resize(degree());
  return out;
}

QVector NumberField::power(size_t k) const { return reduce(QPoly::monomial(k)); }

QVector NumberField::multiply(const QVector& a, const QVector& b) const { return reduce(QPoly(a) * QPoly(b)); }

Box NumberField::embedding(unsigned prec) const {
  std::lock_guard<std::mutex> lock(mu_);
  if (refined_prec_ < prec) {
    refined_ = refine_root(minpoly_, refined_, prec);
    refined_prec_ = prec;
  }
  return refined_;
}

FieldPtr nf_create(const QPoly& minpoly, const QVector& conj_image, const Box& embedding, std::string name) {
  return FieldBuilder::build(minpoly, conj_image, embedding, std::move(name));
}

FieldPtr rationals() {
  static const FieldPtr q = nf_create(QPoly{0, 1}, {0}, Box(Interval(-1, 1), Interval(-1, 1)), "Q");
  return q;
}

FieldElement::FieldElement(FieldPtr field, QVector coeffs) : field_(std::move(field)) {
  if (!field_) throw Error(ErrorCode::InvalidArgument, "field element without a field");
  c_ = coeffs.size() > field_->degree() ? field_->reduce(QPoly(coeffs)) : std::move(coeffs);
  c_.resize(field_->degree());
}

FieldElement::FieldElement(FieldPtr field, const Rational& q) : field_(std::move(field)) {
  if (!field_) throw Error(ErrorCode::InvalidArgument, "field element without a field");
  c_.assign(field_->degree(), Rational(0));
  c_[0] = q;
}

FieldElement FieldElement::generator(const FieldPtr& f) { return FieldElement(f, f->power(1)); }

bool FieldElement::is_rational() const {
  for (size_t i = 1; i < c_.size(); ++i)
    if (sgn(c_[i]) != 0) return false;
  return true;
}

Rational FieldElement::rational_value() const {
  if (!is_rational()) throw Error(ErrorCode::InvalidArgument, "element is not rational");
  return c_[0];
}

namespace {

void unify(FieldElement& a, const FieldElement& b, FieldElement& bb) {
  if (a.field() == b.field()) {
    bb = b;
    return;
  }
  const FieldPtr f = common_field(a.field(), b.field());
  a = coerce(a, f);
  bb = coerce(b, f);
}

}  // namespace

FieldElement& FieldElement::operator+=(const FieldElement& o) {
  FieldElement b;
  unify(*this, o, b);
  for (size_t i = 0; i < c_.size(); ++i) c_[i] += b.c_[i];
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) {
  FieldElement b;
  unify(*this, o, b);
  for (size_t i = 0; i < c_.size(); ++i) c_[i] -= b.c_[i];
  return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& o) {
  FieldElement b;
  unify(*this, o, b);
  c_ = field_->multiply(c_, b.c_);
  return *this;
}

FieldElement& FieldElement::operator/=(const FieldElement& o) { return *this *= nf_inverse(o); }

bool operator==(const FieldElement& a, const FieldElement& b) {
  if (a.field_ == b.field_) return a.c_ == b.c_;
  if (!a.field_ || !b.field_) return false;
  if (!is_subfield(a.field_, b.field_) && !is_subfield(b.field_, a.field_)) return false;
  const FieldPtr f = common_field(a.field_, b.field_);
  return coerce(a, f).c_ == coerce(b, f).c_;
}

FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }
FieldElement operator-(const FieldElement& a) { return Rational(-1) * a; }
FieldElement operator*(const Rational& s, const FieldElement& a) { return FieldElement(a.field(), s * a.coeffs()); }

FieldElement nf_inverse(const FieldElement& x) {
  if (x.is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero field element");
  const XGcd e = xgcd(QPoly(x.coeffs()), x.field()->minpoly());
  if (e.g.degree() != 0) throw Error(ErrorCode::InternalInconsistency, "element not invertible modulo minimal polynomial");
  return FieldElement(x.field(), x.field()->reduce(e.s));
}

FieldElement nf_pow(const FieldElement& x, unsigned k) {
  FieldElement r = FieldElement::one(x.field()), b = x;
  while (k) {
    if (k & 1u) r *= b;
    b *= b;
    k >>= 1u;
  }
  return r;
}

FieldElement nf_conjugate(const FieldElement& x) { return FieldElement(x.field(), x.field()->conj_matrix() * x.coeffs()); }

Box nf_embed(const FieldElement& x, unsigned prec) {
  const unsigned wp = prec + 32;
  return eval(QPoly(x.coeffs()), x.field()->embedding(wp), wp);
}

int nf_sign(const FieldElement& x) {
  if (!(nf_conjugate(x) == x)) throw Error(ErrorCode::NotRealElement, "sign of a non-real element");
  if (x.is_zero()) return 0;
  if (x.is_rational()) return sgn(x.coeffs()[0]);
  // Each round adds 32 halvings of the generator box, up to 256 beyond the
  // starting precision.
  for (unsigned extra = 0; extra <= 256; extra += 32) {
    const int s = nf_embed(x, 64 + extra).re.certain_sign();
    if (s != 0) return s;
  }
  throw Error(ErrorCode::SignUndecided, "sign not decided after 256 refinement steps");
}

bool nf_is_totally_real(const QPoly& minpoly) { return is_totally_real(minpoly); }

QMatrix multiplication_matrix(const FieldElement& x) {
  const FieldPtr& f = x.field();
  const size_t m = f->degree();
  QMatrix out(m, m);
  for (size_t j = 0; j < m; ++j) {
    const QVector col = f->multiply(x.coeffs(), f->power(j));
    for (size_t i = 0; i < m; ++i) out(i, j) = col[i];
  }
  return out;
}

QPoly nf_minimal_polynomial(const FieldElement& x) { return minimal_polynomial(multiplication_matrix(x)); }

FieldElement nf_eval(const QPoly& p, const FieldElement& x) {
  FieldElement r = FieldElement::zero(x.field());
  for (size_t i = p.coeffs().size(); i-- > 0;) r = r * x + FieldElement(x.field(), p.coeffs()[i]);
  return r;
}

bool is_subfield(const FieldPtr& from, const FieldPtr& to) {
  if (from->degree() == 1) return true;
  for (const NumberField* f = to.get(); f; f = f->parent().get())
    if (f == from.get()) return true;
  return false;
}

FieldPtr common_field(const FieldPtr& a, const FieldPtr& b) {
  if (is_subfield(a, b)) return b;
  if (is_subfield(b, a)) return a;
  throw Error(ErrorCode::FieldMismatch, "elements of unrelated fields");
}

FieldElement coerce(const FieldElement& x, const FieldPtr& target) {
  if (x.field() == target) return x;
  if (x.field()->degree() == 1) return FieldElement(target, x.coeffs()[0]);
  if (!target->parent()) throw Error(ErrorCode::FieldMismatch, "cannot rewrite element into an unrelated field");
  const FieldElement y = coerce(x, target->parent());
  return FieldElement(target, target->from_parent() * y.coeffs());
}

namespace {

// E = K[Y]/(P(Y)) as a Q-space with basis g^i Y^j at index i + m*j.
struct SplitAlgebra {
  size_t m = 0, e = 0, n = 0;
  QMatrix mul_g, mul_y;

  explicit SplitAlgebra(const std::vector<FieldElement>& monic) {
    const FieldPtr& k = monic.front().field();
    m = k->degree();
    e = monic.size() - 1;
    n = m * e;
    mul_g = QMatrix(n, n);
    mul_y = QMatrix(n, n);
    const QMatrix mg = multiplication_matrix(FieldElement::generator(k));
    for (size_t j = 0; j < e; ++j)
      for (size_t r = 0; r < m; ++r)
        for (size_t c = 0; c < m; ++c) mul_g(r + m * j, c + m * j) = mg(r, c);
    std::vector<QMatrix> coeff_mats;
    for (size_t t = 0; t < e; ++t) coeff_mats.push_back(multiplication_matrix(monic[t]));
    for (size_t i = 0; i < m; ++i) {
      for (size_t j = 0; j + 1 < e; ++j) mul_y(i + m * (j + 1), i + m * j) = 1;
      // g^i Y^e = -sum_t p_t g^i Y^t.
      for (size_t t = 0; t < e; ++t)
        for (size_t r = 0; r < m; ++r) mul_y(r + m * t, i + m * (e - 1)) = -coeff_mats[t](r, i);
    }
  }

  QVector unit() const {
    QVector v(n);
    v[0] = 1;
    return v;
  }

  struct Separating {
    QMatrix theta;
    QPoly charpoly;
    Rational k;
  };

  // theta = Y + k g with squarefree characteristic polynomial.
  Separating separating_element() const {
    const size_t limit = n * (n - 1) / 2 + 1;
    for (size_t k = 0; k <= limit; ++k) {
      const Rational kq(static_cast<long>(k));
      QMatrix theta = mul_y + kq * mul_g;
      QPoly p = charpoly(theta);
      if (is_squarefree(p)) return {std::move(theta), std::move(p), kq};
      if (m == 1) break;
    }
    throw Error(ErrorCode::InvalidArgument, "polynomial is not squarefree over the field");
  }
};

bool less_coeffs(const FieldElement& a, const FieldElement& b) {
  return std::lexicographical_compare(a.coeffs().begin(), a.coeffs().end(), b.coeffs().begin(), b.coeffs().end());
}

}  // namespace

std::vector<FieldElement> roots_in_field(const std::vector<FieldElement>& coeffs_in) {
  if (coeffs_in.size() < 2) throw Error(ErrorCode::InvalidArgument, "roots of a constant polynomial");
  const FieldPtr k = coeffs_in.back().field();
  std::vector<FieldElement> coeffs;
  const FieldElement lead = coeffs_in.back();
  for (const auto& c : coeffs_in) coeffs.push_back(coerce(c, k) / lead);
  const SplitAlgebra alg(coeffs);
  const auto sep = alg.separating_element();
  const QMatrix& theta = sep.theta;
  const QPoly& p = sep.charpoly;
  std::vector<FieldElement> roots;
  for (const auto& f : factor_squarefree(p)) {
    if (static_cast<size_t>(f.degree()) != alg.m) continue;
    const QPoly h = p / f;
    const XGcd x = xgcd(h, f);
    const QPoly idem = (x.s * h) % p;
    const QVector e = apply_poly(idem, theta, alg.unit());
    std::vector<QVector> basis{e};
    for (size_t i = 1; i < alg.m; ++i) basis.push_back(alg.mul_g * basis.back());
    const auto alpha = coordinates_in(basis, alg.mul_y * e);
    if (!alpha) throw Error(ErrorCode::InternalInconsistency, "component of degree m is not a copy of the field");
    FieldElement root(k, *alpha);
    FieldElement val = FieldElement::zero(k);
    for (size_t i = coeffs.size(); i-- > 0;) val = val * root + coeffs[i];
    if (!val.is_zero()) throw Error(ErrorCode::InternalInconsistency, "computed root does not satisfy the polynomial");
    roots.push_back(std::move(root));
  }
  std::sort(roots.begin(), roots.end(), less_coeffs);
  return roots;
}

std::vector<FieldElement> roots_in_field(const FieldPtr& field, const QPoly& p) {
  std::vector<FieldElement> c;
  for (const auto& x : p.coeffs()) c.emplace_back(field, x);
  return roots_in_field(c);
}

std::optional<FieldElement> nf_sqrt(const FieldElement& x) {
  if (x.is_zero()) return x;
  const FieldPtr& k = x.field();
  auto roots = roots_in_field({-x, FieldElement::zero(k), FieldElement::one(k)});
  if (roots.empty()) return std::nullopt;
  return roots.front();
}

QuadraticExtension nf_quadratic_extension(const FieldElement& d) {
  const FieldPtr& base = d.field();
  if (d.is_zero()) throw Error(ErrorCode::ZeroDiscriminant, "square root of zero");
  if (base->parent()) throw Error(ErrorCode::UnsupportedTower, "only one quadratic extension layer is supported");
  if (!(nf_conjugate(d) == d)) throw Error(ErrorCode::NotRealElement, "extension by a non-real element");
  if (nf_sqrt(d)) throw Error(ErrorCode::AlreadySquare, to_string(d) + " is already a square");
  const size_t m = base->degree();
  const SplitAlgebra alg({-d, FieldElement::zero(base), FieldElement::one(base)});
  const auto [theta, p, kk] = alg.separating_element();
  const size_t n = alg.n;
  std::vector<QVector> powers{alg.unit()};
  for (size_t i = 1; i < n; ++i) powers.push_back(theta * powers.back());
  const QMatrix v = QMatrix::from_columns(powers, n);
  const auto vinv = inverse(v);
  if (!vinv) throw Error(ErrorCode::InternalInconsistency, "separating element is not primitive");

  QMatrix from_parent(n, m);
  for (size_t i = 0; i < m; ++i) {
    QVector ei(n);
    ei[i] = 1;
    const QVector col = *vinv * ei;
    for (size_t r = 0; r < n; ++r) from_parent(r, i) = col[r];
  }
  QVector y(n);
  y[m] = 1;
  const QVector root_coords = *vinv * y;

  const int s = nf_sign(d);
  QVector conj_theta(n);
  conj_theta[m] = s;
  const QVector cg = base->conj_matrix().column(m > 1 ? 1 : 0);
  if (m > 1) {
    for (size_t i = 0; i < m; ++i) conj_theta[i] += kk * cg[i];
  } else {
    conj_theta[0] += kk * base->power(1)[0];
  }
  const QVector conj_image = *vinv * conj_theta;

  std::string name = (base->name().empty() ? std::string("K") : base->name()) + "(sqrt(" + to_string(d) + "))";
  for (unsigned prec = 64; prec <= 1024; prec *= 2) {
    const Interval dre = nf_embed(d, prec).re;
    const Box gy = sqrt_real(dre, prec);
    const Box gb = m > 1 ? base->embedding(prec) : Box(Interval(base->power(1)[0]), Interval(Rational(0)));
    const Box gtheta = round_out(gy + Box(Interval(kk), Interval(Rational(0))) * gb, prec);
    try {
      auto f = FieldBuilder::build(p, conj_image, gtheta, name);
      FieldBuilder::set_parent(*f, base, from_parent);
      FieldPtr fp = f;
      return {fp, FieldElement(fp, root_coords)};
    } catch (const Error& e) {
      if (e.code() != ErrorCode::AmbiguousEmbedding) throw;
    }
  }
  throw Error(ErrorCode::AmbiguousEmbedding, "could not isolate the extended embedding");
}

std::string to_string(const FieldElement& x, const std::string& var) { return to_string(QPoly(x.coeffs()), var); }

FieldElement parse_field_element(const FieldPtr& field, std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw Error(ErrorCode::ParseError, "empty field element");
  const std::string bad = "not a field element: '" + std::string(text) + "'";
  FieldElement out = FieldElement::zero(field);
  size_t pos = 0;
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (pos != 0) {
      throw Error(ErrorCode::ParseError, bad);
    }
    size_t end = pos;
    while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
    const std::string term = s.substr(pos, end - pos);
    if (term.empty()) throw Error(ErrorCode::ParseError, bad);
    const size_t gpos = term.find('g');
    Rational coef = 1;
    size_t power = 0;
    if (gpos == std::string::npos) {
      coef = parse_rational(term);
    } else {
      std::string head = term.substr(0, gpos);
      if (!head.empty()) {
        if (head.back() != '*') throw Error(ErrorCode::ParseError, bad);
        head.pop_back();
        coef = parse_rational(head);
      }
      const std::string tail = term.substr(gpos + 1);
      if (tail.empty()) {
        power = 1;
      } else {
        if (tail[0] != '^' || tail.size() < 2) throw Error(ErrorCode::ParseError, bad);
        for (size_t i = 1; i < tail.size(); ++i)
          if (!std::isdigit(static_cast<unsigned char>(tail[i]))) throw Error(ErrorCode::ParseError, bad);
        power = std::stoul(tail.substr(1));
      }
    }
    out += FieldElement(field, Rational(sign * coef) * field->power(power));
    pos = end;
  }
  return out;
}

}  // namespace k3b
