#include "k3b/poly.hpp"

#include "k3b/error.hpp"

namespace k3b {

QPoly::QPoly(QVector coeffs) : c_(std::move(coeffs)) { trim(); }

void QPoly::trim() {
  while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

QPoly QPoly::constant(const Rational& c) { return QPoly(QVector{c}); }

QPoly QPoly::monomial(size_t k, const Rational& c) {
  QVector v(k + 1);
  v[k] = c;
  return QPoly(std::move(v));
}

Rational QPoly::eval(const Rational& x) const {
  Rational r = 0;
  for (size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
  return r;
}

QPoly QPoly::derivative() const {
  if (c_.size() <= 1) return {};
  QVector d(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<unsigned long>(i);
  return QPoly(std::move(d));
}

QPoly QPoly::monic() const {
  if (is_zero()) return *this;
  QPoly r = *this;
  r *= 1 / leading();
  return r;
}

QPoly QPoly::compose(const QPoly& q) const {
  QPoly r;
  for (size_t i = c_.size(); i-- > 0;) r = r * q + constant(c_[i]);
  return r;
}

QPoly& QPoly::operator+=(const QPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

QPoly& QPoly::operator-=(const QPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

QPoly& QPoly::operator*=(const Rational& s) {
  for (auto& x : c_) x *= s;
  trim();
  return *this;
}

QPoly operator+(QPoly a, const QPoly& b) { return a += b; }
QPoly operator-(QPoly a, const QPoly& b) { return a -= b; }
QPoly operator-(const QPoly& a) { return Rational(-1) * a; }
QPoly operator*(const Rational& s, QPoly a) { return a *= s; }

QPoly operator*(const QPoly& a, const QPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  QVector r(a.coeffs().size() + b.coeffs().size() - 1);
  for (size_t i = 0; i < a.coeffs().size(); ++i) {
    if (sgn(a.coeffs()[i]) == 0) continue;
    for (size_t j = 0; j < b.coeffs().size(); ++j) r[i + j] += a.coeffs()[i] * b.coeffs()[j];
  }
  return QPoly(std::move(r));
}

std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b) {
  if (b.is_zero()) throw Error(ErrorCode::DivisionByZero, "polynomial division by zero");
  if (a.degree() < b.degree()) return {QPoly(), a};
  QVector rem = a.coeffs();
  const size_t db = static_cast<size_t>(b.degree());
  QVector quo(rem.size() - db);
  const Rational inv = 1 / b.leading();
  for (size_t k = quo.size(); k-- > 0;) {
    const Rational q = rem[k + db] * inv;
    quo[k] = q;
    if (sgn(q) == 0) continue;
    for (size_t j = 0; j <= db; ++j) rem[k + j] -= q * b.coeffs()[j];
  }
  rem.resize(db);
  return {QPoly(std::move(quo)), QPoly(std::move(rem))};
}

QPoly operator%(const QPoly& a, const QPoly& b) { return divmod(a, b).second; }
QPoly operator/(const QPoly& a, const QPoly& b) { return divmod(a, b).first; }

QPoly gcd(QPoly a, QPoly b) {
  while (!b.is_zero()) {
    QPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

XGcd xgcd(const QPoly& a, const QPoly& b) {
  QPoly r0 = a, r1 = b;
  QPoly s0 = QPoly::constant(1), s1;
  QPoly t0, t1 = QPoly::constant(1);
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    QPoly s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    QPoly t2 = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  const Rational inv = 1 / r0.leading();
  return {inv * r0, inv * s0, inv * t0};
}

bool is_squarefree(const QPoly& p) {
  if (p.degree() <= 0) return true;
  return gcd(p, p.derivative()).degree() == 0;
}

QMatrix eval_matrix(const QPoly& p, const QMatrix& m) {
  const size_t n = m.rows();
  QMatrix r(n, n);
  for (size_t i = p.coeffs().size(); i-- > 0;) {
    r = r * m;
    for (size_t j = 0; j < n; ++j) r(j, j) += p.coeffs()[i];
  }
  return r;
}

QPoly charpoly(const QMatrix& a) {
  if (!a.is_square()) throw Error(ErrorCode::DimensionMismatch, "charpoly of non-square matrix");
  const size_t n = a.rows();
  // Faddeev-LeVerrier.
  QVector c(n + 1);
  c[n] = 1;
  QMatrix mk(n, n);
  for (size_t k = 1; k <= n; ++k) {
    QMatrix next = a * mk;
    for (size_t i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
    mk = std::move(next);
    QMatrix am = a * mk;
    Rational tr = 0;
    for (size_t i = 0; i < n; ++i) tr += am(i, i);
    c[n - k] = -tr / static_cast<unsigned long>(k);
  }
  return QPoly(std::move(c));
}

QPoly minimal_polynomial(const QMatrix& m) {
  if (!m.is_square()) throw Error(ErrorCode::DimensionMismatch, "minimal polynomial of non-square matrix");
  const size_t n = m.rows();
  std::vector<QVector> powers;
  QMatrix p = QMatrix::identity(n);
  for (size_t k = 0; k <= n; ++k) {
    // Find a relation p = sum_j x_j powers[j].
    if (!powers.empty()) {
      auto x = coordinates_in(powers, p.flat());
      if (x) {
        QVector c(k + 1);
        for (size_t j = 0; j < k; ++j) c[j] = -(*x)[j];
        c[k] = 1;
        return QPoly(std::move(c));
      }
    }
    powers.push_back(p.flat());
    p = p * m;
  }
  throw Error(ErrorCode::InternalInconsistency, "minimal polynomial search exceeded dimension");
}

std::vector<QPoly> sturm_sequence(const QPoly& p) {
  std::vector<QPoly> seq{p};
  if (p.degree() <= 0) return seq;
  seq.push_back(p.derivative());
  while (true) {
    QPoly r = seq[seq.size() - 2] % seq.back();
    if (r.is_zero()) break;
    seq.push_back(-r);
  }
  return seq;
}

namespace {

int sign_at(const QPoly& q, const Rational& x, bool infinite, bool positive_side) {
  if (!infinite) return sgn(q.eval(x));
  if (q.is_zero()) return 0;
  const int s = sgn(q.leading());
  if (positive_side || q.degree() % 2 == 0) return s;
  return -s;
}

size_t variations(const std::vector<QPoly>& seq, const Rational& x, bool infinite, bool positive_side) {
  size_t v = 0;
  int last = 0;
  for (const auto& q : seq) {
    const int s = sign_at(q, x, infinite, positive_side);
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

}  // namespace

size_t count_real_roots(const QPoly& p, const Rational& a, const Rational& b, bool a_infinite, bool b_infinite) {
  if (p.degree() <= 0) return 0;
  const auto seq = sturm_sequence(p);
  const size_t va = variations(seq, a, a_infinite, false);
  const size_t vb = variations(seq, b, b_infinite, true);
  return va >= vb ? va - vb : 0;
}

size_t count_real_roots(const QPoly& p) { return count_real_roots(p, 0, 0, true, true); }

std::string to_string(const QPoly& p, const std::string& var) {
  if (p.is_zero()) return "0";
  std::string out;
  for (size_t i = p.coeffs().size(); i-- > 0;) {
    const Rational& c = p.coeffs()[i];
    if (sgn(c) == 0) continue;
    const bool neg = sgn(c) < 0;
    const Rational a = neg ? Rational(-c) : c;
    if (!out.empty() || neg) out += neg ? "-" : "+";
    if (i == 0) {
      out += to_string(a);
      continue;
    }
    if (a != 1) out += to_string(a) + "*";
    out += var;
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out;
}

}  // namespace k3b
