#include "k3b/roots.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "k3b/error.hpp"

namespace k3b {

namespace {

using CLD = std::complex<long double>;

// Complex dyadic approximation (not an enclosure).
struct Approx {
  Rational re, im;
};

Approx round_to(const Approx& a, unsigned prec) { return {floor_dyadic(a.re, prec), floor_dyadic(a.im, prec)}; }
Approx add(const Approx& a, const Approx& b) { return {a.re + b.re, a.im + b.im}; }
Approx sub(const Approx& a, const Approx& b) { return {a.re - b.re, a.im - b.im}; }
Approx mul(const Approx& a, const Approx& b, unsigned prec) {
  return round_to({a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}, prec);
}
Approx div(const Approx& a, const Approx& b, unsigned prec) {
  const Rational n = b.re * b.re + b.im * b.im;
  return round_to({(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n}, prec);
}
bool is_zero(const Approx& a) { return sgn(a.re) == 0 && sgn(a.im) == 0; }
Rational max_abs(const Approx& a) { return std::max(Rational(abs(a.re)), Rational(abs(a.im))); }

void horner(const QPoly& p, const Approx& z, unsigned prec, Approx& f, Approx& df) {
  f = {0, 0};
  df = {0, 0};
  const auto& c = p.coeffs();
  for (size_t i = c.size(); i-- > 0;) {
    df = add(mul(df, z, prec), f);
    f = add(mul(f, z, prec), Approx{c[i], 0});
  }
}

std::vector<CLD> aberth_ld(const QPoly& p) {
  const size_t n = static_cast<size_t>(p.degree());
  std::vector<long double> a(n + 1);
  for (size_t i = 0; i <= n; ++i) a[i] = Rational(p.coeffs()[i] / p.leading()).get_d();
  long double radius = 0;
  for (size_t k = 1; k <= n; ++k) radius = std::max(radius, std::pow(std::fabs(a[n - k]), 1.0L / k));
  radius = std::max(2 * radius, 1.0L);
  std::vector<CLD> z(n);
  for (size_t k = 0; k < n; ++k) {
    const long double ang = 2 * std::numbers::pi_v<long double> * k / n + 0.4L;
    z[k] = std::polar(radius * 0.7L, ang);
  }
  for (int iter = 0; iter < 800; ++iter) {
    long double worst = 0;
    for (size_t k = 0; k < n; ++k) {
      CLD f = 0, df = 0;
      for (size_t i = n + 1; i-- > 0;) {
        df = df * z[k] + f;
        f = f * z[k] + a[i];
      }
      if (f == CLD(0)) continue;
      const CLD w = f / df;
      CLD s = 0;
      for (size_t j = 0; j < n; ++j) {
        if (j != k) s += 1.0L / (z[k] - z[j]);
      }
      const CLD corr = w / (1.0L - w * s);
      z[k] -= corr;
      worst = std::max(worst, std::abs(corr) / std::max(1.0L, std::abs(z[k])));
    }
    if (worst < 1e-17L) break;
  }
  return z;
}

Box point_box(const Approx& z) { return Box(Interval(z.re), Interval(z.im)); }

Box krawczyk(const QPoly& p, const QPoly& dp, const Box& x, const Approx& c, unsigned wp) {
  const Box fc = eval(p, point_box(c), wp);
  const Box dfx = eval(dp, x, wp);
  Approx f, df;
  horner(p, c, wp, f, df);
  if (is_zero(df)) throw Error(ErrorCode::InvalidArgument, "derivative vanishes at approximate root");
  const Approx y = div(Approx{1, 0}, df, wp);
  const Box yb = point_box(y);
  const Box one(Rational(1));
  Box k = point_box(c) - yb * fc + (one - yb * dfx) * (x - point_box(c));
  return round_out(k, wp);
}

Box square_box(const Approx& c, const Rational& r) {
  return Box(Interval(c.re - r, c.re + r), Interval(c.im - r, c.im + r));
}

Box intersect(const Box& a, const Box& b) {
  return Box(Interval(std::max(a.re.lo, b.re.lo), std::min(a.re.hi, b.re.hi)),
             Interval(std::max(a.im.lo, b.im.lo), std::min(a.im.hi, b.im.hi)));
}

Rational pow2(int e) {
  Rational r(1);
  if (e >= 0) r <<= static_cast<unsigned>(e);
  else r >>= static_cast<unsigned>(-e);
  return r;
}

}  // namespace

std::vector<Box> isolate_roots(const QPoly& p) {
  if (p.degree() < 1) return {};
  if (p.degree() > kMaxFactorDegree) throw Error(ErrorCode::UnsupportedDegree, "root isolation degree too large");
  if (!is_squarefree(p)) throw Error(ErrorCode::InvalidArgument, "root isolation needs a squarefree polynomial");
  const QPoly m = p.monic();
  const QPoly dm = m.derivative();
  const size_t n = static_cast<size_t>(m.degree());
  if (n == 1) {
    const Rational r = -m.coeffs()[0];
    return {Box(Interval(r), Interval(Rational(0)))};
  }
  std::vector<Approx> z(n);
  {
    const auto zl = aberth_ld(m);
    for (size_t k = 0; k < n; ++k) {
      z[k] = round_to({Rational(static_cast<double>(zl[k].real())), Rational(static_cast<double>(zl[k].imag()))}, 64);
    }
  }
  for (unsigned prec = 64; prec <= 4096; prec *= 2) {
    const Rational tol = pow2(-static_cast<int>(prec) + 8);
    std::vector<Approx> w(n);
    for (int iter = 0; iter < 80; ++iter) {
      Rational worst = 0;
      for (size_t k = 0; k < n; ++k) {
        Approx f, df;
        horner(m, z[k], prec, f, df);
        if (is_zero(f) || is_zero(df)) {
          w[k] = {0, 0};
          continue;
        }
        const Approx wk = div(f, df, prec);
        Approx s{0, 0};
        for (size_t j = 0; j < n; ++j) {
          if (j == k) continue;
          const Approx dz = sub(z[k], z[j]);
          if (is_zero(dz)) continue;
          s = add(s, div(Approx{1, 0}, dz, prec));
        }
        const Approx den = sub(Approx{1, 0}, mul(wk, s, prec));
        const Approx corr = is_zero(den) ? wk : div(wk, den, prec);
        z[k] = sub(z[k], corr);
        w[k] = wk;
        worst = std::max(worst, max_abs(corr));
      }
      if (worst < tol) break;
    }
    // Certification.
    const unsigned wp = prec + 32;
    std::vector<Box> boxes(n);
    bool ok = true;
    for (size_t k = 0; k < n && ok; ++k) {
      Rational r = std::max(Rational(8 * max_abs(w[k])), pow2(-static_cast<int>(prec) + 24));
      r = ceil_dyadic(r, wp);
      bool certified = false;
      for (int attempt = 0; attempt < 4 && !certified; ++attempt, r *= 16) {
        const Box x = square_box(z[k], r);
        try {
          const Box kx = krawczyk(m, dm, x, z[k], wp);
          if (strictly_inside(kx, x)) {
            boxes[k] = x;
            certified = true;
          }
        } catch (const Error&) {
        }
      }
      ok = certified;
    }
    for (size_t i = 0; i < n && ok; ++i)
      for (size_t j = i + 1; j < n && ok; ++j)
        if (intersects(boxes[i], boxes[j])) ok = false;
    if (ok) return boxes;
  }
  throw Error(ErrorCode::InternalInconsistency, "root isolation failed to certify");
}

Box refine_root(const QPoly& p, Box box, unsigned prec) {
  const QPoly dp = p.derivative();
  const Rational target = pow2(-static_cast<int>(prec));
  unsigned wp = prec + 32;
  for (int iter = 0; iter < 400; ++iter) {
    const Rational w = box.width();
    if (w <= target) return box;
    Approx c{floor_dyadic(box.re.mid(), wp), floor_dyadic(box.im.mid(), wp)};
    c.re = std::clamp(c.re, box.re.lo, box.re.hi);
    c.im = std::clamp(c.im, box.im.lo, box.im.hi);
    Box next = box;
    try {
      const Box k = krawczyk(p, dp, box, c, wp);
      if (!intersects(k, box)) throw Error(ErrorCode::InternalInconsistency, "root refinement lost the root");
      next = intersect(box, k);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::InternalInconsistency) throw;
    }
    if (next.width() * 2 > w) wp += 32;
    box = next;
  }
  throw Error(ErrorCode::InternalInconsistency, "root refinement did not converge");
}

namespace {

// a such that a*q is integral for every monic factor q of p.
Integer factor_denominator_bound(const QPoly& p) {
  const QPoly m = p.monic();
  Integer l = lcm_of_denominators(m.coeffs());
  Integer g = 0;
  for (const auto& c : m.coeffs()) {
    Rational s = c * l;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), s.get_num_mpz_t());
  }
  return l / g;
}

// The unique integer inside [lo, hi], 0 = none, 2 = ambiguous.
int integer_in(const Interval& x, Integer& out) {
  Integer lo, hi;
  mpz_cdiv_q(lo.get_mpz_t(), x.lo.get_num_mpz_t(), x.lo.get_den_mpz_t());
  mpz_fdiv_q(hi.get_mpz_t(), x.hi.get_num_mpz_t(), x.hi.get_den_mpz_t());
  if (lo > hi) return 0;
  if (lo < hi) return 2;
  out = lo;
  return 1;
}

bool less_poly(const QPoly& a, const QPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  return std::lexicographical_compare(a.coeffs().rbegin(), a.coeffs().rend(), b.coeffs().rbegin(), b.coeffs().rend());
}

struct NeedPrecision {};

// Searches a monic factor of `rem` of degree k whose roots are boxes[subset].
bool try_subsets(const QPoly& rem, const std::vector<Box>& boxes, const std::vector<size_t>& live, size_t k,
                 const Integer& a, QPoly& found, std::vector<size_t>& used) {
  std::vector<size_t> idx(k);
  for (size_t i = 0; i < k; ++i) idx[i] = i;
  const Rational ra(a);
  while (true) {
    Box trace(Rational(0));
    for (size_t i : idx) trace = trace + boxes[live[i]];
    Integer t;
    bool plausible = trace.im.contains_zero();
    if (plausible) {
      const int c = integer_in(Interval(trace.re.lo * ra, trace.re.hi * ra), t);
      if (c == 2) throw NeedPrecision{};
      plausible = c == 1;
    }
    if (plausible) {
      std::vector<Box> coeffs{Box(Rational(1))};
      for (size_t i : idx) {
        std::vector<Box> next(coeffs.size() + 1, Box(Rational(0)));
        for (size_t j = 0; j < coeffs.size(); ++j) {
          next[j + 1] = next[j + 1] + coeffs[j];
          next[j] = next[j] - coeffs[j] * boxes[live[i]];
        }
        coeffs = std::move(next);
      }
      QVector q(k + 1);
      q[k] = 1;
      for (size_t j = 0; j < k && plausible; ++j) {
        Integer v;
        const Box scaled(coeffs[j].re * Interval(ra), coeffs[j].im * Interval(ra));
        if (!scaled.im.contains_zero()) {
          plausible = false;
          break;
        }
        const int c = integer_in(scaled.re, v);
        if (c == 2) throw NeedPrecision{};
        if (c == 0) plausible = false;
        else q[j] = Rational(v) / ra;
      }
      if (plausible) {
        QPoly cand(q);
        auto [quo, r] = divmod(rem, cand);
        if (r.is_zero()) {
          found = cand;
          used.clear();
          for (size_t i : idx) used.push_back(live[i]);
          return true;
        }
      }
    }
    // Next combination.
    size_t i = k;
    while (i > 0 && idx[i - 1] == live.size() - k + i - 1) --i;
    if (i == 0) return false;
    ++idx[i - 1];
    for (size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

std::vector<QPoly> factor_squarefree(const QPoly& p) {
  if (p.degree() < 1) return {};
  if (p.degree() == 1) return {p.monic()};
  if (p.degree() > kMaxFactorDegree) throw Error(ErrorCode::UnsupportedDegree, "factorization degree too large");
  const QPoly m = p.monic();
  std::vector<Box> boxes = isolate_roots(m);
  const size_t n = boxes.size();
  const Integer a = factor_denominator_bound(m);
  double bits = std::log2(a.get_d()) + 2 * std::log2(static_cast<double>(n)) + 16;
  for (const auto& b : boxes) {
    const double mag = std::max(std::fabs(b.re.lo.get_d()), std::fabs(b.re.hi.get_d())) +
                       std::max(std::fabs(b.im.lo.get_d()), std::fabs(b.im.hi.get_d()));
    bits += std::log2(1 + mag);
  }
  unsigned prec = static_cast<unsigned>(bits) + 16;
  for (int round = 0; round < 8; ++round, prec += 64) {
    for (auto& b : boxes) b = refine_root(m, b, prec);
    try {
      std::vector<QPoly> out;
      std::vector<size_t> live(n);
      for (size_t i = 0; i < n; ++i) live[i] = i;
      QPoly rem = m;
      while (rem.degree() > 1) {
        bool found = false;
        QPoly q;
        std::vector<size_t> used;
        for (size_t k = 1; 2 * k <= live.size() && !found; ++k) {
          found = try_subsets(rem, boxes, live, k, a, q, used);
        }
        if (!found) break;
        out.push_back(q);
        rem = rem / q;
        std::vector<size_t> rest;
        for (size_t i : live)
          if (std::find(used.begin(), used.end(), i) == used.end()) rest.push_back(i);
        live = std::move(rest);
      }
      if (rem.degree() >= 1) out.push_back(rem);
      std::sort(out.begin(), out.end(), less_poly);
      return out;
    } catch (const NeedPrecision&) {
    }
  }
  throw Error(ErrorCode::InternalInconsistency, "factorization could not reach sufficient precision");
}

std::vector<PolyFactor> factor(const QPoly& p) {
  if (p.degree() < 1) return {};
  const QPoly m = p.monic();
  const QPoly sqf = m / gcd(m, m.derivative());
  std::vector<PolyFactor> out;
  for (auto& q : factor_squarefree(sqf)) {
    unsigned mult = 0;
    QPoly r = m;
    while (true) {
      auto [quo, rem] = divmod(r, q);
      if (!rem.is_zero()) break;
      ++mult;
      r = quo;
    }
    out.push_back({q, mult});
  }
  return out;
}

bool is_irreducible(const QPoly& p) {
  if (p.degree() < 1) return false;
  if (p.degree() == 1) return true;
  if (!is_squarefree(p)) return false;
  return factor_squarefree(p).size() == 1;
}

bool is_totally_real(const QPoly& p) {
  if (p.degree() < 1) return true;
  return count_real_roots(p) == static_cast<size_t>(p.degree());
}

}  // namespace k3b
