#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "k3b/interval.hpp"
#include "k3b/matrix.hpp"
#include "k3b/poly.hpp"

namespace k3b {

class NumberField;
struct FieldBuilder;
using FieldPtr = std::shared_ptr<const NumberField>;

/// Largest field degree accepted by nf_create.
inline constexpr int kMaxFieldDegree = 8;

/// Q[g]/(minpoly) with a conjugation involution and a chosen complex
/// embedding of the generator g. Immutable; the refined embedding box is a
/// cache guarded by a mutex.
class NumberField {
 public:
  size_t degree() const { return static_cast<size_t>(minpoly_.degree()); }
  const QPoly& minpoly() const { return minpoly_; }
  const QVector& conj_image() const { return conj_image_; }
  /// Column j holds the coordinates of conj(g^j).
  const QMatrix& conj_matrix() const { return conj_; }
  /// The isolating box supplied at construction (or computed for it).
  const Box& embedding_box() const { return box_; }
  /// Certified box around the embedded generator of width <= 2^-prec.
  Box embedding(unsigned prec) const;

  /// Field this one was built over by nf_quadratic_extension, if any.
  const FieldPtr& parent() const { return parent_; }
  /// (degree x parent degree) matrix of the inclusion parent -> this.
  const QMatrix& from_parent() const { return from_parent_; }

  const std::string& name() const { return name_; }

  /// Power-basis coordinates of g^k reduced modulo the minimal polynomial.
  QVector power(size_t k) const;
  /// Coordinates of the product of two coordinate vectors.
  QVector multiply(const QVector& a, const QVector& b) const;
  QVector reduce(const QPoly& p) const;

 private:
  friend struct FieldBuilder;
  NumberField() = default;

  QPoly minpoly_;
  QVector conj_image_;
  QMatrix conj_;
  Box box_;
  FieldPtr parent_;
  QMatrix from_parent_;
  std::string name_;

  mutable std::mutex mu_;
  mutable Box refined_;
  mutable unsigned refined_prec_ = 0;
};

/// Validates and builds a number field. `embedding` is a rectangle that must
/// meet exactly one root of minpoly once the roots are isolated.
FieldPtr nf_create(const QPoly& minpoly, const QVector& conj_image, const Box& embedding, std::string name = "");

/// The degree-one field Q (shared instance).
FieldPtr rationals();

class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(FieldPtr field, QVector coeffs);
  FieldElement(FieldPtr field, const Rational& q);

  static FieldElement zero(const FieldPtr& f) { return FieldElement(f, Rational(0)); }
  static FieldElement one(const FieldPtr& f) { return FieldElement(f, Rational(1)); }
  static FieldElement generator(const FieldPtr& f);

  const FieldPtr& field() const { return field_; }
  const QVector& coeffs() const { return c_; }
  bool is_zero() const { return k3b::is_zero(c_); }
  bool is_rational() const;
  /// Throws InvalidArgument if not rational.
  Rational rational_value() const;

  FieldElement& operator+=(const FieldElement& o);
  FieldElement& operator-=(const FieldElement& o);
  FieldElement& operator*=(const FieldElement& o);
  FieldElement& operator/=(const FieldElement& o);

  friend bool operator==(const FieldElement& a, const FieldElement& b);

 private:
  FieldPtr field_;
  QVector c_;
};

FieldElement operator+(FieldElement a, const FieldElement& b);
FieldElement operator-(FieldElement a, const FieldElement& b);
FieldElement operator*(FieldElement a, const FieldElement& b);
FieldElement operator/(FieldElement a, const FieldElement& b);
FieldElement operator-(const FieldElement& a);
FieldElement operator*(const Rational& s, const FieldElement& a);

FieldElement nf_inverse(const FieldElement& x);
FieldElement nf_pow(const FieldElement& x, unsigned k);
FieldElement nf_conjugate(const FieldElement& x);
/// Sign of the embedded image of a conj-fixed element.
int nf_sign(const FieldElement& x);
bool nf_is_totally_real(const QPoly& minpoly);
/// Enclosure of the embedded image of x.
Box nf_embed(const FieldElement& x, unsigned prec);
/// Matrix of y -> x*y on power-basis coordinates.
QMatrix multiplication_matrix(const FieldElement& x);
QPoly nf_minimal_polynomial(const FieldElement& x);
/// Value of a polynomial over Q at x.
FieldElement nf_eval(const QPoly& p, const FieldElement& x);

/// Rewrites x into `target`, which must be x's field or an extension built
/// from it by nf_quadratic_extension. Throws FieldMismatch otherwise.
FieldElement coerce(const FieldElement& x, const FieldPtr& target);
/// Whether `from` embeds into `to` through the parent chain. Q embeds into
/// every field.
bool is_subfield(const FieldPtr& from, const FieldPtr& to);
/// The larger of the two fields when one extends the other.
FieldPtr common_field(const FieldPtr& a, const FieldPtr& b);

struct QuadraticExtension {
  FieldPtr field;
  FieldElement root;  // square root of the discriminant element, in `field`
};
/// K(sqrt(d)) for a conj-fixed non-square d in K. The inclusion map is
/// field->from_parent().
QuadraticExtension nf_quadratic_extension(const FieldElement& d);

/// Roots in K of the monic polynomial with the given coefficients
/// (ascending, all in one field K; squarefree over K), sorted by
/// coefficients.
std::vector<FieldElement> roots_in_field(const std::vector<FieldElement>& coeffs);
/// Roots in K of a polynomial over Q.
std::vector<FieldElement> roots_in_field(const FieldPtr& field, const QPoly& p);
/// A square root of x inside its own field, if one exists.
std::optional<FieldElement> nf_sqrt(const FieldElement& x);

/// Polynomial notation in the generator, e.g. "-1/2*g^2+g+3".
std::string to_string(const FieldElement& x, const std::string& var = "g");
/// Parses sums of terms c, c*g, c*g^k, g^k (c rational).
FieldElement parse_field_element(const FieldPtr& field, std::string_view text);

}  // namespace k3b
