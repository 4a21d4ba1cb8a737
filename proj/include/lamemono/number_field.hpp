#pragma once

#include "lamemono/polynomial.hpp"
#include "lamemono/rational.hpp"

#include <cmath>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace lamemono {

/* A number field Q[y]/(modulus) together with one chosen complex embedding
 * (a root of the modulus).  The embedding is what ties exact arithmetic to
 * the numeric layer: every element knows the complex number it stands for. */
struct NumberField {
  Polynomial<Rational> modulus;   // monic, irreducible, degree >= 2
  std::complex<double> embedding; // root of modulus selecting the embedding
  std::string variable = "y";

  int degree() const { return modulus.degree(); }

  bool same_as(const NumberField& o) const {
    return modulus == o.modulus &&
           std::abs(embedding - o.embedding) < 1e-9 && variable == o.variable;
  }
};

using NumberFieldPtr = std::shared_ptr<const NumberField>;

inline NumberFieldPtr make_number_field(Polynomial<Rational> modulus,
                                        std::complex<double> embedding,
                                        std::string variable = "y") {
  if (modulus.degree() < 2)
    throw std::invalid_argument("number field modulus must have degree >= 2");
  if (!(modulus.leading() == Rational(1)))
    throw std::invalid_argument("number field modulus must be monic");
  double drift = std::abs(modulus.eval_complex(embedding));
  if (!(drift < 1e-6))
    throw std::invalid_argument("embedding is not a root of the modulus");
  auto f = std::make_shared<NumberField>();
  f->modulus = std::move(modulus);
  f->embedding = embedding;
  f->variable = std::move(variable);
  return f;
}

/* Q(sqrt(d)) for a non-square rational d, with the principal branch of
 * sqrt(d) as embedding (positive real for d > 0, +i sqrt(|d|) for d < 0). */
inline NumberFieldPtr quadratic_field(const Rational& d) {
  if (exact_sqrt(d))
    throw std::invalid_argument("quadratic_field: discriminant is a square");
  Polynomial<Rational> mod =
      Polynomial<Rational>::from_terms({{2, Rational(1)}, {0, -d}});
  double dd = to_double(d);
  std::complex<double> emb = dd >= 0
      ? std::complex<double>(std::sqrt(dd), 0.0)
      : std::complex<double>(0.0, std::sqrt(-dd));
  return make_number_field(std::move(mod), emb);
}

/* Q(sqrt(-3)), the field where the equianharmonic tessellation constants
 * live; embedding +i sqrt(3). */
inline NumberFieldPtr sqrt_minus_three_field() {
  static const NumberFieldPtr f = quadratic_field(Rational(-3));
  return f;
}

/* Element of a number field.  A null field pointer means the element is a
 * plain rational; mixing elements of two distinct non-null fields throws.
 * This keeps rational arithmetic allocation-free in the common case while
 * letting field constants slot into the same polynomial/operator templates. */
class NumberFieldElement {
 public:
  NumberFieldElement() = default;
  NumberFieldElement(int n) : rep_(Rational(n)) {}
  NumberFieldElement(const Rational& r) : rep_(r) {}
  NumberFieldElement(NumberFieldPtr field, Polynomial<Rational> rep)
      : field_(std::move(field)), rep_(std::move(rep)) {
    if (field_) rep_ = rep_ % field_->modulus;
    normalize();
  }

  static NumberFieldElement generator(const NumberFieldPtr& field) {
    return NumberFieldElement(field, Polynomial<Rational>::variable());
  }

  const NumberFieldPtr& field() const { return field_; }
  const Polynomial<Rational>& rep() const { return rep_; }

  bool is_zero() const { return rep_.is_zero(); }
  bool is_rational() const { return rep_.degree() <= 0; }
  Rational as_rational() const {
    if (!is_rational())
      throw std::domain_error("element is not rational: " + str());
    return rep_.constant_term();
  }

  bool operator==(const NumberFieldElement& o) const {
    if (field_ && o.field_ && !field_->same_as(*o.field_)) return false;
    return rep_ == o.rep_;
  }
  bool operator!=(const NumberFieldElement& o) const { return !(*this == o); }

  NumberFieldElement operator-() const {
    NumberFieldElement r(*this);
    r.rep_ = -r.rep_;
    return r;
  }

  NumberFieldElement operator+(const NumberFieldElement& o) const {
    auto [f, a, b] = unify(*this, o);
    return NumberFieldElement(f, a + b);
  }
  NumberFieldElement operator-(const NumberFieldElement& o) const {
    auto [f, a, b] = unify(*this, o);
    return NumberFieldElement(f, a - b);
  }
  NumberFieldElement operator*(const NumberFieldElement& o) const {
    auto [f, a, b] = unify(*this, o);
    return NumberFieldElement(f, a * b);
  }
  NumberFieldElement operator/(const NumberFieldElement& o) const {
    return *this * o.inverse();
  }

  NumberFieldElement inverse() const {
    if (rep_.is_zero()) throw std::domain_error("division by zero element");
    if (!field_)
      return NumberFieldElement(Rational(1) / rep_.constant_term());
    auto e = poly_extended_gcd(rep_, field_->modulus);
    if (e.g.degree() != 0)
      throw std::domain_error("element not invertible: modulus not coprime");
    return NumberFieldElement(field_, e.s / e.g.constant_term());
  }

  std::complex<double> embed() const {
    if (!field_) return lamemono::to_complex(rep_.constant_term());
    return rep_.eval_complex(field_->embedding);
  }

  /* Sum of the images under all embeddings; always rational.  For the
   * degree-d field with rep sum c_k y^k this is sum c_k * p_k where p_k are
   * the power sums of the modulus roots (Newton's identities). */
  Rational trace() const {
    if (!field_) return rep_.constant_term() * Rational(field_degree());
    int d = field_->degree();
    /* modulus = y^d + m_{d-1} y^{d-1} + ... + m_0; e_i = signed elementary
     * symmetric functions read off the coefficients. */
    std::vector<Rational> p(d, Rational(0));  // power sums p_0..p_{d-1}
    p[0] = Rational(d);
    for (int k = 1; k < d; ++k) {
      Rational acc = Rational(-k) * field_->modulus.coeff(d - k);
      for (int i = 1; i < k; ++i)
        acc = acc - field_->modulus.coeff(d - k + i) * p[i];
      p[k] = acc;
    }
    Rational t(0);
    for (int k = 0; k <= rep_.degree(); ++k) t = t + rep_.coeff(k) * p[k];
    return t;
  }

  int field_degree() const { return field_ ? field_->degree() : 1; }

  std::string str() const {
    if (!field_ || is_rational()) return rep_.coeff(0).get_str();
    return "(" + rep_.str(field_->variable) + ")";
  }

 private:
  NumberFieldPtr field_;       // null => rational
  Polynomial<Rational> rep_;   // reduced mod field_->modulus when field_ set

  void normalize() {
    if (field_ && rep_.degree() <= 0) field_.reset();
  }

  static std::tuple<NumberFieldPtr, Polynomial<Rational>, Polynomial<Rational>>
  unify(const NumberFieldElement& x, const NumberFieldElement& y) {
    if (x.field_ && y.field_ && !x.field_->same_as(*y.field_))
      throw std::invalid_argument(
          "cannot combine elements of distinct number fields");
    NumberFieldPtr f = x.field_ ? x.field_ : y.field_;
    return {f, x.rep_, y.rep_};
  }
};

inline std::complex<double> to_complex(const NumberFieldElement& a) {
  return a.embed();
}
inline std::string coeff_str(const NumberFieldElement& a) { return a.str(); }

/* sqrt(d) as an exact element: rational when d is a square, otherwise the
 * generator of a fresh Q(sqrt(d)) with the principal embedding. */
inline NumberFieldElement sqrt_rational(const Rational& d) {
  if (d == 0) return NumberFieldElement(Rational(0));
  if (auto s = exact_sqrt(d)) return NumberFieldElement(*s);
  return NumberFieldElement::generator(quadratic_field(d));
}

/* Square root inside the element's own field when one exists there.
 * Complete for rationals and quadratic fields; higher degree fields return
 * nullopt unless the element is a rational square. */
inline std::optional<NumberFieldElement> algebraic_sqrt(
    const NumberFieldElement& a) {
  if (a.is_rational()) {
    auto s = exact_sqrt(a.as_rational());
    if (!s) return std::nullopt;
    return NumberFieldElement(*s);
  }
  const NumberFieldPtr& F = a.field();
  if (F->degree() != 2) return std::nullopt;
  /* Field is Q(sqrt(D)) with y^2 = D; seek (p + q y)^2 = a0 + a1 y, i.e.
   * p^2 + q^2 D = a0 and 2 p q = a1 (a1 != 0 since a is not rational).
   * Then p^2 solves t^2 - a0 t + D a1^2 / 4 = 0. */
  Rational D = -F->modulus.coeff(0);
  if (!(F->modulus.coeff(1) == 0)) return std::nullopt;
  Rational a0 = a.rep().coeff(0), a1 = a.rep().coeff(1);
  Rational disc = a0 * a0 - D * a1 * a1;
  auto sd = exact_sqrt(disc);
  if (!sd) return std::nullopt;
  for (int sign = 0; sign < 2; ++sign) {
    Rational t = (a0 + (sign ? -*sd : *sd)) / 2;
    auto p = exact_sqrt(t);
    if (!p || *p == 0) continue;
    Rational q = a1 / (Rational(2) * *p);
    NumberFieldElement cand(
        F, Polynomial<Rational>(std::vector<Rational>{*p, q}));
    if (cand * cand == a) return cand;
  }
  return std::nullopt;
}

}  // namespace lamemono
