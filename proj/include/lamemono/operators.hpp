#pragma once

#include "lamemono/number_field.hpp"
#include "lamemono/polynomial.hpp"
#include "lamemono/rational_function.hpp"
#include "lamemono/roots.hpp"

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lamemono {

/* Second-order linear ODE u'' + A u' + B u = 0 with rational-function
 * coefficients over K. */
template <class K>
struct DifferentialOperator {
  RationalFunction<K> A, B;

  bool operator==(const DifferentialOperator& o) const {
    return A == o.A && B == o.B;
  }

  std::string str(const std::string& var = "x") const {
    return "u'' + (" + A.str(var) + ") u' + (" + B.str(var) + ") u = 0";
  }
};

using RationalOperator = DifferentialOperator<Rational>;

/* Coefficient of the projective normal form w'' + Bhat w = 0 reached by
 * u = w exp(-1/2 int A):  Bhat = B - A'/2 - A^2/4.  Two operators are
 * related by u -> (function) * u exactly when these agree. */
template <class K>
RationalFunction<K> normal_form(const DifferentialOperator<K>& op) {
  RationalFunction<K> half(K(Rational(1, 2)));
  RationalFunction<K> quarter(K(Rational(1, 4)));
  return op.B - half * op.A.derivative() - quarter * op.A * op.A;
}

template <class K>
bool projectively_equivalent(const DifferentialOperator<K>& a,
                             const DifferentialOperator<K>& b) {
  return normal_form(a) == normal_form(b);
}

/* The operator rewritten in the chart s = 1/x; the point x = infinity
 * becomes s = 0.  If u(x) solves the original equation, u(1/s) solves this
 * one, so indicial data at s = 0 is the indicial data at infinity. */
template <class K>
DifferentialOperator<K> infinity_chart(const DifferentialOperator<K>& op) {
  using RF = RationalFunction<K>;
  RF s = RF::variable();
  RF invs = s.inverse();
  RF s2 = s * s;
  RF Ac = op.A.compose(invs);
  RF Bc = op.B.compose(invs);
  return {RF(K(2)) / s - Ac / s2, Bc / (s2 * s2)};
}

/* One conjugacy class of singular points.  For an irreducible location
 * polynomial of degree d this record stands for all d conjugate points; the
 * stored location/indicial data use one chosen complex embedding. */
struct SingularPoint {
  bool atInfinity = false;
  Polynomial<Rational> minimal;  // monic irreducible (zero poly at infinity)
  int conjugates = 1;
  NumberFieldElement location;   // rational, or field generator with embedding
  NumberFieldElement a0, b0;     // indicial equation rho(rho-1) + a0 rho + b0
  std::array<NumberFieldElement, 2> exponents;
  bool exponentsEqual = false;

  NumberFieldElement exponentSum() const {
    return NumberFieldElement(1) - a0;
  }
  NumberFieldElement exponentDifference() const {
    return exponents[1] - exponents[0];
  }
};

namespace detail {

inline Polynomial<Rational> poly_inverse_mod(Polynomial<Rational> a,
                                             const Polynomial<Rational>& f) {
  a = a % f;
  auto e = poly_extended_gcd(a, f);
  if (e.g.degree() != 0)
    throw std::domain_error("element not invertible modulo factor");
  return (e.s / e.g.constant_term()) % f;
}

/* Choose the embedding for an irreducible location polynomial: the
 * lexicographically least (re, im) complex root, so results are stable. */
inline NumberFieldElement location_element(const Polynomial<Rational>& f) {
  if (f.degree() == 1) return NumberFieldElement(-f.coeff(0));
  auto rr = find_roots(f.complex_coefficients());
  if (rr.maxResidual > 1e-8)
    throw std::domain_error("could not embed singular location numerically");
  auto field = make_number_field(f, rr.roots.front());
  return NumberFieldElement::generator(field);
}

struct IndicialData {
  NumberFieldElement a0, b0;
  std::array<NumberFieldElement, 2> exponents;
  bool equal = false;
};

/* Indicial data of u'' + A u' + B u at the roots of the monic irreducible f,
 * evaluated in the field Q[x]/(f).  Regularity (pole orders <= 1 and <= 2)
 * must already be checked by the caller. */
inline IndicialData indicial_at(const RationalFunction<Rational>& A,
                                const RationalFunction<Rational>& B,
                                const Polynomial<Rational>& f,
                                const NumberFieldElement& theta, int vA,
                                int vB) {
  IndicialData out;
  NumberFieldElement fp = eval_in(f.derivative(), theta);
  if (vA == -1) {
    Polynomial<Rational> hA = A.den() / f;
    out.a0 = eval_in(A.num(), theta) / (fp * eval_in(hA, theta));
  }
  if (vB == -2) {
    Polynomial<Rational> hB = B.den() / (f * f);
    out.b0 = eval_in(B.num(), theta) / (fp * fp * eval_in(hB, theta));
  }
  NumberFieldElement one(1);
  if (out.b0.is_zero()) {
    /* rho(rho-1) + a0 rho = 0: exponents 0 and 1 - a0, no square root.
     * This branch covers every location whose field degree exceeds 2. */
    out.exponents = {NumberFieldElement(0), one - out.a0};
    out.equal = (out.a0 == one);
    return out;
  }
  NumberFieldElement s = one - out.a0;  // exponent sum
  NumberFieldElement disc = s * s - NumberFieldElement(4) * out.b0;
  NumberFieldElement delta;
  if (disc.is_zero()) {
    out.equal = true;
  } else if (disc.is_rational()) {
    delta = sqrt_rational(disc.as_rational());
  } else {
    auto r = algebraic_sqrt(disc);
    if (!r)
      throw std::domain_error(
          "exponents lie outside the supported field tower");
    delta = *r;
  }
  NumberFieldElement half(Rational(1, 2));
  out.exponents = {(s - delta) * half, (s + delta) * half};
  return out;
}

}  // namespace detail

/* All singular points of the operator as conjugacy classes, finite ones
 * first (ordered by their minimal polynomials), then infinity when it is
 * singular.  Throws on irregular points and on locations whose minimal
 * polynomial cannot be certified irreducible (degree > 3). */
inline std::vector<SingularPoint> singular_points(const RationalOperator& op) {
  std::vector<SingularPoint> out;
  Polynomial<Rational> denProduct = op.A.den() * op.B.den();
  std::vector<Polynomial<Rational>> factors;
  if (denProduct.degree() >= 1) {
    for (const auto& t : factor_small(denProduct).terms) {
      if (!t.irreducibilityVerified)
        throw std::domain_error(
            "singular location of degree > 3: irreducibility not certified");
      if (std::find(factors.begin(), factors.end(), t.factor) == factors.end())
        factors.push_back(t.factor);
    }
  }
  for (const auto& f : factors) {
    int vA = op.A.is_zero() ? 0 : op.A.valuation(f);
    int vB = op.B.is_zero() ? 0 : op.B.valuation(f);
    if (vA >= 0 && vB >= 0) continue;  // cancelled in canonical form
    if (vA < -1 || vB < -2)
      throw std::domain_error("irregular singular point at roots of " +
                              f.str());
    SingularPoint p;
    p.minimal = f;
    p.conjugates = f.degree();
    p.location = detail::location_element(f);
    auto ind = detail::indicial_at(op.A, op.B, f, p.location, vA, vB);
    p.a0 = ind.a0;
    p.b0 = ind.b0;
    p.exponents = ind.exponents;
    p.exponentsEqual = ind.equal;
    out.push_back(std::move(p));
  }
  /* Infinity, via the chart s = 1/x. */
  auto chart = infinity_chart(op);
  Polynomial<Rational> s = Polynomial<Rational>::variable();
  int vA = chart.A.is_zero() ? 0 : chart.A.valuation(s);
  int vB = chart.B.is_zero() ? 0 : chart.B.valuation(s);
  if (vA < 0 || vB < 0) {
    if (vA < -1 || vB < -2)
      throw std::domain_error("irregular singular point at infinity");
    SingularPoint p;
    p.atInfinity = true;
    p.minimal = Polynomial<Rational>();
    p.conjugates = 1;
    p.location = NumberFieldElement(0);  // placeholder; atInfinity is the key
    auto ind =
        detail::indicial_at(chart.A, chart.B, s, NumberFieldElement(0), vA, vB);
    p.a0 = ind.a0;
    p.b0 = ind.b0;
    p.exponents = ind.exponents;
    p.exponentsEqual = ind.equal;
    out.push_back(std::move(p));
  }
  return out;
}

inline std::optional<SingularPoint> singular_point_at(
    const RationalOperator& op, const Rational& x0) {
  for (auto& p : singular_points(op))
    if (!p.atInfinity && p.minimal.degree() == 1 && p.minimal.eval(x0) == 0)
      return p;
  return std::nullopt;
}

inline std::optional<SingularPoint> singular_point_at_infinity(
    const RationalOperator& op) {
  for (auto& p : singular_points(op))
    if (p.atInfinity) return p;
  return std::nullopt;
}

/* Sum over one conjugacy class of a field element's embeddings. */
inline Rational class_trace(const NumberFieldElement& a, int conjugates) {
  if (a.is_rational()) return Rational(conjugates) * a.as_rational();
  if (a.field_degree() != conjugates)
    throw std::domain_error("element does not live in the location field");
  return a.trace();
}

/* Fuchs relation: over all singular points, sum(exponent sums) must equal
 * (number of points) - 2 for a second-order Fuchsian operator.  Returns the
 * defect, which is zero exactly when the relation holds. */
inline Rational fuchs_relation_defect(const RationalOperator& op) {
  auto pts = singular_points(op);
  Rational sum(0);
  long count = 0;
  for (const auto& p : pts) {
    sum += class_trace(p.exponentSum(), p.conjugates);
    count += p.conjugates;
  }
  return sum - Rational(count - 2);
}

/* Wronskian of a solution basis, W = exp(-int A), when it is a product of
 * rational powers of polynomials: W = prod factors[i].first ^ second. */
struct Wronskian {
  std::vector<std::pair<Polynomial<Rational>, Rational>> factors;

  std::string str(const std::string& var = "x") const {
    if (factors.empty()) return "1";
    std::string out;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (i) out += " * ";
      out += "(" + factors[i].first.str(var) + ")^(" +
             factors[i].second.get_str() + ")";
    }
    return out;
  }
};

inline Wronskian wronskian(const RationalOperator& op) {
  Wronskian w;
  if (op.A.is_zero()) return w;
  const auto& num = op.A.num();
  const auto& den = op.A.den();
  if (num.degree() >= den.degree())
    throw std::domain_error(
        "Wronskian is not algebraic: A has a polynomial part");
  if (poly_gcd(den, den.derivative()).degree() != 0)
    throw std::domain_error(
        "Wronskian with higher-order poles in A is unsupported");
  for (const auto& t : factor_small(den).terms) {
    const Polynomial<Rational>& f = t.factor;
    Polynomial<Rational> h = den / f;
    /* Residue of A at the roots of f, as a polynomial mod f; the Wronskian
     * is a rational power of f only when this is one constant. */
    Polynomial<Rational> r =
        (((num % f) * detail::poly_inverse_mod(h, f)) % f *
         detail::poly_inverse_mod(f.derivative() % f, f)) %
        f;
    if (r.degree() > 0) {
      if (!t.irreducibilityVerified)
        throw std::domain_error(
            "Wronskian residues not constant on an unfactored location");
      throw std::domain_error(
          "Wronskian is not a rational power product: residues differ "
          "among conjugate points");
    }
    Rational c = r.constant_term();
    if (c != 0) w.factors.emplace_back(f, -c);
  }
  return w;
}

}  // namespace lamemono
