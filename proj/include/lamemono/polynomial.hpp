#pragma once

#include "lamemono/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace lamemono {

/* Printer hook for polynomial coefficients; overload per coefficient type.
 * Declared ahead of the template so the Rational overload is found by
 * ordinary lookup (GMP types live outside this namespace, so ADL cannot). */
inline std::string coeff_str(const Rational& r) { return r.get_str(); }

/* Dense univariate polynomial with coefficients in an exact field K
 * (Rational, or NumberFieldElement below).  Coefficients are stored lowest
 * degree first; the zero polynomial has an empty vector and degree -1. */
template <class K>
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(const K& c) {
    if (!(c == K(0))) coeff_.push_back(c);
  }
  Polynomial(int c) : Polynomial(K(c)) {}
  explicit Polynomial(std::vector<K> coeffs) : coeff_(std::move(coeffs)) {
    prune();
  }

  static Polynomial variable() {
    return Polynomial(std::vector<K>{K(0), K(1)});
  }
  static Polynomial monomial(const K& a, std::size_t k) {
    if (a == K(0)) return Polynomial();
    std::vector<K> c(k + 1, K(0));
    c[k] = a;
    return Polynomial(std::move(c));
  }
  /* Build from (exponent, coefficient) pairs. */
  static Polynomial from_terms(
      const std::vector<std::pair<std::size_t, K>>& terms) {
    std::size_t top = 0;
    for (const auto& t : terms) top = std::max(top, t.first);
    std::vector<K> c(top + 1, K(0));
    for (const auto& t : terms) c[t.first] = c[t.first] + t.second;
    return Polynomial(std::move(c));
  }

  int degree() const { return static_cast<int>(coeff_.size()) - 1; }
  bool is_zero() const { return coeff_.empty(); }
  bool is_constant() const { return coeff_.size() <= 1; }

  K coeff(std::size_t i) const {
    return i < coeff_.size() ? coeff_[i] : K(0);
  }
  const std::vector<K>& coefficients() const { return coeff_; }
  const K& leading() const {
    if (coeff_.empty()) throw std::domain_error("leading() of zero polynomial");
    return coeff_.back();
  }
  K constant_term() const { return coeff(0); }

  bool operator==(const Polynomial& o) const { return coeff_ == o.coeff_; }
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  Polynomial operator-() const {
    Polynomial r(*this);
    for (K& c : r.coeff_) c = -c;
    return r;
  }

  Polynomial operator+(const Polynomial& o) const {
    std::vector<K> c(std::max(coeff_.size(), o.coeff_.size()), K(0));
    for (std::size_t i = 0; i < coeff_.size(); ++i) c[i] = coeff_[i];
    for (std::size_t i = 0; i < o.coeff_.size(); ++i) c[i] = c[i] + o.coeff_[i];
    return Polynomial(std::move(c));
  }
  Polynomial operator-(const Polynomial& o) const { return *this + (-o); }

  Polynomial operator*(const Polynomial& o) const {
    if (is_zero() || o.is_zero()) return Polynomial();
    std::vector<K> c(coeff_.size() + o.coeff_.size() - 1, K(0));
    for (std::size_t i = 0; i < coeff_.size(); ++i)
      for (std::size_t j = 0; j < o.coeff_.size(); ++j)
        c[i + j] = c[i + j] + coeff_[i] * o.coeff_[j];
    return Polynomial(std::move(c));
  }

  Polynomial operator*(const K& s) const {
    if (s == K(0)) return Polynomial();
    Polynomial r(*this);
    for (K& c : r.coeff_) c = c * s;
    return r;
  }
  Polynomial operator/(const K& s) const {
    Polynomial r(*this);
    for (K& c : r.coeff_) c = c / s;
    return r;
  }

  /* Euclidean division: returns (quotient, remainder). */
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const {
    if (d.is_zero()) throw std::domain_error("polynomial division by zero");
    Polynomial r(*this);
    if (r.degree() < d.degree()) return {Polynomial(), r};
    std::vector<K> q(r.coeff_.size() - d.coeff_.size() + 1, K(0));
    const K& lead = d.leading();
    while (!r.is_zero() && r.degree() >= d.degree()) {
      std::size_t shift = r.coeff_.size() - d.coeff_.size();
      K f = r.leading() / lead;
      q[shift] = f;
      for (std::size_t i = 0; i < d.coeff_.size(); ++i)
        r.coeff_[shift + i] = r.coeff_[shift + i] - f * d.coeff_[i];
      r.prune();
    }
    return {Polynomial(std::move(q)), r};
  }
  Polynomial operator/(const Polynomial& d) const { return divmod(d).first; }
  Polynomial operator%(const Polynomial& d) const { return divmod(d).second; }

  Polynomial derivative() const {
    if (coeff_.size() <= 1) return Polynomial();
    std::vector<K> c(coeff_.size() - 1, K(0));
    for (std::size_t i = 1; i < coeff_.size(); ++i)
      c[i - 1] = coeff_[i] * K(static_cast<int>(i));
    return Polynomial(std::move(c));
  }

  K eval(const K& x) const {
    K acc(0);
    for (std::size_t i = coeff_.size(); i-- > 0;) acc = acc * x + coeff_[i];
    return acc;
  }

  std::complex<double> eval_complex(const std::complex<double>& z) const {
    std::complex<double> acc = 0.0;
    for (std::size_t i = coeff_.size(); i-- > 0;)
      acc = acc * z + to_complex(coeff_[i]);
    return acc;
  }

  std::vector<std::complex<double>> complex_coefficients() const {
    std::vector<std::complex<double>> c;
    c.reserve(coeff_.size());
    for (const K& k : coeff_) c.push_back(to_complex(k));
    return c;
  }

  /* this(g) by Horner over polynomials. */
  Polynomial compose(const Polynomial& g) const {
    Polynomial acc;
    for (std::size_t i = coeff_.size(); i-- > 0;)
      acc = acc * g + Polynomial(coeff_[i]);
    return acc;
  }

  Polynomial pow(unsigned e) const {
    Polynomial acc(K(1));
    Polynomial base(*this);
    while (e) {
      if (e & 1u) acc = acc * base;
      base = base * base;
      e >>= 1u;
    }
    return acc;
  }

  Polynomial monic() const {
    if (is_zero()) return *this;
    return *this / leading();
  }

  std::string str(const std::string& var = "x") const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = coeff_.size(); i-- > 0;) {
      if (coeff_[i] == K(0)) continue;
      K c = coeff_[i];
      std::string cs = coeff_str(c);
      bool neg = !cs.empty() && cs[0] == '-';
      if (first) {
        if (neg) out << "-";
      } else {
        out << (neg ? " - " : " + ");
      }
      if (neg) cs.erase(0, 1);
      bool unit = (cs == "1");
      if (i == 0) {
        out << cs;
      } else {
        if (!unit) out << cs << "*";
        out << var;
        if (i > 1) out << "^" << i;
      }
      first = false;
    }
    return out.str();
  }

 private:
  std::vector<K> coeff_;

  void prune() {
    while (!coeff_.empty() && coeff_.back() == K(0)) coeff_.pop_back();
  }
};

template <class K>
Polynomial<K> operator*(const K& s, const Polynomial<K>& p) {
  return p * s;
}

/* Evaluate a rational-coefficient polynomial at a point of any coefficient
 * field K constructible from Rational. */
template <class K>
K eval_in(const Polynomial<Rational>& p, const K& x) {
  K acc(0);
  for (std::size_t i = p.coefficients().size(); i-- > 0;)
    acc = acc * x + K(p.coefficients()[i]);
  return acc;
}

/* Lift a rational-coefficient polynomial into K coefficients. */
template <class K>
Polynomial<K> lift(const Polynomial<Rational>& p) {
  std::vector<K> c;
  c.reserve(p.coefficients().size());
  for (const Rational& r : p.coefficients()) c.emplace_back(r);
  return Polynomial<K>(std::move(c));
}

/* Monic gcd (zero if both inputs are zero). */
template <class K>
Polynomial<K> poly_gcd(Polynomial<K> a, Polynomial<K> b) {
  while (!b.is_zero()) {
    Polynomial<K> r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.is_zero() ? a : a.monic();
}

template <class K>
struct ExtendedGcd {
  Polynomial<K> g, s, t;  // g = s*a + t*b, g monic (or zero)
};

template <class K>
ExtendedGcd<K> poly_extended_gcd(const Polynomial<K>& a,
                                 const Polynomial<K>& b) {
  Polynomial<K> r0 = a, r1 = b;
  Polynomial<K> s0(K(1)), s1, t0, t1(K(1));
  while (!r1.is_zero()) {
    auto [q, r2] = r0.divmod(r1);
    Polynomial<K> s2 = s0 - q * s1;
    Polynomial<K> t2 = t0 - q * t1;
    r0 = std::move(r1); r1 = std::move(r2);
    s0 = std::move(s1); s1 = std::move(s2);
    t0 = std::move(t1); t1 = std::move(t2);
  }
  if (!r0.is_zero()) {
    K lead = r0.leading();
    r0 = r0 / lead;
    s0 = s0 / lead;
    t0 = t0 / lead;
  }
  return {r0, s0, t0};
}

/* Yun's squarefree decomposition of the monic part: returns monic pairwise
 * coprime (part, multiplicity) with product part_i^mult_i = input.monic(). */
template <class K>
std::vector<std::pair<Polynomial<K>, int>> squarefree_decomposition(
    const Polynomial<K>& f) {
  std::vector<std::pair<Polynomial<K>, int>> out;
  if (f.degree() < 1) return out;
  Polynomial<K> fm = f.monic();
  Polynomial<K> fp = fm.derivative();
  Polynomial<K> a = poly_gcd(fm, fp);
  Polynomial<K> b = fm / a;
  Polynomial<K> c = fp / a;
  Polynomial<K> d = c - b.derivative();
  int i = 1;
  while (b.degree() > 0) {
    Polynomial<K> ai = poly_gcd(b, d);
    if (ai.degree() > 0) out.emplace_back(ai, i);
    b = b / ai;
    c = d / ai;
    d = c - b.derivative();
    ++i;
  }
  return out;
}

/* Product of the distinct irreducible factors, monic. */
template <class K>
Polynomial<K> squarefree_part(const Polynomial<K>& f) {
  if (f.degree() < 1) return f.monic();
  Polynomial<K> g = poly_gcd(f, f.derivative());
  return (f / g).monic();
}

/* f-adic valuation: largest k with f^k | p (p nonzero). */
template <class K>
int poly_valuation(const Polynomial<K>& p, const Polynomial<K>& f) {
  if (p.is_zero()) throw std::domain_error("valuation of zero polynomial");
  int v = 0;
  Polynomial<K> cur = p;
  while (true) {
    auto [q, r] = cur.divmod(f);
    if (!r.is_zero()) return v;
    cur = std::move(q);
    ++v;
  }
}

namespace detail {

/* Positive divisors by trial division; guarded so a pathological constant
 * term cannot spin forever. */
inline std::vector<Integer> divisors(const Integer& n_in) {
  Integer n = abs(n_in);
  if (n == 0) throw std::domain_error("divisors of zero");
  std::vector<Integer> small, large;
  Integer d = 1;
  long iterations = 0;
  while (d * d <= n) {
    if (++iterations > 8000000)
      throw std::domain_error(
          "rational root search: constant term too large to factor");
    if (mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t())) {
      small.push_back(d);
      Integer q = n / d;
      if (q != d) large.push_back(q);
    }
    ++d;
  }
  for (std::size_t i = large.size(); i-- > 0;) small.push_back(large[i]);
  return small;
}

/* All rational roots of a squarefree polynomial over Q. */
inline std::vector<Rational> rational_roots(const Polynomial<Rational>& p) {
  std::vector<Rational> roots;
  if (p.degree() < 1) return roots;
  Polynomial<Rational> f = p;
  if (f.constant_term() == 0) {
    roots.push_back(Rational(0));
    f = f / Polynomial<Rational>::variable();
  }
  if (f.degree() < 1) return roots;
  /* Clear denominators to an integer polynomial. */
  Integer lcm = 1;
  for (const Rational& c : f.coefficients())
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den().get_mpz_t());
  std::vector<Integer> ic;
  ic.reserve(f.coefficients().size());
  for (const Rational& c : f.coefficients()) {
    Rational scaled = c * Rational(lcm);
    ic.push_back(scaled.get_num());
  }
  auto ps = divisors(ic.front());
  auto qs = divisors(ic.back());
  for (const Integer& pp : ps)
    for (const Integer& qq : qs) {
      Rational cand(pp, qq);
      cand.canonicalize();
      for (int s = 0; s < 2; ++s) {
        Rational r = s ? Rational(-cand) : cand;
        if (f.eval(r) == 0 &&
            std::find(roots.begin(), roots.end(), r) == roots.end())
          roots.push_back(r);
      }
    }
  return roots;
}

}  // namespace detail

struct FactorTerm {
  Polynomial<Rational> factor;  // monic
  int multiplicity = 1;
  /* True when irreducibility is certain (degree <= 3, or linear). Higher
   * degree leftovers are reported as-is with this flag cleared. */
  bool irreducibilityVerified = true;
};

struct Factorization {
  Rational unit;  // leading coefficient of the input
  std::vector<FactorTerm> terms;

  Polynomial<Rational> reconstruct() const {
    Polynomial<Rational> p{unit};
    for (const auto& t : terms) p = p * t.factor.pow(t.multiplicity);
    return p;
  }
};

/* Factor into irreducibles over Q, complete for squarefree parts of degree
 * <= 3 (rational-root extraction; a root-free quadratic or cubic is
 * irreducible).  Degree >= 4 remainders come back unfactored and flagged. */
inline Factorization factor_small(const Polynomial<Rational>& p) {
  if (p.degree() < 1)
    throw std::invalid_argument("factor_small requires degree >= 1");
  Factorization out;
  out.unit = p.leading();
  for (const auto& [part, mult] : squarefree_decomposition(p)) {
    Polynomial<Rational> rest = part;
    for (const Rational& r : detail::rational_roots(part)) {
      Polynomial<Rational> lin(std::vector<Rational>{-r, Rational(1)});
      out.terms.push_back({lin, mult, true});
      rest = rest / lin;
    }
    if (rest.degree() >= 1)
      out.terms.push_back({rest, mult, rest.degree() <= 3});
  }
  std::sort(out.terms.begin(), out.terms.end(),
            [](const FactorTerm& a, const FactorTerm& b) {
              if (a.factor.degree() != b.factor.degree())
                return a.factor.degree() < b.factor.degree();
              return a.factor.str() < b.factor.str();
            });
  return out;
}

}  // namespace lamemono
