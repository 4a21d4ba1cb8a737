#pragma once

#include "lamemono/polynomial.hpp"

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>

namespace lamemono {

/* Rational function num/den over an exact field K, kept canonical:
 * gcd(num, den) = 1 and den monic.  Zero is 0/1. */
template <class K>
class RationalFunction {
 public:
  RationalFunction() : num_(), den_(K(1)) {}
  RationalFunction(const K& c) : num_(c), den_(K(1)) {}
  RationalFunction(int c) : num_(K(c)), den_(K(1)) {}
  RationalFunction(const Polynomial<K>& p) : num_(p), den_(K(1)) {}
  RationalFunction(Polynomial<K> num, Polynomial<K> den)
      : num_(std::move(num)), den_(std::move(den)) {
    canonicalize();
  }

  static RationalFunction variable() {
    return RationalFunction(Polynomial<K>::variable());
  }

  const Polynomial<K>& num() const { return num_; }
  const Polynomial<K>& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }
  bool is_constant() const { return num_.is_constant() && is_polynomial(); }

  /* Degree as a map P1 -> P1. */
  int map_degree() const { return std::max(num_.degree(), den_.degree()); }

  bool operator==(const RationalFunction& o) const {
    return num_ == o.num_ && den_ == o.den_;
  }
  bool operator!=(const RationalFunction& o) const { return !(*this == o); }

  RationalFunction operator-() const {
    RationalFunction r(*this);
    r.num_ = -r.num_;
    return r;
  }

  RationalFunction operator+(const RationalFunction& o) const {
    return RationalFunction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
  }
  RationalFunction operator-(const RationalFunction& o) const {
    return RationalFunction(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
  }
  RationalFunction operator*(const RationalFunction& o) const {
    return RationalFunction(num_ * o.num_, den_ * o.den_);
  }
  RationalFunction operator/(const RationalFunction& o) const {
    if (o.is_zero()) throw std::domain_error("rational function division by zero");
    return RationalFunction(num_ * o.den_, den_ * o.num_);
  }

  RationalFunction inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero rational function");
    return RationalFunction(den_, num_);
  }

  RationalFunction pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    RationalFunction acc(K(1));
    RationalFunction base(*this);
    unsigned u = static_cast<unsigned>(e);
    while (u) {
      if (u & 1u) acc = acc * base;
      base = base * base;
      u >>= 1u;
    }
    return acc;
  }

  /* Quotient-rule derivative with the common factor of den and den'
   * removed up front; without this the denominators of third derivatives
   * of high-degree maps grow far past what is needed. */
  RationalFunction derivative() const {
    if (is_polynomial()) return RationalFunction(num_.derivative());
    Polynomial<K> dp = den_.derivative();
    Polynomial<K> g = poly_gcd(den_, dp);
    Polynomial<K> h = den_ / g;        // den = g*h
    Polynomial<K> dpg = dp / g;
    return RationalFunction(num_.derivative() * h - num_ * dpg, den_ * h);
  }

  /* this(g): composition of maps. */
  RationalFunction compose(const RationalFunction& g) const {
    RationalFunction top = poly_at(num_, g);
    RationalFunction bot = poly_at(den_, g);
    return top / bot;
  }

  K eval(const K& x) const {
    K d = den_.eval(x);
    if (d == K(0)) throw std::domain_error("evaluation at a pole");
    return num_.eval(x) / d;
  }

  std::complex<double> eval_complex(const std::complex<double>& z) const {
    return num_.eval_complex(z) / den_.eval_complex(z);
  }

  /* Order of vanishing along the monic irreducible f: >0 zero, <0 pole. */
  int valuation(const Polynomial<K>& f) const {
    if (is_zero())
      throw std::domain_error("valuation of the zero rational function");
    return poly_valuation(num_, f) - poly_valuation(den_, f);
  }

  std::string str(const std::string& var = "x") const {
    if (is_polynomial()) return num_.str(var);
    return "(" + num_.str(var) + ")/(" + den_.str(var) + ")";
  }

  /* f(g) for a polynomial f and rational g = p/q, computed as
   * sum a_i p^i q^(n-i) over q^n (no intermediate rational arithmetic). */
  static RationalFunction poly_at(const Polynomial<K>& f,
                                  const RationalFunction& g) {
    int n = f.degree();
    if (n < 0) return RationalFunction();
    if (n == 0) return RationalFunction(f.coeff(0));
    Polynomial<K> acc(f.coeff(static_cast<std::size_t>(n)));
    Polynomial<K> qpow(K(1));
    for (int i = n - 1; i >= 0; --i) {
      qpow = qpow * g.den_;
      acc = acc * g.num_ + Polynomial<K>(f.coeff(static_cast<std::size_t>(i))) * qpow;
    }
    return RationalFunction(std::move(acc), std::move(qpow));
  }

 private:
  Polynomial<K> num_, den_;

  void canonicalize() {
    if (den_.is_zero())
      throw std::domain_error("rational function with zero denominator");
    if (num_.is_zero()) {
      den_ = Polynomial<K>(K(1));
      return;
    }
    Polynomial<K> g = poly_gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = num_ / g;
      den_ = den_ / g;
    }
    K lead = den_.leading();
    if (!(lead == K(1))) {
      num_ = num_ / lead;
      den_ = den_ / lead;
    }
  }
};

template <class K>
RationalFunction<K> operator+(const Polynomial<K>& p,
                              const RationalFunction<K>& r) {
  return RationalFunction<K>(p) + r;
}
template <class K>
RationalFunction<K> operator*(const K& s, const RationalFunction<K>& r) {
  return RationalFunction<K>(s) * r;
}

/* Lift a rational-coefficient rational function into coefficient field K. */
template <class K>
RationalFunction<K> lift_rf(const RationalFunction<Rational>& r) {
  return RationalFunction<K>(lift<K>(r.num()), lift<K>(r.den()));
}

}  // namespace lamemono
