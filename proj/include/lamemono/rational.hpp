#pragma once

#include <gmpxx.h>

#include <cctype>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>

namespace lamemono {

using Integer = mpz_class;
using Rational = mpq_class;

/* Parse "p", "-p" or "p/q" with optional whitespace.  The denominator must
 * be a plain positive integer literal; signs live on the numerator. */
inline Rational parse_rational(const std::string& text) {
  std::string s;
  s.reserve(text.size());
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (!s.empty() && s[0] == '+') s.erase(0, 1);
  if (s.empty()) throw std::invalid_argument("empty rational literal");

  auto all_digits = [](const std::string& part, std::size_t from) {
    if (from >= part.size()) return false;
    for (std::size_t i = from; i < part.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(part[i]))) return false;
    return true;
  };
  std::size_t slash = s.find('/');
  std::string num = slash == std::string::npos ? s : s.substr(0, slash);
  bool ok = all_digits(num, num[0] == '-' ? 1 : 0);
  if (slash != std::string::npos) ok = ok && all_digits(s, slash + 1);
  if (!ok) throw std::invalid_argument("bad rational literal: " + text);

  Rational r(s);
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline bool is_integer(const Rational& r) {
  return mpz_cmp_ui(r.get_den().get_mpz_t(), 1) == 0;
}

inline Integer floor_int(const Rational& r) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  return q;
}

/* r - floor(r), always in [0,1). */
inline Rational fractional_part(const Rational& r) {
  return r - Rational(floor_int(r));
}

inline bool is_even(const Integer& n) { return mpz_even_p(n.get_mpz_t()) != 0; }

inline Rational rational_pow(const Rational& base, long e) {
  if (e == 0) return Rational(1);
  bool neg = e < 0;
  unsigned long n = neg ? static_cast<unsigned long>(-(e + 1)) + 1UL
                        : static_cast<unsigned long>(e);
  if (base == 0) {
    if (neg) throw std::domain_error("zero raised to a negative power");
    return Rational(0);
  }
  Integer pn, pd;
  mpz_pow_ui(pn.get_mpz_t(), base.get_num().get_mpz_t(), n);
  mpz_pow_ui(pd.get_mpz_t(), base.get_den().get_mpz_t(), n);
  Rational out;
  if (neg)
    out = Rational(pd) / Rational(pn);
  else
    out = Rational(pn) / Rational(pd);
  out.canonicalize();
  return out;
}

inline double to_double(const Rational& r) { return r.get_d(); }

inline std::complex<double> to_complex(const Rational& r) {
  return {r.get_d(), 0.0};
}

inline Rational rational_abs(const Rational& r) {
  return r < 0 ? Rational(-r) : r;
}

/* Exact square root when r is the square of a rational. */
inline std::optional<Rational> exact_sqrt(const Rational& r) {
  if (r < 0) return std::nullopt;
  if (!mpz_perfect_square_p(r.get_num().get_mpz_t())) return std::nullopt;
  if (!mpz_perfect_square_p(r.get_den().get_mpz_t())) return std::nullopt;
  Integer sn, sd;
  mpz_sqrt(sn.get_mpz_t(), r.get_num().get_mpz_t());
  mpz_sqrt(sd.get_mpz_t(), r.get_den().get_mpz_t());
  return Rational(sn) / Rational(sd);
}

}  // namespace lamemono
