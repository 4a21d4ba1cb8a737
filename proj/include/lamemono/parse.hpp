#pragma once

#include "lamemono/rational.hpp"
#include "lamemono/rational_function.hpp"

#include <cctype>
#include <complex>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace lamemono {

/* Recursive-descent parser for rational-function expressions in one free
 * variable.  Accepts + - * / ^ (nonnegative integer exponents), parentheses,
 * integer literals of any size, and juxtaposition as multiplication, so
 * strings like "12(x-1)^5" or "1-(5x-8)^3/(12(x-1)^5)" round-trip. */
class ExpressionParser {
 public:
  explicit ExpressionParser(const std::string& text) : text_(text) {}

  RationalFunction<Rational> parse(const std::string& expectedVar = "") {
    pos_ = 0;
    var_.clear();
    RationalFunction<Rational> r = expr();
    skip_ws();
    if (pos_ != text_.size())
      throw std::invalid_argument("unexpected input at '" +
                                  text_.substr(pos_) + "'");
    if (!expectedVar.empty() && !var_.empty() && var_ != expectedVar)
      throw std::invalid_argument("expression uses variable '" + var_ +
                                  "', expected '" + expectedVar + "'");
    return r;
  }

  const std::string& variable() const { return var_; }

 private:
  const std::string& text_;
  std::size_t pos_ = 0;
  std::string var_;

  using RF = RationalFunction<Rational>;

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool starts_primary(char c) const {
    return c == '(' || std::isdigit(static_cast<unsigned char>(c)) ||
           std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }

  RF expr() {
    RF acc = term();
    while (true) {
      char c = peek();
      if (c == '+') {
        ++pos_;
        acc = acc + term();
      } else if (c == '-') {
        ++pos_;
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  RF term() {
    RF acc = factor();
    while (true) {
      char c = peek();
      if (c == '*') {
        ++pos_;
        acc = acc * factor();
      } else if (c == '/') {
        ++pos_;
        acc = acc / factor();
      } else if (starts_primary(c)) {
        acc = acc * factor();  // juxtaposition
      } else {
        return acc;
      }
    }
  }

  RF factor() {
    char c = peek();
    if (c == '-') {
      ++pos_;
      return -factor();
    }
    if (c == '+') {
      ++pos_;
      return factor();
    }
    return power();
  }

  RF power() {
    RF base = primary();
    if (peek() == '^') {
      ++pos_;
      skip_ws();
      if (pos_ >= text_.size() ||
          !std::isdigit(static_cast<unsigned char>(text_[pos_])))
        throw std::invalid_argument("exponent must be a nonnegative integer");
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_])))
        ++pos_;
      long e = std::stol(text_.substr(start, pos_ - start));
      return base.pow(static_cast<int>(e));
    }
    return base;
  }

  RF primary() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      RF inner = expr();
      if (peek() != ')') throw std::invalid_argument("missing ')'");
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_])))
        ++pos_;
      return RF(Rational(Integer(text_.substr(start, pos_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
              text_[pos_] == '_'))
        ++pos_;
      std::string name = text_.substr(start, pos_ - start);
      if (var_.empty())
        var_ = name;
      else if (var_ != name)
        throw std::invalid_argument("more than one variable: '" + var_ +
                                    "' and '" + name + "'");
      return RF::variable();
    }
    throw std::invalid_argument(pos_ < text_.size()
                                    ? std::string("unexpected character '") +
                                          text_[pos_] + "'"
                                    : "unexpected end of expression");
  }
};

inline RationalFunction<Rational> parse_rational_function(
    const std::string& text, const std::string& expectedVar = "") {
  return ExpressionParser(text).parse(expectedVar);
}

namespace detail {
inline double full_strtod(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty number");
  const char* c = s.c_str();
  char* end = nullptr;
  double v = std::strtod(c, &end);
  if (end != c + s.size())
    throw std::invalid_argument("bad number '" + s + "'");
  return v;
}
}  // namespace detail

/* "a", "bi", "a+bi", "a-bi" (also bare "i" / "-i") to a complex double. */
inline std::complex<double> parse_complex(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw std::invalid_argument("empty complex literal");
  if (s.back() != 'i' && s.back() != 'I')
    return {detail::full_strtod(s), 0.0};
  s.pop_back();
  /* Split at the last sign that is not an exponent sign and not leading. */
  std::size_t split = std::string::npos;
  for (std::size_t i = s.size(); i-- > 1;) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  auto coeff = [](const std::string& t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return detail::full_strtod(t);
  };
  if (split == std::string::npos) return {0.0, coeff(s)};
  return {detail::full_strtod(s.substr(0, split)), coeff(s.substr(split))};
}

}  // namespace lamemono
