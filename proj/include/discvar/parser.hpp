#pragma once

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>

#include "discvar/context.hpp"
#include "discvar/error.hpp"
#include "discvar/polynomial.hpp"
#include "discvar/rational.hpp"

namespace discvar {

namespace detail {

// Recursive descent over
//   expr   := sign? term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := base ('^' nat)?
//   base   := name | rational | '(' expr ')'
// Juxtaposition ("2x", "x y") is rejected.
class PolynomialParser {
 public:
  PolynomialParser(std::string_view text, const VariableContext& ctx) : s_(text), ctx_(ctx) {}

  Polynomial parse() {
    skip();
    if (pos_ >= s_.size()) throw SyntaxError("empty expression", pos_);
    Polynomial p = expr();
    skip();
    if (pos_ < s_.size()) throw SyntaxError("unexpected '" + std::string(1, s_[pos_]) + "'", pos_);
    return p;
  }

 private:
  static constexpr unsigned long kMaxExponent = 1u << 20;

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  Polynomial expr() {
    bool negate = false;
    if (peek('-') || peek('+')) negate = s_[pos_++] == '-';
    Polynomial acc = term();
    if (negate) acc = -acc;
    for (;;) {
      if (peek('+')) {
        ++pos_;
        acc += term();
      } else if (peek('-')) {
        ++pos_;
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Polynomial term() {
    Polynomial acc = factor();
    while (peek('*')) {
      ++pos_;
      acc *= factor();
    }
    return acc;
  }

  Polynomial factor() {
    Polynomial b = base();
    if (peek('^')) {
      ++pos_;
      skip();
      if (pos_ < s_.size() && s_[pos_] == '-') throw NegativeExponent(pos_);
      std::size_t at = pos_;
      if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
        throw SyntaxError("expected exponent", at);
      std::string digits = integer();
      if (digits.size() > 7 || std::stoul(digits) > kMaxExponent) throw SyntaxError("exponent too large", at);
      b = b.pow(std::stoul(digits));
    }
    return b;
  }

  Polynomial base() {
    skip();
    if (pos_ >= s_.size()) throw SyntaxError("unexpected end of expression", pos_);
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial e = expr();
      if (!peek(')')) throw SyntaxError("expected ')'", pos_);
      ++pos_;
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num = integer();
      std::string den = "1";
      std::size_t save = pos_;
      if (peek('/')) {
        ++pos_;
        skip();
        std::size_t at = pos_;
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
          throw SyntaxError("expected denominator", at);
        den = integer();
        if (Integer(den) == 0) throw SyntaxError("zero denominator", at);
      } else {
        pos_ = save;
      }
      return Polynomial::constant(ctx_, Rational(Integer(num), Integer(den)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      auto idx = ctx_.find(name);
      if (!idx) throw UnknownVariable(name);
      return Polynomial::variable(ctx_, *idx);
    }
    throw SyntaxError("unexpected '" + std::string(1, c) + "'", pos_);
  }

  std::string integer() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  std::string_view s_;
  const VariableContext& ctx_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses a polynomial expression over the variables of `ctx`.
inline Polynomial parse_polynomial(std::string_view text, const VariableContext& ctx) {
  return detail::PolynomialParser(text, ctx).parse();
}

}  // namespace discvar
