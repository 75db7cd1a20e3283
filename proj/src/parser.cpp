#include <cctype>
#include <string>

#include "tdnls/errors.hpp"
#include "tdnls/expr.hpp"

namespace tdnls {

namespace {

// Recursive descent over
//   sum     := product (('+'|'-') product)*
//   product := unary (('*'|'/') unary)*
//   unary   := ('+'|'-') unary | power
//   power   := primary ('^' unary)?
//   primary := number | name | name '(' sum ')' | '(' sum ')'
// Exponents go through `unary`, so t^-2 is accepted and t^2^3 = t^(2^3).
class Parser {
public:
  explicit Parser(std::string_view src) : src_(src) {}

  Expr parse_all() {
    Expr e = sum();
    skip_space();
    if (pos_ != src_.size())
      throw ParseError(std::string("unexpected '") + src_[pos_] + "'", pos_);
    return e;
  }

private:
  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= src_.size())
        throw ParseError(std::string("expected '") + c + "' but input ended", pos_);
      throw ParseError(std::string("expected '") + c + "'", pos_);
    }
  }

  Expr sum() {
    Expr e = product();
    for (;;) {
      if (accept('+'))
        e = e + product();
      else if (accept('-'))
        e = e - product();
      else
        return e;
    }
  }

  Expr product() {
    Expr e = unary();
    for (;;) {
      if (accept('*'))
        e = e * unary();
      else if (accept('/'))
        e = e / unary();
      else
        return e;
    }
  }

  Expr unary() {
    if (accept('-'))
      return -unary();
    if (accept('+'))
      return unary();
    return power();
  }

  Expr power() {
    Expr base = primary();
    skip_space();
    if (!accept('^'))
      return base;
    const std::size_t at = pos_;
    Expr exponent = unary();
    long n = 0;
    if (!exponent.is_constant() || !exponent.value().is_integer(&n))
      throw ParseError("exponent must be an integer constant", at);
    return Expr::pow(base, n);
  }

  Expr primary() {
    skip_space();
    if (pos_ >= src_.size())
      throw ParseError("expected an operand but input ended", pos_);
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      Expr e = sum();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
      return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
      return name();
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  Expr number() {
    const std::size_t start = pos_;
    std::string digits;
    long frac_digits = 0;
    bool seen_point = false, any_digit = false;
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        digits += c;
        any_digit = true;
        if (seen_point)
          ++frac_digits;
      } else if (c == '.' && !seen_point) {
        seen_point = true;
      } else {
        break;
      }
      ++pos_;
    }
    if (!any_digit)
      throw ParseError("malformed number", start);
    long exp10 = 0;
    // An exponent marker only counts when digits follow; otherwise "2e" is 2 times e.
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      bool negative = false;
      if (p < src_.size() && (src_[p] == '+' || src_[p] == '-')) {
        negative = src_[p] == '-';
        ++p;
      }
      if (p < src_.size() && std::isdigit(static_cast<unsigned char>(src_[p]))) {
        std::string e;
        while (p < src_.size() && std::isdigit(static_cast<unsigned char>(src_[p])))
          e += src_[p++];
        if (e.size() > 6)
          throw ParseError("exponent of numeric literal out of range", pos_);
        exp10 = std::stol(e) * (negative ? -1 : 1);
        pos_ = p;
      }
    }
    mpq_class value(mpz_class(digits, 10));
    const long shift = exp10 - frac_digits;
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
    if (shift >= 0)
      value *= scale;
    else
      value /= scale;
    value.canonicalize();
    return Expr(GaussianRational(value));
  }

  Expr name() {
    const std::size_t start = pos_;
    std::string id;
    while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
      id += src_[pos_++];
    if (id == "t")
      return Expr::variable();
    if (id == "pi")
      return Expr::pi();
    if (id == "e")
      return Expr::euler();
    if (id == "i")
      return Expr::imaginary_unit();
    if (id == "exp" || id == "sin" || id == "cos") {
      expect('(');
      Expr arg = sum();
      expect(')');
      if (id == "exp")
        return Expr::exp(arg);
      if (id == "sin")
        return Expr::sin(arg);
      return Expr::cos(arg);
    }
    throw ParseError("unknown identifier '" + id + "'", start);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

} // namespace

Expr parse(std::string_view source) { return Parser(source).parse_all(); }

} // namespace tdnls
