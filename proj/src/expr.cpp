#include "wplab/expr.hpp"

#include <cctype>
#include <charconv>
#include <string>

#include "wplab/error.hpp"

namespace wplab {

namespace {

class Parser {
 public:
  Parser(std::string_view text, int d) : text_(text), d_(d) {}

  Poly parse() {
    Poly p = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  Poly expr() {
    Poly acc = term();
    for (;;) {
      skip_ws();
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Poly term() {
    Poly acc = unary();
    for (;;) {
      skip_ws();
      if (accept('*')) {
        acc *= unary();
      } else if (accept('/')) {
        const Poly den = unary();
        if (den.degree() != 0) fail("divisor must be a non-zero constant");
        acc *= 1.0 / den.coeff(MultiIndex::zero(d_));
      } else if (starts_atom()) {
        acc *= unary();
      } else {
        return acc;
      }
    }
  }

  Poly unary() {
    skip_ws();
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Poly power() {
    Poly base = atom();
    skip_ws();
    if (accept('^')) {
      skip_ws();
      const int k = integer();
      return base.pow(k);
    }
    return base;
  }

  Poly atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Poly inner = expr();
      skip_ws();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const double v = number();
      if (accept('i')) return Poly::constant(d_, Complex(0.0, v));
      return Poly::constant(d_, v);
    }
    if (c == 'i') {
      ++pos_;
      return Poly::constant(d_, Complex(0.0, 1.0));
    }
    if (c == 'z') {
      ++pos_;
      int var = 1;
      if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) var = integer();
      if (var < 1 || var > d_) fail("variable z" + std::to_string(var) + " out of range for d=" + std::to_string(d_));
      return Poly::variable(d_, var - 1);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  bool starts_atom() const {
    if (pos_ >= text_.size()) return false;
    const char c = text_[pos_];
    return c == '(' || c == 'z' || c == 'i' || c == '.' || std::isdigit(static_cast<unsigned char>(c));
  }

  double number() {
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc()) fail("malformed number");
    pos_ += static_cast<std::size_t>(ptr - begin);
    return v;
  }

  int integer() {
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    int v = 0;
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || v < 0) fail("expected a non-negative integer");
    pos_ += static_cast<std::size_t>(ptr - begin);
    return v;
  }

  bool accept(char c) {
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw InvalidArgument("polynomial parse error at offset " + std::to_string(pos_) + ": " + msg);
  }

  std::string_view text_;
  int d_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(std::string_view text, int d) {
  if (d < 1) throw InvalidArgument("polynomial dimension must be positive");
  return Parser(text, d).parse();
}

}  // namespace wplab
