#include "bscycles/parse.hpp"

#include "bscycles/weyl.hpp"

#include <cctype>

namespace bscycles {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  MultiPoly run() {
    scan_variables();
    MultiPoly p = expr();
    skip();
    if (pos_ != src_.size()) throw ParseError("unexpected '" + std::string(1, src_[pos_]) + "'", pos_);
    return p;
  }

 private:
  // Arity is fixed before parsing so every subexpression shares it.
  void scan_variables() {
    bool t = false, xyz = false;
    for (std::size_t i = 0; i < src_.size(); ++i) {
      const char c = src_[i];
      if (c == 't') t = true;
      if (c == 'x' || c == 'y' || c == 'z') xyz = true;
      if (c == 'y') arity_ = std::max<std::size_t>(arity_, 2);
      if (c == 'z') arity_ = std::max<std::size_t>(arity_, 3);
      if (t && xyz) throw ParseError("t cannot be mixed with x, y, z", i);
    }
  }

  void skip() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  MultiPoly expr() {
    MultiPoly acc = term();
    for (;;) {
      if (accept('+')) acc += term();
      else if (accept('-')) acc -= term();
      else return acc;
    }
  }

  MultiPoly term() {
    MultiPoly acc = unary();
    while (accept('*')) acc = acc * unary();
    return acc;
  }

  MultiPoly unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  MultiPoly power() {
    MultiPoly base = primary();
    if (accept('^')) {
      skip();
      const std::size_t at = pos_;
      const Integer e = integer();
      if (e > 64) throw ParseError("exponent too large", at);
      base = base.pow(e.convert_to<unsigned>());
    }
    return base;
  }

  Integer integer() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError(pos_ == src_.size() ? "unexpected end of input" : "expected integer", pos_);
    return Integer(std::string(src_.substr(start, pos_ - start)));
  }

  MultiPoly primary() {
    skip();
    if (pos_ >= src_.size()) throw ParseError("unexpected end of input", pos_);
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      MultiPoly inner = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Rational v(integer());
      skip();
      // "p/q" literal: a slash directly followed by digits.
      if (pos_ < src_.size() && src_[pos_] == '/') {
        ++pos_;
        const std::size_t at = pos_;
        const Integer d = integer();
        if (d == 0) throw ParseError("division by zero", at);
        v /= Rational(d);
      }
      return MultiPoly::constant(arity_, v);
    }
    std::size_t index;
    switch (c) {
      case 'x': case 't': index = 0; break;
      case 'y': index = 1; break;
      case 'z': index = 2; break;
      default: throw ParseError("unexpected '" + std::string(1, c) + "'", pos_);
    }
    ++pos_;
    return MultiPoly::variable(arity_, index);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t arity_ = 1;
};

}  // namespace

MultiPoly parse_poly(std::string_view src) { return Parser(src).run(); }

std::string format_poly(const MultiPoly& f) {
  return f.to_string(default_variable_names(f.arity()));
}

}  // namespace bscycles
