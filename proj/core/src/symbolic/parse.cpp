#include "nilshift/symbolic/parse.hpp"

#include <cctype>

#include "nilshift/symbolic/errors.hpp"

namespace nilshift {

namespace {

class Parser {
 public:
  Parser(std::string_view s, const RingPtr& ring) : s_(s), ring_(ring) {}

  RatFunc parse() {
    RatFunc r = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return r;
  }

 private:
  std::string_view s_;
  RingPtr ring_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " at position " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  RatFunc expr() {
    RatFunc r = term();
    while (true) {
      if (accept('+')) {
        r += term();
      } else if (accept('-')) {
        r -= term();
      } else {
        return r;
      }
    }
  }

  RatFunc term() {
    RatFunc r = unary();
    while (true) {
      if (accept('*')) {
        r *= unary();
      } else if (accept('/')) {
        RatFunc d = unary();
        if (d.is_zero()) fail("division by zero");
        r /= d;
      } else {
        return r;
      }
    }
  }

  RatFunc unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  RatFunc power() {
    RatFunc base = atom();
    if (!accept('^')) return base;
    skip();
    bool neg = false;
    if (accept('-')) neg = true;
    else if (accept('(')) {
      neg = accept('-');
      int e = integer();
      if (!accept(')')) fail("expected ')'");
      return base.pow(neg ? -e : e);
    }
    int e = integer();
    if (neg && base.is_zero()) fail("negative power of zero");
    return base.pow(neg ? -e : e);
  }

  int integer() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer exponent");
    return std::stoi(std::string(s_.substr(start, pos_ - start)));
  }

  RatFunc atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      RatFunc r = expr();
      if (!accept(')')) fail("expected ')'");
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return RatFunc(ring_, parse_rational(s_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
        ++pos_;
      }
      std::string name(s_.substr(start, pos_ - start));
      if (ring_->index(name) < 0) fail("unknown variable '" + name + "'");
      return RatFunc::variable(ring_, name);
    }
    fail("unexpected character");
  }
};

}  // namespace

RatFunc parse_ratfunc(std::string_view text, const RingPtr& ring) { return Parser(text, ring).parse(); }

Polynomial parse_polynomial(std::string_view text, const RingPtr& ring) {
  RatFunc r = parse_ratfunc(text, ring);
  if (!r.is_polynomial()) throw ParseError("expected a polynomial, got '" + r.to_string() + "'");
  return r.num();
}

}  // namespace nilshift
