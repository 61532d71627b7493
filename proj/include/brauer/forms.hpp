#pragma once

// Text form of integral 2-forms:
//   form := ['-'] term (('+'|'-') term)* | '0'
//   term := [uint '*'] gen '^' gen,  gen := ('x'|'y') uint with subscript in 1..g
// Whitespace is ignored.  print_form writes the expanded form in colex order.

#include "brauer/exterior.hpp"

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

namespace brauer {

class ParseError : public Error {
public:
  ParseError(std::size_t position, const std::string &what)
      : Error("parse error at position " + std::to_string(position) + ": " + what), position_(position) {}
  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

struct FormTerm {
  int sign = 1;
  Integer coeff = 1;
  int left = 0; // generator position: x_i is 2(i-1), y_i is 2i-1
  int right = 0;
};

struct FormExpression {
  std::string source;
  std::vector<FormTerm> terms;
  MultiVector form;
};

namespace detail {

class FormParser {
public:
  FormParser(std::string_view text, int g) : text_(text), g_(g) {}

  std::vector<FormTerm> run() {
    std::vector<FormTerm> terms;
    skip();
    if (at_end()) throw ParseError(pos_, "empty form");
    if (peek() == '0') {
      std::size_t start = pos_;
      Integer v = number();
      skip();
      if (v == 0 && at_end()) return terms;
      pos_ = start;
    }
    int sign = 1;
    if (peek() == '-') {
      sign = -1;
      ++pos_;
    }
    for (;;) {
      FormTerm t = term();
      t.sign = sign;
      terms.push_back(std::move(t));
      skip();
      if (at_end()) break;
      char c = peek();
      if (c != '+' && c != '-') throw ParseError(pos_, std::string("expected '+' or '-', found '") + c + "'");
      sign = c == '+' ? 1 : -1;
      ++pos_;
    }
    return terms;
  }

private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  void skip() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  Integer number() {
    skip();
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) throw ParseError(start, "expected an unsigned integer");
    return Integer(std::string(text_.substr(start, pos_ - start)));
  }

  int generator() {
    skip();
    if (at_end()) throw ParseError(pos_, "expected a generator, found end of input");
    const std::size_t start = pos_;
    char c = peek();
    if (c != 'x' && c != 'y') throw ParseError(pos_, std::string("expected 'x' or 'y', found '") + c + "'");
    ++pos_;
    Integer i = number();
    if (i < 1 || i > g_) throw ParseError(start, "subscript " + i.get_str() + " out of range 1.." + std::to_string(g_));
    const int k = static_cast<int>(i.get_si());
    return c == 'x' ? 2 * (k - 1) : 2 * k - 1;
  }

  FormTerm term() {
    FormTerm t;
    skip();
    if (at_end()) throw ParseError(pos_, "expected a term, found end of input");
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      t.coeff = number();
      skip();
      if (at_end() || peek() != '*') throw ParseError(pos_, "expected '*' after coefficient");
      ++pos_;
    }
    t.left = generator();
    skip();
    if (at_end() || peek() != '^') throw ParseError(pos_, "expected '^'");
    ++pos_;
    t.right = generator();
    return t;
  }

  std::string_view text_;
  int g_;
  std::size_t pos_ = 0;
};

} // namespace detail

inline MultiVector expand(const Context &ctx, const std::vector<FormTerm> &terms) {
  MultiVector out(ctx);
  for (const auto &t : terms) {
    if (t.left == t.right) continue;
    const Mask a = Mask{1} << t.left, b = Mask{1} << t.right;
    Integer c = t.coeff * t.sign * wedge_sign(a, b);
    out += MultiVector::monomial(ctx, a | b, Rational(c));
  }
  return out;
}

inline FormExpression parse_form(std::string_view text, int g) {
  if (g < 1 || g > AlgebraContext::max_genus) throw Error("parse_form: genus out of range");
  FormExpression out;
  out.source = std::string(text);
  out.terms = detail::FormParser(text, g).run();
  out.form = expand(make_context(g), out.terms);
  return out;
}

inline FormExpression parse_form(std::string_view text, const Context &ctx) {
  FormExpression out;
  out.source = std::string(text);
  out.terms = detail::FormParser(text, ctx->genus()).run();
  out.form = expand(ctx, out.terms);
  return out;
}

inline std::string print_form(const MultiVector &b) {
  if (!b.is_homogeneous(2) || !is_integral(b)) throw Error("print_form: expected an integral 2-form");
  if (b.is_zero()) return "0";
  std::string s;
  for (const auto &t : b.terms()) {
    Integer c = t.coeff.get_num();
    if (s.empty()) s = c < 0 ? "-" : "";
    else s += c < 0 ? " - " : " + ";
    if (abs(c) != 1) s += Integer(abs(c)).get_str() + "*";
    s += basis_name(t.mask);
  }
  return s;
}

inline std::string print_form(const Context &ctx, const std::vector<std::int64_t> &coords) {
  return print_form(from_coordinates(ctx, 2, std::vector<Rational>(coords.begin(), coords.end())));
}

} // namespace brauer
