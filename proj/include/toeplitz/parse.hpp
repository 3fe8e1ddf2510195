#ifndef TOEPLITZ_PARSE_HPP
#define TOEPLITZ_PARSE_HPP

#include <cctype>
#include <charconv>
#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "errors.hpp"
#include "poly.hpp"

// Expression grammar for rational symbols:
//
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := ('+'|'-') factor | base ('^' uint)? | coeff 'z' ('^' uint)?
//   base   := 'z' | number | 'i' | '(' expr ')'
//   number := decimal, optional exponent, optional imaginary suffix 'i'
//
// A numeric coefficient may sit directly in front of z ("3z^2" reads as
// 3*(z^2)); any other juxtaposition is a syntax error. A second input form
// is a coefficient list in ascending order, "[c0, c1, ...]" optionally
// followed by "/ [d0, d1, ...]", where each entry is a constant expression.

namespace toeplitz {

struct ExprNode {
  enum class Kind { Number, Variable, Negate, Add, Sub, Mul, Div, Pow };
  Kind kind = Kind::Number;
  cplx value{};
  unsigned exponent = 0;
  std::size_t position = 0;
  std::unique_ptr<ExprNode> lhs;
  std::unique_ptr<ExprNode> rhs;
};

using ExprPtr = std::unique_ptr<ExprNode>;

/// A rational function kept as an unreduced numerator/denominator pair.
struct PolyFraction {
  Polynomial num;
  Polynomial den;
};

namespace detail {

enum class Tok { Number, Z, I, Plus, Minus, Star, Slash, Caret, LParen, RParen, LBracket, RBracket, Comma, End };

struct Token {
  Tok kind;
  std::size_t pos;
  cplx value{};
  std::string_view text;
};

inline std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < src.size()) {
    const char ch = src[i];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    auto single = [&](Tok t) {
      out.push_back({t, start, {}, src.substr(start, 1)});
      ++i;
    };
    switch (ch) {
      case '+': single(Tok::Plus); continue;
      case '-': single(Tok::Minus); continue;
      case '*': single(Tok::Star); continue;
      case '/': single(Tok::Slash); continue;
      case '^': single(Tok::Caret); continue;
      case '(': single(Tok::LParen); continue;
      case ')': single(Tok::RParen); continue;
      case '[': single(Tok::LBracket); continue;
      case ']': single(Tok::RBracket); continue;
      case ',': single(Tok::Comma); continue;
      case 'z': case 'Z': single(Tok::Z); continue;
      case 'i': case 'I': single(Tok::I); continue;
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      if (j < src.size() && src[j] == '.') {
        ++j;
        while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      }
      if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
        if (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) {
          while (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) ++k;
          j = k;
        }
      }
      const std::string_view lit = src.substr(i, j - i);
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(lit.data(), lit.data() + lit.size(), v);
      if (ec != std::errc{} || ptr != lit.data() + lit.size()) throw SyntaxError("malformed number '" + std::string(lit) + "'", start);
      cplx value{v, 0.0};
      if (j < src.size() && (src[j] == 'i' || src[j] == 'I')) {
        value = cplx{0.0, v};
        ++j;
      }
      out.push_back({Tok::Number, start, value, src.substr(start, j - start)});
      i = j;
      continue;
    }
    throw SyntaxError(std::string("unexpected character '") + ch + "'", start);
  }
  out.push_back({Tok::End, src.size(), {}, {}});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(tokenize(src)) {}

  ExprPtr parse_full_expression() {
    ExprPtr e = expr();
    expect(Tok::End, "end of input");
    return e;
  }

  bool starts_with_list() const { return peek().kind == Tok::LBracket; }

  /// "[c0, c1, ...]" (optionally "/ [...]"): returns numerator and denominator entries.
  std::pair<std::vector<ExprPtr>, std::vector<ExprPtr>> parse_lists() {
    std::vector<ExprPtr> num = list();
    std::vector<ExprPtr> den;
    if (peek().kind == Tok::Slash) {
      advance();
      den = list();
    }
    expect(Tok::End, "end of input");
    return {std::move(num), std::move(den)};
  }

 private:
  const Token& peek() const { return toks_[idx_]; }
  const Token& advance() { return toks_[idx_++]; }

  void expect(Tok t, const char* what) {
    if (peek().kind != t) throw SyntaxError(std::string("expected ") + what, peek().pos);
    advance();
  }

  static ExprPtr make(ExprNode::Kind k, std::size_t pos, ExprPtr lhs = nullptr, ExprPtr rhs = nullptr) {
    auto n = std::make_unique<ExprNode>();
    n->kind = k;
    n->position = pos;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
  }

  std::vector<ExprPtr> list() {
    expect(Tok::LBracket, "'['");
    std::vector<ExprPtr> items;
    if (peek().kind == Tok::RBracket) throw SyntaxError("empty coefficient list", peek().pos);
    items.push_back(expr());
    while (peek().kind == Tok::Comma) {
      advance();
      items.push_back(expr());
    }
    expect(Tok::RBracket, "',' or ']'");
    return items;
  }

  ExprPtr expr() {
    ExprPtr lhs = term();
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      const Token& op = advance();
      ExprPtr rhs = term();
      lhs = make(op.kind == Tok::Plus ? ExprNode::Kind::Add : ExprNode::Kind::Sub, op.pos, std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  ExprPtr term() {
    ExprPtr lhs = factor();
    while (peek().kind == Tok::Star || peek().kind == Tok::Slash) {
      const Token& op = advance();
      ExprPtr rhs = factor();
      lhs = make(op.kind == Tok::Star ? ExprNode::Kind::Mul : ExprNode::Kind::Div, op.pos, std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  ExprPtr factor() {
    if (peek().kind == Tok::Minus || peek().kind == Tok::Plus) {
      const Token& op = advance();
      ExprPtr inner = factor();
      if (op.kind == Tok::Plus) return inner;
      return make(ExprNode::Kind::Negate, op.pos, std::move(inner));
    }
    const Tok first = peek().kind;
    ExprPtr b = power(base());
    if ((first == Tok::Number || first == Tok::I) && b->kind != ExprNode::Kind::Pow && peek().kind == Tok::Z) {
      const std::size_t pos = peek().pos;
      ExprPtr zpart = power(base());
      return make(ExprNode::Kind::Mul, pos, std::move(b), std::move(zpart));
    }
    return b;
  }

  ExprPtr power(ExprPtr b) {
    if (peek().kind != Tok::Caret) return b;
    const std::size_t pos = advance().pos;
    const Token& t = peek();
    if (t.kind != Tok::Number || t.text.find_first_not_of("0123456789") != std::string_view::npos)
      throw SyntaxError("exponent must be a non-negative integer", t.pos);
    unsigned e = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), e);
    if (ec != std::errc{} || e > 1000) throw SyntaxError("exponent out of range", t.pos);
    advance();
    ExprPtr n = make(ExprNode::Kind::Pow, pos, std::move(b));
    n->exponent = e;
    return n;
  }

  ExprPtr base() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Z: {
        advance();
        return make(ExprNode::Kind::Variable, t.pos);
      }
      case Tok::Number: {
        advance();
        ExprPtr n = make(ExprNode::Kind::Number, t.pos);
        n->value = t.value;
        return n;
      }
      case Tok::I: {
        advance();
        ExprPtr n = make(ExprNode::Kind::Number, t.pos);
        n->value = cplx{0.0, 1.0};
        return n;
      }
      case Tok::LParen: {
        advance();
        ExprPtr e = expr();
        expect(Tok::RParen, "')'");
        return e;
      }
      case Tok::End: throw SyntaxError("unexpected end of input", t.pos);
      default: throw SyntaxError("unexpected '" + std::string(t.text) + "'", t.pos);
    }
  }

  std::vector<Token> toks_;
  std::size_t idx_ = 0;
};

}  // namespace detail

inline ExprPtr parse_expression(std::string_view text) { return detail::Parser(text).parse_full_expression(); }

/// Direct numerical evaluation of the expression tree at z.
inline cplx evaluate_expression(const ExprNode& n, cplx z) {
  using K = ExprNode::Kind;
  switch (n.kind) {
    case K::Number: return n.value;
    case K::Variable: return z;
    case K::Negate: return -evaluate_expression(*n.lhs, z);
    case K::Add: return evaluate_expression(*n.lhs, z) + evaluate_expression(*n.rhs, z);
    case K::Sub: return evaluate_expression(*n.lhs, z) - evaluate_expression(*n.rhs, z);
    case K::Mul: return evaluate_expression(*n.lhs, z) * evaluate_expression(*n.rhs, z);
    case K::Div: return evaluate_expression(*n.lhs, z) / evaluate_expression(*n.rhs, z);
    case K::Pow: {
      const cplx b = evaluate_expression(*n.lhs, z);
      cplx r{1.0, 0.0};
      for (unsigned k = 0; k < n.exponent; ++k) r *= b;
      return r;
    }
  }
  return {};
}

/// Builds the unreduced fraction num/den of an expression tree.
inline PolyFraction to_fraction(const ExprNode& n) {
  using K = ExprNode::Kind;
  const Polynomial one = Polynomial::constant(1.0);
  switch (n.kind) {
    case K::Number: return {Polynomial::constant(n.value), one};
    case K::Variable: return {Polynomial::monomial(1), one};
    case K::Negate: {
      PolyFraction f = to_fraction(*n.lhs);
      return {scale(f.num, -1.0), f.den};
    }
    case K::Add:
    case K::Sub: {
      const PolyFraction a = to_fraction(*n.lhs);
      const PolyFraction b = to_fraction(*n.rhs);
      if (a.den == b.den) return {n.kind == K::Add ? a.num + b.num : a.num - b.num, a.den};
      const Polynomial l = a.num * b.den;
      const Polynomial r = b.num * a.den;
      return {n.kind == K::Add ? l + r : l - r, a.den * b.den};
    }
    case K::Mul: {
      const PolyFraction a = to_fraction(*n.lhs);
      const PolyFraction b = to_fraction(*n.rhs);
      return {a.num * b.num, a.den * b.den};
    }
    case K::Div: {
      const PolyFraction a = to_fraction(*n.lhs);
      const PolyFraction b = to_fraction(*n.rhs);
      return {a.num * b.den, a.den * b.num};
    }
    case K::Pow: {
      const PolyFraction a = to_fraction(*n.lhs);
      return {pow(a.num, n.exponent), pow(a.den, n.exponent)};
    }
  }
  return {};
}

/// A complex constant in the expression grammar, e.g. "-1+0.5i" or "2i/3".
inline cplx parse_complex(std::string_view text) {
  const ExprPtr e = parse_expression(text);
  const PolyFraction f = to_fraction(*e);
  if (f.num.degree() > 0 || f.den.degree() > 0) throw SyntaxError("expected a constant, found z", 0);
  if (f.den.is_zero()) throw SyntaxError("division by zero", 0);
  return f.num[0] / f.den[0];
}

/// Parses either input form into an unreduced fraction.
inline PolyFraction parse_fraction(std::string_view text) {
  detail::Parser parser(text);
  if (!parser.starts_with_list()) return to_fraction(*parser.parse_full_expression());

  auto [num, den] = parser.parse_lists();
  auto constants = [](const std::vector<ExprPtr>& items) {
    std::vector<cplx> out;
    for (const ExprPtr& e : items) {
      const PolyFraction f = to_fraction(*e);
      if (f.num.degree() > 0 || f.den.degree() != 0) throw SyntaxError("coefficient list entries must be constants", e->position);
      out.push_back(f.num[0] / f.den[0]);
    }
    return out;
  };
  PolyFraction out{Polynomial(constants(num)), Polynomial::constant(1.0)};
  if (!den.empty()) out.den = Polynomial(constants(den));
  return out;
}

}  // namespace toeplitz

#endif  // TOEPLITZ_PARSE_HPP
