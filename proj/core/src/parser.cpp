#include "jetcheck/parser.hpp"

#include <cctype>
#include <string>

#include "jetcheck/error.hpp"

namespace jetcheck {
namespace {

class Parser {
 public:
  Parser(std::string_view text, const Context& ctx) : text_(text), ctx_(ctx) {}

  Expr parse_all() {
    skip_ws();
    if (at_end()) fail("empty expression");
    Expr e = parse_expr();
    skip_ws();
    if (!at_end()) fail(std::string("unexpected character '") + text_[pos_] + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }
  [[noreturn]] void fail_at(const std::string& msg, std::size_t at) const { throw ParseError(msg, at); }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  Expr parse_expr() {
    std::vector<Expr> terms{parse_term()};
    for (;;) {
      if (accept('+')) {
        terms.push_back(parse_term());
      } else if (accept('-')) {
        terms.push_back(-parse_term());
      } else {
        break;
      }
    }
    return terms.size() == 1 ? terms.front() : Expr::sum(std::move(terms));
  }

  Expr parse_term() {
    Expr acc = parse_unary();
    for (;;) {
      if (accept('*')) {
        acc = acc * parse_unary();
      } else if (accept('/')) {
        const std::size_t at = pos_;
        Expr d = parse_unary();
        if (d.is_zero()) fail_at("division by zero", at);
        acc = acc / d;
      } else {
        break;
      }
    }
    return acc;
  }

  Expr parse_unary() {
    if (accept('-')) return -parse_unary();
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_primary();
    if (!accept('^')) return base;
    skip_ws();
    const std::size_t at = pos_;
    bool paren = accept('(');
    bool negative = accept('-');
    skip_ws();
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("exponent must be an integer");
    const std::string digits = read_digits();
    if (paren) expect(')');
    if (digits.size() > 9) fail_at("exponent too large", at);
    long n = std::stol(digits);
    if (negative) n = -n;
    if (base.is_zero() && n < 0) fail_at("division by zero", at);
    return pow(base, n);
  }

  std::string read_digits() {
    const std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string read_word() {
    const std::size_t start = pos_;
    while (std::islower(static_cast<unsigned char>(peek())) || std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  Expr parse_primary() {
    skip_ws();
    const std::size_t start = pos_;
    const char c = peek();
    if (c == '(') {
      ++pos_;
      Expr e = parse_expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      return Expr::number(Rational(mpz_class(read_digits())));
    }
    if (!std::islower(static_cast<unsigned char>(c))) {
      if (at_end()) fail("unexpected end of expression");
      fail(std::string("unexpected character '") + c + "'");
    }
    const std::string name = read_word();
    if (peek() == '_') {
      ++pos_;
      const std::size_t sfx_start = pos_;
      const std::string sfx = read_word();
      if (sfx.empty()) fail("empty derivative suffix");
      auto kind = ctx_.kind_of(name);
      if (!kind) throw UnknownIdentifierError("unknown identifier '" + name + "'", start);
      if (*kind != SymbolKind::Dependent) {
        fail_at("derivative of non-dependent variable '" + name + "'", start);
      }
      for (std::size_t i = 0; i < sfx.size(); ++i) {
        if (!ctx_.is_independent_letter(sfx[i])) {
          throw UnknownIdentifierError(
              std::string("'") + sfx[i] + "' is not a declared independent variable", sfx_start + i);
        }
      }
      if (static_cast<int>(sfx.size()) > ctx_.max_order()) {
        fail_at("jet order exceeds maximum " + std::to_string(ctx_.max_order()), start);
      }
      return sym(dependent(name, sfx));
    }
    if (name == "sin" || name == "cos" || name == "sqrt" || name == "arctan") {
      skip_ws();
      if (peek() == '(') {
        ++pos_;
        Expr arg = parse_expr();
        expect(')');
        if (name == "sin") return sin(arg);
        if (name == "cos") return cos(arg);
        if (name == "sqrt") return sqrt(arg);
        return arctan(arg);
      }
      fail_at("function '" + name + "' requires an argument", start);
    }
    auto kind = ctx_.kind_of(name);
    if (!kind) throw UnknownIdentifierError("unknown identifier '" + name + "'", start);
    return sym(Symbol{*kind, name, {}});
  }

  std::string_view text_;
  const Context& ctx_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view text, const Context& ctx) { return Parser(text, ctx).parse_all(); }

}  // namespace jetcheck
