#pragma once

#include <compare>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "jetcheck/rational.hpp"
#include "jetcheck/symbol.hpp"

namespace jetcheck {

enum class Fn { Sin, Cos, Sqrt, Arctan };

[[nodiscard]] std::string_view fn_name(Fn fn);

/// Immutable symbolic expression.
///
/// Nodes are shared and never mutated after construction, so copies are cheap
/// and expressions can be read from several threads. The factory functions
/// apply a fixed set of local simplifications (flattening, constant folding,
/// dropping additive zeros and multiplicative ones); parse and render rely on
/// the same rules so that parse(render(e)) == e.
class Expr {
 public:
  enum class Kind { Number, Symbol, Function, Power, Product, Sum };

  /// The zero expression.
  Expr();

  static Expr number(Rational value);
  static Expr number(long value) { return number(Rational(value)); }
  static Expr symbol(Symbol sym);
  static Expr sum(std::vector<Expr> terms);
  static Expr product(std::vector<Expr> factors);
  static Expr power(Expr base, long exponent);
  static Expr function(Fn fn, Expr argument);

  [[nodiscard]] Kind kind() const noexcept;
  [[nodiscard]] const Rational& value() const;
  [[nodiscard]] const Symbol& symbol() const;
  [[nodiscard]] std::span<const Expr> args() const noexcept;
  [[nodiscard]] const Expr& base() const;
  [[nodiscard]] long exponent() const;
  [[nodiscard]] Fn fn() const;
  [[nodiscard]] const Expr& argument() const;

  [[nodiscard]] bool is_number() const noexcept { return kind() == Kind::Number; }
  [[nodiscard]] bool is_zero() const noexcept;
  [[nodiscard]] bool is_one() const noexcept;
  [[nodiscard]] std::size_t size() const noexcept;

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a);
  Expr& operator+=(const Expr& b) { return *this = *this + b; }
  Expr& operator*=(const Expr& b) { return *this = *this * b; }

  /// Structural equality.
  friend bool operator==(const Expr& a, const Expr& b);
  friend std::strong_ordering operator<=>(const Expr& a, const Expr& b);

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

[[nodiscard]] Expr pow(const Expr& base, long exponent);
[[nodiscard]] Expr sin(const Expr& e);
[[nodiscard]] Expr cos(const Expr& e);
[[nodiscard]] Expr sqrt(const Expr& e);
[[nodiscard]] Expr arctan(const Expr& e);
[[nodiscard]] inline Expr num(long n, long d = 1) { return Expr::number(make_rational(n, d)); }
[[nodiscard]] inline Expr sym(const Symbol& s) { return Expr::symbol(s); }

/// Renders in the expression grammar accepted by `parse`.
[[nodiscard]] std::string render(const Expr& e);

[[nodiscard]] std::set<Symbol> symbols_of(const Expr& e);
[[nodiscard]] bool depends_on(const Expr& e, const Symbol& s);
/// Highest jet order among the dependent-variable symbols of `e` (0 if none).
[[nodiscard]] int jet_order(const Expr& e);

}  // namespace jetcheck
