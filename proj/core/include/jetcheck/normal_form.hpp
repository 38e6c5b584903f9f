#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "jetcheck/expr.hpp"

namespace jetcheck {

/// Canonical polynomial (Laurent in atomic generators) over exact rationals.
///
/// Generators are symbols, trig atoms sin(B)/cos(B) with B itself in normal
/// form, and opaque reciprocals 1/(sum). Every sin(B)^k with k >= 2 is
/// rewritten through sin^2 = 1 - cos^2, so equal expressions modulo that
/// relation produce equal forms.
class PolyForm {
 public:
  /// Generators with nonzero exponents, sorted by generator order.
  using Monomial = std::vector<std::pair<Expr, int>>;

  struct MonomialLess {
    bool operator()(const Monomial& a, const Monomial& b) const;
  };
  using Terms = std::map<Monomial, Rational, MonomialLess>;

  PolyForm() = default;
  static PolyForm constant(const Rational& c);
  static PolyForm generator(const Expr& g, int exponent = 1);

  [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }
  [[nodiscard]] const Terms& terms() const noexcept { return terms_; }
  [[nodiscard]] std::size_t term_count() const noexcept { return terms_.size(); }
  /// The constant term, or nullopt if any non-constant monomial is present.
  [[nodiscard]] std::optional<Rational> as_constant() const;

  /// Adds c * m, merging with an existing monomial.
  void add(const Monomial& m, const Rational& c);
  PolyForm& operator+=(const PolyForm& o);
  PolyForm& operator-=(const PolyForm& o);
  friend PolyForm operator+(PolyForm a, const PolyForm& b) { return a += b; }
  friend PolyForm operator-(PolyForm a, const PolyForm& b) { return a -= b; }
  friend PolyForm operator*(const PolyForm& a, const PolyForm& b);
  [[nodiscard]] PolyForm scaled(const Rational& c) const;
  [[nodiscard]] PolyForm pow(unsigned long n) const;

  /// Applies sin(B)^2 -> 1 - cos(B)^2 until no sine atom has exponent >= 2.
  [[nodiscard]] PolyForm reduced_trig() const;

  /// Replaces generator^e by `replacement`^(e / 2) for even e; throws if an odd
  /// power of `g` remains. Used to eliminate w once w^2 = eps is imposed.
  [[nodiscard]] PolyForm with_even_powers_replaced(const Expr& g, const PolyForm& replacement) const;

  /// Re-expansion as an Expr; terms appear in descending monomial order.
  [[nodiscard]] Expr to_expr() const;

  friend bool operator==(const PolyForm& a, const PolyForm& b) { return a.terms_ == b.terms_; }

 private:
  void add_term(const Monomial& m, const Rational& c);
  Terms terms_;
};

/// Normal form of `e`. Throws UnsupportedNodeError on sqrt/arctan nodes and
/// on sin/cos applied to arguments that contain them.
[[nodiscard]] PolyForm normalize(const Expr& e);

/// normalize(e).to_expr().
[[nodiscard]] Expr simplify(const Expr& e);

/// simplify when `e` is normalizable, `e` unchanged otherwise.
[[nodiscard]] Expr simplify_if_possible(const Expr& e);

[[nodiscard]] inline bool is_identically_zero(const Expr& e) { return normalize(e).is_zero(); }

[[nodiscard]] inline bool equivalent(const Expr& a, const Expr& b) { return normalize(a - b).is_zero(); }

}  // namespace jetcheck
