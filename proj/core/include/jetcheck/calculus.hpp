#pragma once

#include <map>

#include "jetcheck/expr.hpp"

namespace jetcheck {

using Bindings = std::map<Symbol, Expr>;

/// Formal partial derivative: every symbol other than `g` is an independent
/// generator. Chain rule through sin, cos, sqrt and arctan.
[[nodiscard]] Expr partial(const Expr& e, const Symbol& g);

/// Simultaneous substitution of symbols; unbound symbols pass through.
/// Throws CyclicBindingError when the bindings reference each other in a
/// cycle (including a symbol bound to an expression containing itself).
[[nodiscard]] Expr substitute(const Expr& e, const Bindings& bindings);

}  // namespace jetcheck
