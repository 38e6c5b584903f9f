#pragma once

#include <string_view>

#include "jetcheck/expr.hpp"
#include "jetcheck/symbol.hpp"

namespace jetcheck {

/// D_wrt e = de/dwrt + sum over jet symbols g of (de/dg) * g_wrt.
/// Throws JetOrderOverflowError if a produced jet variable exceeds the
/// context maximum.
[[nodiscard]] Expr total_derivative(const Expr& e, const Symbol& wrt, const Context& ctx);
[[nodiscard]] Expr total_derivative(const Expr& e, std::string_view wrt, const Context& ctx);

/// Applies D for every letter of `letters` in turn (e.g. "xx", "tx").
[[nodiscard]] Expr total_derivative_multi(const Expr& e, std::string_view letters, const Context& ctx);

/// Variational derivative of `e` with respect to the dependent variable
/// `dep`: sum over multi-indices J of (-D)_J (de/d dep_J). The result is
/// simplified when it is normalizable.
[[nodiscard]] Expr euler_operator(const Expr& e, std::string_view dep, const Context& ctx);

}  // namespace jetcheck
