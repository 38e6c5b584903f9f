#pragma once

#include <string>
#include <vector>

#include "jetcheck/calculus.hpp"
#include "jetcheck/expr.hpp"
#include "jetcheck/symbol.hpp"

namespace jetcheck {

/// A two-component evolution system in one space and one time variable.
///
/// The first declared independent is time and the second is space; each
/// dependent variable has an evolution law dep_t = F(dep, dep_x, ...).
/// Construction checks that every equation vanishes once the evolution laws
/// are substituted and that no right-hand side contains a time derivative.
class PDESystem {
 public:
  PDESystem(Context ctx, std::vector<Expr> equations, Bindings evolution);

  [[nodiscard]] const Context& context() const noexcept { return ctx_; }
  [[nodiscard]] const std::vector<Expr>& equations() const noexcept { return equations_; }
  [[nodiscard]] const Bindings& evolution() const noexcept { return evolution_; }

  [[nodiscard]] Symbol time() const { return independent(ctx_.independents()[0]); }
  [[nodiscard]] Symbol space() const { return independent(ctx_.independents()[1]); }
  [[nodiscard]] char time_letter() const { return ctx_.independents()[0][0]; }
  [[nodiscard]] char space_letter() const { return ctx_.independents()[1][0]; }
  [[nodiscard]] Symbol dep(std::size_t i) const { return dependent(ctx_.dependents().at(i)); }

 private:
  Context ctx_;
  std::vector<Expr> equations_;
  Bindings evolution_;
};

/// Rewrites every jet variable carrying a time derivative through the
/// evolution laws (and their total derivatives), then normalizes. Mixed
/// derivatives such as u_tx become D_x of the law for u_t.
[[nodiscard]] Expr on_shell_reduce(const Expr& e, const PDESystem& sys);

}  // namespace jetcheck
