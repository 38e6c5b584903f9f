#pragma once

#include <string>
#include <utility>

#include "jetcheck/expr.hpp"
#include "jetcheck/system.hpp"

namespace jetcheck {

/// Multipliers (q1, q2) applied to the two equations of a system.
struct MultiplierPair {
  std::string label;
  Expr q1;
  Expr q2;
};

/// Conservation law (density, flux): D_t density + D_x flux = 0 on solutions.
struct ConservedVector {
  std::string label;
  Expr density;
  Expr flux;
};

/// (E_u(q1 G1 + q2 G2), E_v(q1 G1 + q2 G2)) in normal form. Both vanish
/// exactly when (q1, q2) is a conservation-law multiplier.
[[nodiscard]] std::pair<Expr, Expr> multiplier_condition(const MultiplierPair& m, const PDESystem& sys);

/// Normal form of D_t T^t + D_x T^x - q1 G1 - q2 G2, checked off shell.
[[nodiscard]] Expr divergence_match(const ConservedVector& T, const MultiplierPair& m, const PDESystem& sys);

}  // namespace jetcheck
