#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jetcheck/expr.hpp"
#include "jetcheck/rational.hpp"

namespace jetcheck {

/// A closed-form candidate (u(x, t), v(x, t)) valid under parameter
/// constraints such as c = 0, gamma = 0.
struct SolutionCandidate {
  std::string label;
  std::map<std::string, Rational> constraints;
  Expr u_expr;
  Expr v_expr;
  /// Rendering of u + i v, e.g. "sqrt(eps)*exp(i*(c1 + delta*eps*x/beta))".
  std::string q_form;
  /// The reduced phase p(r, s) the candidate was built from, when known.
  std::optional<Expr> phase;
  /// Quarter turns added to the phase (p = phase + quarter_turns * pi/2).
  int quarter_turns = 0;
  /// Candidates whose reduced phase depends on s are loaded as printed but
  /// not adjudicated.
  bool suspect = false;
};

/// "c=0, gamma=0" style rendering, sorted by name.
[[nodiscard]] std::string render_constraints(const std::map<std::string, Rational>& constraints);

}  // namespace jetcheck
