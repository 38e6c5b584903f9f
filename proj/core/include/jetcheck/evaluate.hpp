#pragma once

#include <map>
#include <span>
#include <vector>

#include "jetcheck/expr.hpp"

namespace jetcheck {

using NumericPoint = std::map<Symbol, double>;

/// IEEE double evaluation. Throws EvalError on an unbound symbol, sqrt of a
/// negative number, division by zero or a non-finite result.
[[nodiscard]] double eval_numeric(const Expr& e, const NumericPoint& point);

/// An expression flattened against a fixed list of slot symbols, for
/// evaluating the same expression at many points. Results are not checked
/// for finiteness.
class CompiledExpr {
 public:
  /// Throws EvalError if `e` uses a symbol that has no slot.
  CompiledExpr(const Expr& e, const std::vector<Symbol>& slots);

  [[nodiscard]] double operator()(std::span<const double> values) const { return eval(root_, values); }

 private:
  struct Node {
    Expr::Kind kind;
    double value = 0.0;
    int slot = -1;
    Fn fn = Fn::Sin;
    long exponent = 0;
    std::vector<int> children;
  };
  int build(const Expr& e, const std::vector<Symbol>& slots);
  [[nodiscard]] double eval(int node, std::span<const double> values) const;

  std::vector<Node> nodes_;
  int root_ = 0;
};

}  // namespace jetcheck
