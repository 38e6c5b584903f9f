#include "jetcheck/conservation.hpp"

#include "jetcheck/jet.hpp"
#include "jetcheck/normal_form.hpp"

namespace jetcheck {

namespace {

Expr characteristic_form(const MultiplierPair& m, const PDESystem& sys) {
  return m.q1 * sys.equations()[0] + m.q2 * sys.equations()[1];
}

}  // namespace

std::pair<Expr, Expr> multiplier_condition(const MultiplierPair& m, const PDESystem& sys) {
  const Expr form = simplify(characteristic_form(m, sys));
  const auto& deps = sys.context().dependents();
  return {simplify(euler_operator(form, deps[0], sys.context())),
          simplify(euler_operator(form, deps[1], sys.context()))};
}

Expr divergence_match(const ConservedVector& T, const MultiplierPair& m, const PDESystem& sys) {
  const auto& ctx = sys.context();
  const Expr div = total_derivative(T.density, sys.time(), ctx) + total_derivative(T.flux, sys.space(), ctx);
  return simplify(div - characteristic_form(m, sys));
}

}  // namespace jetcheck
