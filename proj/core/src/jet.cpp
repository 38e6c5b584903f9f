#include "jetcheck/jet.hpp"

#include "jetcheck/calculus.hpp"
#include "jetcheck/error.hpp"
#include "jetcheck/normal_form.hpp"

namespace jetcheck {

Expr total_derivative(const Expr& e, const Symbol& wrt, const Context& ctx) {
  if (wrt.kind != SymbolKind::Independent || wrt.name.size() != 1) {
    throw Error("total derivative requires an independent variable, got " + wrt.str());
  }
  const char letter = wrt.name[0];
  std::vector<Expr> terms;
  terms.push_back(partial(e, wrt));
  for (const auto& g : symbols_of(e)) {
    if (!g.is_jet()) continue;
    if (g.order() + 1 > ctx.max_order()) {
      throw JetOrderOverflowError("total derivative D_" + wrt.name + " of " + g.str() +
                                  " exceeds jet order " + std::to_string(ctx.max_order()));
    }
    terms.push_back(partial(e, g) * sym(g.differentiated(letter)));
  }
  return Expr::sum(std::move(terms));
}

Expr total_derivative(const Expr& e, std::string_view wrt, const Context& ctx) {
  if (ctx.kind_of(wrt) != SymbolKind::Independent) {
    throw Error("not an independent variable: " + std::string(wrt));
  }
  return total_derivative(e, independent(std::string(wrt)), ctx);
}

Expr total_derivative_multi(const Expr& e, std::string_view letters, const Context& ctx) {
  Expr out = e;
  for (char c : letters) out = simplify_if_possible(total_derivative(out, independent(std::string(1, c)), ctx));
  return out;
}

Expr euler_operator(const Expr& e, std::string_view dep, const Context& ctx) {
  if (ctx.kind_of(dep) != SymbolKind::Dependent) {
    throw Error("Euler operator requires a dependent variable, got " + std::string(dep));
  }
  std::vector<Expr> terms;
  for (const auto& g : symbols_of(e)) {
    if (!g.is_jet() || g.name != dep) continue;
    Expr coeff = simplify_if_possible(partial(e, g));
    if (coeff.is_zero()) continue;
    coeff = total_derivative_multi(coeff, g.derivs, ctx);
    terms.push_back(g.order() % 2 == 0 ? coeff : -coeff);
  }
  return simplify_if_possible(Expr::sum(std::move(terms)));
}

}  // namespace jetcheck
