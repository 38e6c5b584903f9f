#include "jetcheck/symmetry.hpp"

#include <algorithm>
#include <array>

#include "jetcheck/calculus.hpp"
#include "jetcheck/error.hpp"
#include "jetcheck/jet.hpp"
#include "jetcheck/normal_form.hpp"

namespace jetcheck {

bool VectorField::is_point_symmetry() const {
  for (const Expr* e : {&xi_t, &xi_x, &eta_u, &eta_v}) {
    if (jet_order(*e) > 0) return false;
  }
  return true;
}

VectorField operator+(const VectorField& a, const VectorField& b) {
  return {a.label + "+" + b.label, a.xi_t + b.xi_t, a.xi_x + b.xi_x, a.eta_u + b.eta_u, a.eta_v + b.eta_v};
}

VectorField VectorField::scaled(const Expr& k) const {
  return {label, k * xi_t, k * xi_x, k * eta_u, k * eta_v};
}

Expr ProlongedField::coefficient(const Symbol& jet) const {
  auto it = zeta_.find(jet);
  return it == zeta_.end() ? Expr() : it->second;
}

Expr ProlongedField::apply(const Expr& f) const {
  const auto& ind = ctx_.independents();
  const auto& dep = ctx_.dependents();
  std::vector<Expr> terms{
      base_.xi_t * partial(f, independent(ind[0])),
      base_.xi_x * partial(f, independent(ind[1])),
      base_.eta_u * partial(f, dependent(dep[0])),
      base_.eta_v * partial(f, dependent(dep[1])),
  };
  for (const auto& s : symbols_of(f)) {
    if (!s.is_jet() || s.order() == 0) continue;
    if (s.order() > order_) {
      throw Error("prolongation of order " + std::to_string(order_) + " cannot act on " + s.str());
    }
    if (s.name != dep[0] && s.name != dep[1]) continue;
    terms.push_back(coefficient(s) * partial(f, s));
  }
  return Expr::sum(std::move(terms));
}

ProlongedField prolong(const VectorField& X, int order, const Context& ctx) {
  if (order < 1 || order > 2) throw Error("prolongation order must be 1 or 2");
  if (ctx.independents().size() < 2 || ctx.dependents().size() < 2) {
    throw Error("prolongation needs two independent and two dependent variables");
  }
  const std::array<Symbol, 2> ind{independent(ctx.independents()[0]), independent(ctx.independents()[1])};
  const std::array<Expr, 2> xi{X.xi_t, X.xi_x};
  std::array<Expr, 2> dxi[2];
  for (int i = 0; i < 2; ++i) {
    for (int k = 0; k < 2; ++k) dxi[i][k] = simplify_if_possible(total_derivative(xi[k], ind[i], ctx));
  }

  std::map<Symbol, Expr> zeta;
  const std::array<Expr, 2> eta{X.eta_u, X.eta_v};
  for (int a = 0; a < 2; ++a) {
    const std::string& name = ctx.dependents()[a];
    std::vector<std::pair<Symbol, Expr>> frontier{{dependent(name), eta[a]}};
    for (int level = 1; level <= order; ++level) {
      std::vector<std::pair<Symbol, Expr>> next;
      for (const auto& [jet, z] : frontier) {
        for (int i = 0; i < 2; ++i) {
          const Symbol target = jet.differentiated(ind[i].name[0]);
          if (zeta.count(target)) continue;
          std::vector<Expr> terms{total_derivative(z, ind[i], ctx)};
          for (int k = 0; k < 2; ++k) {
            if (dxi[i][k].is_zero()) continue;
            terms.push_back(-(dxi[i][k] * sym(jet.differentiated(ind[k].name[0]))));
          }
          Expr value = simplify_if_possible(Expr::sum(std::move(terms)));
          zeta.emplace(target, value);
          next.emplace_back(target, value);
        }
      }
      frontier = std::move(next);
    }
  }
  return ProlongedField(X, order, ctx, std::move(zeta));
}

std::pair<Expr, Expr> symmetry_invariance(const VectorField& X, const PDESystem& sys) {
  const ProlongedField pr = prolong(X, 2, sys.context());
  return {on_shell_reduce(pr.apply(sys.equations()[0]), sys), on_shell_reduce(pr.apply(sys.equations()[1]), sys)};
}

std::pair<Expr, Expr> association_residual(const VectorField& X, const ConservedVector& T, const Context& ctx) {
  const int order = std::clamp(std::max(jet_order(T.density), jet_order(T.flux)), 1, 2);
  const ProlongedField pr = prolong(X, order, ctx);
  const Symbol t = independent(ctx.independents()[0]);
  const Symbol x = independent(ctx.independents()[1]);
  const Expr dt_xt = total_derivative(X.xi_t, t, ctx);
  const Expr dx_xt = total_derivative(X.xi_t, x, ctx);
  const Expr dt_xx = total_derivative(X.xi_x, t, ctx);
  const Expr dx_xx = total_derivative(X.xi_x, x, ctx);
  const Expr divergence = dt_xt + dx_xx;
  const Expr star_t = pr.apply(T.density) + T.density * divergence - (T.density * dt_xt + T.flux * dx_xt);
  const Expr star_x = pr.apply(T.flux) + T.flux * divergence - (T.density * dt_xx + T.flux * dx_xx);
  return {simplify(star_t), simplify(star_x)};
}

}  // namespace jetcheck
