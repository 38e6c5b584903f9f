#pragma once

#include <map>
#include <string>
#include <utility>

#include "jetcheck/conservation.hpp"
#include "jetcheck/expr.hpp"
#include "jetcheck/system.hpp"

namespace jetcheck {

/// X = xi_t d/dt + xi_x d/dx + eta_u d/du + eta_v d/dv.
struct VectorField {
  std::string label;
  Expr xi_t;
  Expr xi_x;
  Expr eta_u;
  Expr eta_v;

  /// True when no coefficient involves a derivative of u or v.
  [[nodiscard]] bool is_point_symmetry() const;

  friend VectorField operator+(const VectorField& a, const VectorField& b);
  [[nodiscard]] VectorField scaled(const Expr& k) const;
};

/// A vector field extended to jet coordinates up to `order`.
class ProlongedField {
 public:
  ProlongedField(VectorField base, int order, Context ctx, std::map<Symbol, Expr> zeta)
      : base_(std::move(base)), order_(order), ctx_(std::move(ctx)), zeta_(std::move(zeta)) {}

  [[nodiscard]] const VectorField& base() const noexcept { return base_; }
  [[nodiscard]] int order() const noexcept { return order_; }
  [[nodiscard]] const std::map<Symbol, Expr>& zeta() const noexcept { return zeta_; }
  /// Coefficient of d/d(jet); zero when absent.
  [[nodiscard]] Expr coefficient(const Symbol& jet) const;

  /// pr X (f). Throws if f involves jets above the prolongation order.
  [[nodiscard]] Expr apply(const Expr& f) const;

 private:
  VectorField base_;
  int order_;
  Context ctx_;
  std::map<Symbol, Expr> zeta_;
};

/// zeta_{J,i} = D_i zeta_J - sum_k (D_i xi^k) dep_{J,k}, seeded with zeta = eta.
/// The context's first two independents are (t, x) and first two dependents
/// (u, v). Orders 1 and 2 are supported.
[[nodiscard]] ProlongedField prolong(const VectorField& X, int order, const Context& ctx);

/// (pr^2 X (G1), pr^2 X (G2)) reduced on shell.
[[nodiscard]] std::pair<Expr, Expr> symmetry_invariance(const VectorField& X, const PDESystem& sys);

/// Association residual (T*^t, T*^x):
///   T*^i = pr X (T^i) + T^i (D_t xi_t + D_x xi_x) - (T^t D_t xi^i + T^x D_x xi^i),
/// normalized. Both zero means X is associated with T.
[[nodiscard]] std::pair<Expr, Expr> association_residual(const VectorField& X, const ConservedVector& T,
                                                         const Context& ctx);

}  // namespace jetcheck
