#include <doctest.h>

#include <cmath>
#include <numbers>

#include "jetcheck/calculus.hpp"
#include "jetcheck/error.hpp"
#include "jetcheck/evaluate.hpp"
#include "jetcheck/jet.hpp"
#include "jetcheck/normal_form.hpp"
#include "jetcheck/system.hpp"
#include "support.hpp"

using namespace jetcheck;
using testing::nlse_context;
using testing::P;

namespace {

// Jets of u = sin(x + 2t) + x t^2 and v = cos(3x - t) * t, evaluated analytically.
NumericPoint analytic_jets(const Context& ctx, double t, double x) {
  NumericPoint pt{{independent("t"), t}, {independent("x"), x}};
  for (int a = 0; a <= 3; ++a) {
    for (int b = 0; a + b <= 3; ++b) {
      // a derivatives in t, b in x.
      const std::string suffix = std::string(static_cast<std::size_t>(a), 't') + std::string(static_cast<std::size_t>(b), 'x');
      const double ph = x + 2 * t;
      double u = std::pow(2.0, a) * std::sin(ph + (a + b) * std::numbers::pi / 2);
      if (a == 0 && b == 0) u += x * t * t;
      if (a == 1 && b == 0) u += 2 * x * t;
      if (a == 2 && b == 0) u += 2 * x;
      if (a == 0 && b == 1) u += t * t;
      if (a == 1 && b == 1) u += 2 * t;
      if (a == 2 && b == 1) u += 2;
      // v = t cos(th), th = 3x - t: d^a/dt^a d^b/dx^b
      const double th = 3 * x - t;
      auto c = [&](int k) { return std::cos(th + k * std::numbers::pi / 2); };
      const double xs = std::pow(3.0, b);
      const double sgn = (a % 2 == 0) ? 1.0 : -1.0;
      double v = t * xs * sgn * c(a + b);
      if (a >= 1) v += a * xs * ((a - 1) % 2 == 0 ? 1.0 : -1.0) * c(a - 1 + b);
      pt[ctx.jet("u", suffix)] = u;
      pt[ctx.jet("v", suffix)] = v;
    }
  }
  return pt;
}

}  // namespace

TEST_SUITE("jet") {

TEST_CASE("total derivative examples") {
  const Context ctx = nlse_context();
  CHECK(equivalent(total_derivative(P(ctx, "u^2"), "x", ctx), P(ctx, "2*u*u_x")));
  CHECK(equivalent(total_derivative(P(ctx, "(u^2 + v^2)/2"), "t", ctx), P(ctx, "u*u_t + v*v_t")));
  CHECK(equivalent(total_derivative(P(ctx, "u*v_x"), "x", ctx), P(ctx, "u_x*v_x + u*v_xx")));
  CHECK(equivalent(total_derivative(P(ctx, "x*t*u_t"), "x", ctx), P(ctx, "t*u_t + x*t*u_tx")));
  CHECK(total_derivative(P(ctx, "beta"), "x", ctx).is_zero());
  CHECK_THROWS_AS((void)total_derivative(P(ctx, "u_xxxx"), "t", ctx), JetOrderOverflowError);
}

TEST_CASE("total derivative agrees with calculus on concrete fields") {
  const Context ctx = nlse_context();
  const Expr e = P(ctx, "u^2*v_x + sin(u_t)*x - t*v*u_xx");
  const double t = 0.37, x = -1.1;
  const NumericPoint at = analytic_jets(ctx, t, x);
  // d/dx of e(u(x, t), ...) by a central difference of the composed function.
  const double h = 1e-5;
  const double fd = (eval_numeric(e, analytic_jets(ctx, t, x + h)) - eval_numeric(e, analytic_jets(ctx, t, x - h))) / (2 * h);
  CHECK(eval_numeric(total_derivative(e, "x", ctx), at) == doctest::Approx(fd).epsilon(1e-7));
  const double ft = (eval_numeric(e, analytic_jets(ctx, t + h, x)) - eval_numeric(e, analytic_jets(ctx, t - h, x))) / (2 * h);
  CHECK(eval_numeric(total_derivative(e, "t", ctx), at) == doctest::Approx(ft).epsilon(1e-7));
}

TEST_CASE("total derivatives commute") {
  const Context ctx = nlse_context();
  testing::ExprGen gen(ctx, 1001, 2);
  for (int i = 0; i < 100; ++i) {
    const Expr e = gen.general(2);
    const Expr tx = total_derivative(total_derivative(e, "x", ctx), "t", ctx);
    const Expr xt = total_derivative(total_derivative(e, "t", ctx), "x", ctx);
    CHECK(is_identically_zero(tx - xt));
  }
}

TEST_CASE("Leibniz rule") {
  const Context ctx = nlse_context();
  testing::ExprGen gen(ctx, 2002, 2);
  for (int i = 0; i < 100; ++i) {
    const Expr e = gen.general(2);
    const Expr f = gen.general(2);
    for (const char* d : {"x", "t"}) {
      const Expr lhs = total_derivative(e * f, d, ctx);
      const Expr rhs = total_derivative(e, d, ctx) * f + e * total_derivative(f, d, ctx);
      CHECK(is_identically_zero(lhs - rhs));
    }
  }
}

TEST_CASE("Euler operator examples") {
  const Context ctx = nlse_context();
  CHECK(equivalent(euler_operator(P(ctx, "u_x^2/2"), "u", ctx), P(ctx, "-u_xx")));
  CHECK(equivalent(euler_operator(P(ctx, "u*v_t"), "u", ctx), P(ctx, "v_t")));
  CHECK(equivalent(euler_operator(P(ctx, "u*v_t"), "v", ctx), P(ctx, "-u_t")));
  CHECK(equivalent(euler_operator(P(ctx, "u_xx^2/2"), "u", ctx), P(ctx, "u_xxxx")));
  CHECK(equivalent(euler_operator(P(ctx, "u_tx*v"), "v", ctx), P(ctx, "u_tx")));
  CHECK(equivalent(euler_operator(P(ctx, "u_tx*v"), "u", ctx), P(ctx, "v_tx")));
}

TEST_CASE("Euler operator annihilates divergences") {
  // Order-2 A, B give order-3 divergences; the Euler operator then needs order 6.
  const Context ctx = nlse_context(8);
  testing::ExprGen gen(ctx, 3003, 2);
  for (int i = 0; i < 50; ++i) {
    const Expr A = gen.polynomial(2, 3);
    const Expr B = gen.polynomial(2, 3);
    const Expr div = total_derivative(A, "t", ctx) + total_derivative(B, "x", ctx);
    CHECK(euler_operator(div, "u", ctx).is_zero());
    CHECK(euler_operator(div, "v", ctx).is_zero());
  }
}

TEST_CASE("Euler operator detects non-divergences") {
  const Context ctx = nlse_context();
  CHECK(!euler_operator(P(ctx, "u*u_x*v"), "u", ctx).is_zero());
}

TEST_CASE("on-shell reduction") {
  const Problem& prob = testing::shipped_problem();
  const PDESystem& sys = prob.system;
  const Context& ctx = sys.context();
  CHECK(on_shell_reduce(sys.equations()[0], sys).is_zero());
  CHECK(on_shell_reduce(sys.equations()[1], sys).is_zero());
  CHECK(equivalent(on_shell_reduce(P(ctx, "u_t + beta*u_x"), sys), P(ctx, "gamma*v_xx - delta*v*(u^2 + v^2)")));
  CHECK(on_shell_reduce(P(ctx, "u_x"), sys) == P(ctx, "u_x"));
  // u_tx is D_x of the law for u_t.
  const Expr law = sys.evolution().at(ctx.jet("u", "t"));
  CHECK(equivalent(on_shell_reduce(P(ctx, "u_tx"), sys), total_derivative(law, "x", ctx)));
  const Expr reduced_tt = on_shell_reduce(P(ctx, "v_tt"), sys);
  for (const auto& s : symbols_of(reduced_tt)) CHECK(s.order_in('t') == 0);
}

TEST_CASE("system validation") {
  const Context ctx = nlse_context();
  const Expr g1 = P(ctx, "u_t - v_xx");
  const Expr g2 = P(ctx, "v_t + u_xx");
  CHECK_NOTHROW(PDESystem(ctx, {g1, g2}, {{ctx.jet("u", "t"), P(ctx, "v_xx")}, {ctx.jet("v", "t"), P(ctx, "-u_xx")}}));
  CHECK_THROWS_AS(PDESystem(ctx, {g1, g2}, {{ctx.jet("u", "t"), P(ctx, "v_xx")}, {ctx.jet("v", "t"), P(ctx, "u_xx")}}),
                  ConfigError);
  CHECK_THROWS_AS(PDESystem(ctx, {g1, g2}, {{ctx.jet("u", "t"), P(ctx, "v_xx")}}), ConfigError);
  // Right-hand side carrying a time derivative.
  const Expr g1t = P(ctx, "u_t - v_xx - v_tx");
  CHECK_THROWS_AS(PDESystem(ctx, {g1t, g2}, {{ctx.jet("u", "t"), P(ctx, "v_xx + v_tx")},
                                             {ctx.jet("v", "t"), P(ctx, "-u_xx")}}),
                  ConfigError);
}

}  // TEST_SUITE
