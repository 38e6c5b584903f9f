#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "jetcheck/calculus.hpp"
#include "jetcheck/error.hpp"
#include "jetcheck/evaluate.hpp"
#include "jetcheck/jet.hpp"
#include "jetcheck/normal_form.hpp"
#include "jetcheck/reduction.hpp"
#include "support.hpp"

using namespace jetcheck;
using testing::P;

namespace {

const Context& base() { return testing::shipped_problem().context; }
const PDESystem& sys() { return testing::shipped_problem().system; }

const CanonicalTransform& symbolic_c() {
  static const CanonicalTransform tr = build_canonical_transform(base(), P(base(), "c"));
  return tr;
}

const SolutionCandidate& shipped(const std::string& label) {
  for (const auto& c : testing::shipped_problem().candidates) {
    if (c.label == label) return c;
  }
  throw std::runtime_error("no candidate " + label);
}

Expr frame_expr(const CanonicalTransform& tr, const char* text) { return parse(text, tr.frame.merged(base())); }

std::map<std::string, double> params(double beta, double gamma, double delta, double c, double eps, double c1) {
  return {{"beta", beta}, {"gamma", gamma}, {"delta", delta}, {"c", c}, {"eps", eps}, {"c1", c1}};
}

}  // namespace

TEST_SUITE("reduction") {

TEST_CASE("transform at c = 0") {
  const CanonicalTransform tr = build_canonical_transform(base(), num(0));
  CHECK(tr.J.is_one());
  CHECK(tr.derivative_table.at(dependent("u", "t")).is_zero());
  CHECK(tr.derivative_table.at(dependent("v", "t")).is_zero());
  CHECK(tr.A[0][0].is_one());
  CHECK(tr.A[0][1].is_zero());
  CHECK(tr.A[1][0].is_zero());
  CHECK(tr.A[1][1].is_one());
}

TEST_CASE("transform with symbolic c") {
  const auto& tr = symbolic_c();
  CHECK(tr.J.is_one());
  CHECK(equivalent(tr.derivative_table.at(dependent("u", "t")), frame_expr(tr, "-c*w*sin(p + c*s)")));
  CHECK(tr.invariants.size() == 7);
}

TEST_CASE("forward then inverse reproduces the point") {
  const auto& tr = symbolic_c();
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  for (int i = 0; i < 50; ++i) {
    const double c = d(rng), t = d(rng), x = d(rng), u = d(rng), v = d(rng);
    const auto [r, s, w, p] = forward_point(c, t, x, u, v);
    CHECK(w >= 0.0);
    CHECK(r == x);
    CHECK(s == t);
    NumericPoint pt{{independent("s"), s}, {independent("r"), r}, {dependent("w"), w}, {dependent("p"), p},
                    {parameter("c"), c}};
    CHECK(std::abs(eval_numeric(tr.inverse.at(dependent("u")), pt) - u) < 1e-12);
    CHECK(std::abs(eval_numeric(tr.inverse.at(dependent("v")), pt) - v) < 1e-12);
  }
}

TEST_CASE("derivative table against finite differences") {
  const auto& tr = symbolic_c();
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  // w(r) = 1.5 + a1 sin(r) + a2 cos(2r), p(r) = b1 sin(r) + b2 r
  const double a1 = 0.4 * d(rng), a2 = 0.3 * d(rng), b1 = d(rng), b2 = d(rng), c = d(rng);
  auto w = [&](double r) { return 1.5 + a1 * std::sin(r) + a2 * std::cos(2 * r); };
  auto wr = [&](double r) { return a1 * std::cos(r) - 2 * a2 * std::sin(2 * r); };
  auto wrr = [&](double r) { return -a1 * std::sin(r) - 4 * a2 * std::cos(2 * r); };
  auto p = [&](double r) { return b1 * std::sin(r) + b2 * r; };
  auto pr = [&](double r) { return b1 * std::cos(r) + b2; };
  auto prr = [&](double r) { return -b1 * std::sin(r); };
  auto u = [&](double x, double t) { return w(x) * std::cos(p(x) + c * t); };
  auto v = [&](double x, double t) { return w(x) * std::sin(p(x) + c * t); };

  const double h = 1e-5;
  for (int i = 0; i < 20; ++i) {
    const double x = 3 * d(rng), t = d(rng);
    NumericPoint pt{{independent("s"), t},        {independent("r"), x},       {dependent("w"), w(x)},
                    {dependent("p"), p(x)},       {dependent("w", "r"), wr(x)}, {dependent("w", "rr"), wrr(x)},
                    {dependent("p", "r"), pr(x)}, {dependent("p", "rr"), prr(x)}, {parameter("c"), c}};
    auto table = [&](const char* dep, const char* d) { return eval_numeric(tr.derivative_table.at(dependent(dep, d)), pt); };
    auto rel = [](double got, double want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); };
    CHECK(rel(table("u", "x"), (u(x + h, t) - u(x - h, t)) / (2 * h)) < 1e-6);
    CHECK(rel(table("v", "x"), (v(x + h, t) - v(x - h, t)) / (2 * h)) < 1e-6);
    CHECK(rel(table("u", "t"), (u(x, t + h) - u(x, t - h)) / (2 * h)) < 1e-6);
    CHECK(rel(table("v", "t"), (v(x, t + h) - v(x, t - h)) / (2 * h)) < 1e-6);
    const double hh = 1e-4;
    CHECK(rel(table("u", "xx"), (u(x + hh, t) - 2 * u(x, t) + u(x - hh, t)) / (hh * hh)) < 1e-6);
    CHECK(rel(table("v", "xx"), (v(x + hh, t) - 2 * v(x, t) + v(x - hh, t)) / (hh * hh)) < 1e-6);
  }
}

TEST_CASE("derivative table agrees with the chain rule") {
  const auto& tr = symbolic_c();
  const Bindings chain = chain_rule_derivative_table(tr);
  REQUIRE(chain.size() == 6);
  for (const auto& [jet, e] : chain) {
    INFO(jet.str());
    CHECK(equivalent(e, tr.derivative_table.at(jet)));
  }
}

TEST_CASE("invariants are annihilated by the generator") {
  const auto& tr = symbolic_c();
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> d(0.2, 1.5);
  for (const auto& [name, e] : generator_on_invariants(tr)) {
    INFO(name);
    for (int i = 0; i < 10; ++i) {
      NumericPoint pt;
      for (const auto& s : symbols_of(e)) pt[s] = d(rng);
      CHECK(std::abs(eval_numeric(e, pt)) < 1e-12);
    }
  }
}

TEST_CASE("reduced mass law") {
  const auto& tr = symbolic_c();
  const Problem& prob = testing::shipped_problem();
  const auto [Ts, Tr] = transform_conserved(prob.conserved[1], tr);
  CHECK(equivalent(Ts, frame_expr(tr, "w^2/2")));
  // Independent derivation: (beta/2 - gamma p_r) w^2.
  CHECK(equivalent(Tr, frame_expr(tr, "beta*w^2/2 - gamma*p_r*w^2")));
  CHECK(!equivalent(Tr, printed_reduced_flux(tr)));

  const auto [z1, z2] = transform_conserved({"zero", num(0), num(0)}, tr);
  CHECK(z1.is_zero());
  CHECK(z2.is_zero());
  CHECK_THROWS((void)transform_conserved(prob.conserved[2], tr));
}

TEST_CASE("reduced equation matches the printed form term for term") {
  const auto& tr = symbolic_c();
  const Expr r = reduced_ode(sys(), tr).residual;
  CHECK(is_identically_zero(r - printed_reduced_ode(tr)));
  CHECK(equivalent(r, factored_reduced_ode(tr)));
}

TEST_CASE("case 1 factorization") {
  const auto& tr = symbolic_c();
  const Expr r = substitute(reduced_ode(sys(), tr).residual, {{parameter("c"), num(0)}, {parameter("gamma"), num(0)}});
  CHECK(equivalent(r, frame_expr(tr, "eps*sin(2*p)*(delta*eps - beta*p_r)")));
  const Expr z = substitute(r, {{dependent("p"), num(0)}, {dependent("p", "r"), num(0)}, {parameter("delta"), num(0)}});
  CHECK(is_identically_zero(z));
}

TEST_CASE("case solutions") {
  const auto& tr = symbolic_c();
  const auto c1 = case_solutions(1, tr);
  REQUIRE(c1.size() == 4);
  CHECK(equivalent(*c1[3].phase, frame_expr(tr, "r*delta*eps/beta + c1")));
  CHECK(c1[0].q_form == "sqrt(eps)");
  CHECK(c1[1].q_form == "-i*sqrt(eps)");
  CHECK(c1[2].q_form == "i*sqrt(eps)");
  const auto c2 = case_solutions(2, tr);
  CHECK(c2[3].q_form == "sqrt(eps)*exp(i*(c1))");
  const auto c3 = case_solutions(3, tr);
  CHECK(c3[0].suspect);
  CHECK(!c3[3].suspect);
  CHECK(equivalent(*c3[3].phase, frame_expr(tr, "-c*r/beta + c1")));
  CHECK_THROWS_AS((void)case_solutions(4, tr), Error);
}

TEST_CASE("engine candidates agree with the shipped file") {
  const auto& tr = symbolic_c();
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> d(0.1, 2.0);
  for (int id = 1; id <= 3; ++id) {
    for (const auto& cand : case_solutions(id, tr)) {
      INFO(cand.label);
      const auto& ref = shipped(cand.label);
      CHECK(cand.constraints == ref.constraints);
      CHECK(cand.suspect == ref.suspect);
      for (int i = 0; i < 10; ++i) {
        NumericPoint pt;
        for (const auto& n : base().parameters()) pt[parameter(n)] = d(rng);
        pt[independent("x")] = d(rng);
        pt[independent("t")] = d(rng);
        for (const auto& [n, v] : cand.constraints) pt[parameter(n)] = v.get_d();
        CHECK(std::abs(eval_numeric(cand.u_expr, pt) - eval_numeric(ref.u_expr, pt)) < 1e-13);
        CHECK(std::abs(eval_numeric(cand.v_expr, pt) - eval_numeric(ref.v_expr, pt)) < 1e-13);
      }
    }
  }
}

TEST_CASE("classification examples") {
  const Classification lin = classify(shipped("case1-linear"), params(1, 0, 1, 0, 0.25, 0.3), sys());
  CHECK(lin.verdict == Verdict::Exact);
  CHECK(lin.max_g1 < 1e-10);
  CHECK(lin.max_g2 < 1e-10);

  const double eps = 0.7, delta = 1.0;
  const Classification p0 = classify(shipped("case1-p0"), params(1, 0, delta, 0, eps, 0.3), sys());
  CHECK(p0.verdict == Verdict::ReducedOnly);
  CHECK(std::abs(p0.max_g2 - delta * std::pow(eps, 1.5)) / (delta * std::pow(eps, 1.5)) < 1e-8);
  CHECK(p0.max_reduced < 1e-10);

  const Classification c3 = classify(shipped("case3-linear"), params(2, 0, 0, 1, 1, 0.3), sys());
  CHECK(c3.verdict == Verdict::Exact);
  CHECK(c3.adjudicated);

  const Classification s = classify(shipped("case3-s0"), params(2, 0, 0, 1, 1, 0.3), sys());
  CHECK(!s.adjudicated);
}

TEST_CASE("constraint violations") {
  CHECK_THROWS_AS((void)classify(shipped("case1-linear"), params(1, 0.5, 1, 0, 0.25, 0.3), sys()),
                  ConstraintViolationError);
  CHECK_THROWS_AS((void)classify(shipped("case1-linear"), params(1, 0, 1, 0, -1, 0.3), sys()),
                  ConstraintViolationError);
}

TEST_CASE("Exact exactly when both factor equations hold") {
  // -c - beta p_r + gamma p_r^2 + delta eps = 0 and gamma p_rr = 0, evaluated for each candidate.
  const auto& tr = symbolic_c();
  const Expr a = frame_expr(tr, "-c - beta*p_r + gamma*p_r^2 + delta*eps");
  const Expr b = frame_expr(tr, "gamma*p_rr");
  std::mt19937_64 rng(99);
  for (int id = 1; id <= 3; ++id) {
    for (const auto& cand : case_solutions(id, tr)) {
      if (cand.suspect) continue;
      for (int draw = 0; draw < 3; ++draw) {
        INFO(cand.label, " draw ", draw);
        const auto prm = admissible_draw(cand, base(), rng);
        Bindings pb;
        pb.emplace(dependent("p"), *cand.phase);
        pb.emplace(dependent("p", "r"), total_derivative(*cand.phase, "r", tr.frame));
        pb.emplace(dependent("p", "rr"), total_derivative_multi(*cand.phase, "rr", tr.frame));
        NumericPoint pt;
        for (const auto& [n, v] : prm) pt[parameter(n)] = v;
        pt[independent("r")] = 0.37;
        pt[independent("s")] = 0.61;
        const bool factors_hold = std::abs(eval_numeric(substitute(a, pb), pt)) < 1e-12 &&
                                  std::abs(eval_numeric(substitute(b, pb), pt)) < 1e-12;
        const Classification cl = classify(cand, prm, sys());
        CHECK((cl.verdict == Verdict::Exact) == factors_hold);
      }
    }
  }
}

TEST_CASE("Exact candidates stay exact across draws") {
  std::mt19937_64 rng(1729);
  for (const char* label : {"case1-linear", "case3-linear"}) {
    const auto& cand = shipped(label);
    for (int draw = 0; draw < 3; ++draw) {
      const auto prm = admissible_draw(cand, base(), rng);
      const Classification cl = classify(cand, prm, sys());
      INFO(label, " draw ", draw);
      CHECK(cl.verdict == Verdict::Exact);
      CHECK(std::max(cl.max_g1, cl.max_g2) < 1e-10);
    }
  }
}

TEST_CASE("halton points") {
  CHECK(halton_point(1)[0] == 0.5);
  CHECK(halton_point(1)[1] == doctest::Approx(1.0 / 3.0));
  CHECK(halton_point(2)[0] == 0.25);
  CHECK(halton_point(2)[1] == doctest::Approx(2.0 / 3.0));
  CHECK(halton_point(3)[0] == 0.75);
  CHECK(halton_point(3)[1] == doctest::Approx(1.0 / 9.0));
}

}  // TEST_SUITE
