#include "jetcheck/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "jetcheck/error.hpp"
#include "jetcheck/evaluate.hpp"
#include "jetcheck/jet.hpp"
#include "jetcheck/normal_form.hpp"
#include "jetcheck/parser.hpp"

namespace jetcheck {

namespace {

Expr P(const char* name) { return sym(parameter(name)); }

// Frame symbols plus the original ones, so mixed expressions parse.
Context combined(const CanonicalTransform& tr, const Context& base) { return tr.frame.merged(base); }

// c -> value, or nothing when c stays symbolic.
Bindings c_binding(const Expr& c) {
  if (c == P("c")) return {};
  return {{parameter("c"), c}};
}

Expr parse_with_c(const char* text, const CanonicalTransform& tr) {
  return substitute(parse(text, tr.frame), c_binding(tr.c));
}

Bindings constraint_bindings(const std::map<std::string, Rational>& constraints) {
  Bindings b;
  for (const auto& [name, value] : constraints) b.emplace(parameter(name), Expr::number(value));
  return b;
}

// The ansatz keeps w and p functions of r alone.
Bindings s_derivatives_to_zero(const Context& frame) {
  Bindings b;
  for (const auto* dep : {"w", "p"}) {
    for (const auto* d : {"s", "rs", "ss"}) b.emplace(frame.jet(dep, d), Expr());
  }
  return b;
}

}  // namespace

CanonicalTransform build_canonical_transform(const Context& base, const Expr& c) {
  CanonicalTransform tr;
  tr.c = c;
  tr.frame = Context({"s", "r"}, {"w", "p"}, base.parameters(), base.max_order());
  const Context all = combined(tr, base);

  const Expr t = sym(independent("t"));
  const Expr x = sym(independent("x"));
  const Expr u = sym(dependent("u"));
  const Expr v = sym(dependent("v"));
  const Expr s = sym(independent("s"));
  const Expr r = sym(independent("r"));
  const Expr w = sym(dependent("w"));
  const Expr p = sym(dependent("p"));

  tr.forward = {
      {independent("r"), x},
      {independent("s"), t},
      {dependent("w"), sqrt(u * u + v * v)},
      {dependent("p"), arctan(v / u) - c * t},
  };
  const Expr angle = p + c * s;
  tr.inverse = {
      {independent("x"), r},
      {independent("t"), s},
      {dependent("u"), w * cos(angle)},
      {dependent("v"), w * sin(angle)},
  };

  const Bindings cb = c_binding(c);
  auto table_entry = [&](const char* text) { return substitute(parse(text, all), cb); };
  tr.derivative_table = {
      {dependent("u", "x"), table_entry("w_r*cos(p + c*s) - w*p_r*sin(p + c*s)")},
      {dependent("u", "xx"), table_entry("w_rr*cos(p + c*s) - 2*w_r*p_r*sin(p + c*s) - w*p_r^2*cos(p + c*s)"
                                         " - w*p_rr*sin(p + c*s)")},
      {dependent("u", "t"), table_entry("-c*w*sin(p + c*s)")},
      {dependent("v", "x"), table_entry("w_r*sin(p + c*s) + w*p_r*cos(p + c*s)")},
      {dependent("v", "xx"), table_entry("w_rr*sin(p + c*s) + 2*w_r*p_r*cos(p + c*s) + w*p_rr*cos(p + c*s)"
                                         " - w*p_r^2*sin(p + c*s)")},
      {dependent("v", "t"), table_entry("c*w*cos(p + c*s)")},
  };

  const Expr t_of = tr.inverse.at(independent("t"));
  const Expr x_of = tr.inverse.at(independent("x"));
  tr.A = {{{simplify(total_derivative(t_of, "s", tr.frame)), simplify(total_derivative(x_of, "s", tr.frame))},
           {simplify(total_derivative(t_of, "r", tr.frame)), simplify(total_derivative(x_of, "r", tr.frame))}}};
  tr.J = simplify(tr.A[0][0] * tr.A[1][1] - tr.A[0][1] * tr.A[1][0]);
  if (!(tr.A[0][0].is_one() && tr.A[1][1].is_one() && tr.A[0][1].is_zero() && tr.A[1][0].is_zero())) {
    throw Error("canonical transform: A is not the identity");
  }
  if (!tr.J.is_one()) throw Error("canonical transform: J = " + render(tr.J) + ", expected 1");

  tr.invariants = {
      {"b1", s - t},
      {"b2", u * u + v * v},
      {"b3", arctan(v / u) - c * t},
      {"b4", r},
      {"b5", p},
      {"b6", w},
      {"b7", x},
  };
  return tr;
}

Bindings chain_rule_derivative_table(const CanonicalTransform& tr) {
  const Bindings frozen = s_derivatives_to_zero(tr.frame);
  Bindings out;
  for (const auto* dep : {"u", "v"}) {
    const Expr f = tr.inverse.at(dependent(dep));
    auto reduce = [&](const Expr& e) { return simplify(substitute(e, frozen)); };
    out.emplace(dependent(dep, "x"), reduce(total_derivative(f, "r", tr.frame)));
    out.emplace(dependent(dep, "xx"), reduce(total_derivative_multi(f, "rr", tr.frame)));
    out.emplace(dependent(dep, "t"), reduce(total_derivative(f, "s", tr.frame)));
  }
  return out;
}

std::array<double, 4> forward_point(double c, double t, double x, double u, double v) {
  return {x, t, std::hypot(u, v), std::atan2(v, u) - c * t};
}

std::vector<std::pair<std::string, Expr>> generator_on_invariants(const CanonicalTransform& tr) {
  const Symbol u = dependent("u");
  const Symbol v = dependent("v");
  const Expr U = sym(u);
  const Expr V = sym(v);
  std::vector<std::pair<std::string, Expr>> out;
  for (const auto& [name, b] : tr.invariants) {
    Expr y = partial(b, independent("t")) + partial(b, independent("s")) +
             tr.c * (U * partial(b, v) - V * partial(b, u));
    out.emplace_back(name, simplify_if_possible(y));
  }
  return out;
}

std::pair<Expr, Expr> transform_conserved(const ConservedVector& T, const CanonicalTransform& tr) {
  Bindings b = tr.derivative_table;
  b.insert(tr.inverse.begin(), tr.inverse.end());
  for (const Expr* comp : {&T.density, &T.flux}) {
    for (const Symbol& s : symbols_of(*comp)) {
      if (s.is_jet() && !b.contains(s)) {
        throw Error("transform_conserved: " + s.str() + " is outside the derivative table");
      }
    }
  }
  const Expr Tt = substitute(T.density, b);
  const Expr Tx = substitute(T.flux, b);
  // J (A^-1)^T = [[A11, -A10], [-A01, A00]] for a 2x2 matrix.
  const auto& A = tr.A;
  return {simplify(A[1][1] * Tt - A[1][0] * Tx), simplify(A[0][0] * Tx - A[0][1] * Tt)};
}

Expr printed_reduced_flux(const CanonicalTransform& tr) {
  return parse_with_c("(2*beta*w^2 + gamma*w*w_r*sin(2*(p + c*s)) + 2*gamma*w^2*cos(2*(p + c*s)))/2", tr);
}

ReducedODE reduced_ode(const PDESystem& sys, const CanonicalTransform& tr) {
  if (sys.equations().size() != 2) throw Error("reduced_ode: expected two equations");
  Bindings b;
  Bindings constant_w{{dependent("w", "r"), Expr()}, {dependent("w", "rr"), Expr()}};
  for (const auto& [jet, value] : tr.derivative_table) b.emplace(jet, substitute(value, constant_w));
  b.insert(tr.inverse.begin(), tr.inverse.end());
  const Expr scalar = sym(dependent("u")) * sys.equations()[0] + sym(dependent("v")) * sys.equations()[1];
  for (const Symbol& s : symbols_of(scalar)) {
    if (s.is_jet() && !b.contains(s)) {
      throw Error("reduced_ode: " + s.str() + " is outside the derivative table");
    }
  }
  const PolyForm form = normalize(substitute(scalar, b))
                            .with_even_powers_replaced(sym(dependent("w")), PolyForm::generator(P("eps")));
  return {form.to_expr()};
}

Expr printed_reduced_ode(const CanonicalTransform& tr) {
  return parse_with_c(
      "-c*eps*sin(2*p + 2*c*s) - beta*eps*p_r*sin(2*p + 2*c*s) - gamma*eps*p_rr*cos(2*p + 2*c*s)"
      " + gamma*eps*p_r^2*sin(2*p + 2*c*s) + delta*eps^2*sin(2*p + 2*c*s)",
      tr);
}

Expr factored_reduced_ode(const CanonicalTransform& tr) {
  return parse_with_c(
      "eps*((-c - beta*p_r + gamma*p_r^2 + delta*eps)*sin(2*p + 2*c*s) - gamma*p_rr*cos(2*p + 2*c*s))", tr);
}

std::vector<SolutionCandidate> case_solutions(int case_id, const CanonicalTransform& tr) {
  struct Entry {
    const char* suffix;
    const char* phase;
    int quarter_turns;
    bool suspect;
  };
  std::map<std::string, Rational> constraints;
  std::vector<Entry> entries;
  switch (case_id) {
    case 1:
      constraints = {{"c", 0}, {"gamma", 0}};
      entries = {{"p0", "0", 0, false},
                 {"pminus", "0", -1, false},
                 {"pplus", "0", 1, false},
                 {"linear", "r*delta*eps/beta + c1", 0, false}};
      break;
    case 2:
      constraints = {{"beta", 0}, {"c", 0}};
      entries = {{"p0", "0", 0, false},
                 {"pminus", "0", -1, false},
                 {"pplus", "0", 1, false},
                 {"const", "c1", 0, false}};
      break;
    case 3:
      constraints = {{"delta", 0}, {"gamma", 0}};
      entries = {{"s0", "-c*s", 0, true},
                 {"sminus", "-c*s", -1, true},
                 {"splus", "-c*s", 1, true},
                 {"linear", "-c*r/beta + c1", 0, false}};
      break;
    default:
      throw Error("unknown case id " + std::to_string(case_id) + " (expected 1, 2 or 3)");
  }

  Bindings fix = constraint_bindings(constraints);
  if (!fix.contains(parameter("c"))) fix.merge(c_binding(tr.c));
  Bindings to_xt = fix;
  to_xt.emplace(independent("r"), sym(independent("x")));
  to_xt.emplace(independent("s"), sym(independent("t")));

  const Expr amp = sqrt(P("eps"));
  std::vector<SolutionCandidate> out;
  for (const Entry& e : entries) {
    SolutionCandidate cand;
    cand.label = "case" + std::to_string(case_id) + "-" + e.suffix;
    cand.constraints = constraints;
    cand.phase = simplify(substitute(parse(e.phase, tr.frame), fix));
    cand.quarter_turns = e.quarter_turns;
    cand.suspect = e.suspect;

    const Expr theta = simplify(substitute(*cand.phase + P("c") * sym(independent("s")), to_xt));
    const Expr cs = cos(theta);
    const Expr sn = sin(theta);
    switch (e.quarter_turns) {
      case 0:
        cand.u_expr = amp * cs;
        cand.v_expr = amp * sn;
        break;
      case 1:
        cand.u_expr = -(amp * sn);
        cand.v_expr = amp * cs;
        break;
      default:
        cand.u_expr = amp * sn;
        cand.v_expr = -(amp * cs);
        break;
    }
    std::string q = e.quarter_turns == 0 ? "" : (e.quarter_turns > 0 ? "i*" : "-i*");
    q += "sqrt(eps)";
    if (!theta.is_zero()) q += "*exp(i*(" + render(theta) + "))";
    cand.q_form = q;
    out.push_back(std::move(cand));
  }
  return out;
}

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Exact:
      return "Exact";
    case Verdict::ReducedOnly:
      return "ReducedOnly";
    case Verdict::NotSolution:
      return "NotSolution";
  }
  return "?";
}

CandidateEquations::CandidateEquations(const SolutionCandidate& cand, const PDESystem& sys)
    : t_(sys.time()), x_(sys.space()) {
  if (sys.equations().size() != 2) throw Error("candidate check: expected two equations");
  const std::array<Expr, 2> fields{cand.u_expr, cand.v_expr};
  Bindings b;
  for (const auto& eq : sys.equations()) {
    for (const Symbol& s : symbols_of(eq)) {
      if (!s.is_jet() || b.contains(s)) continue;
      const auto& deps = sys.context().dependents();
      const auto it = std::find(deps.begin(), deps.end(), s.name);
      Expr f = fields.at(static_cast<std::size_t>(it - deps.begin()));
      for (char letter : s.derivs) f = partial(f, independent(std::string(1, letter)));
      b.emplace(s, f);
    }
  }
  g1_ = substitute(sys.equations()[0], b);
  g2_ = substitute(sys.equations()[1], b);
  reduced_ = cand.u_expr * g1_ + cand.v_expr * g2_;
}

std::array<double, 3> CandidateEquations::evaluate(double x, double t,
                                                   const std::map<std::string, double>& params) const {
  NumericPoint pt;
  for (const auto& [name, value] : params) pt.emplace(parameter(name), value);
  pt[x_] = x;
  pt[t_] = t;
  return {eval_numeric(g1_, pt), eval_numeric(g2_, pt), eval_numeric(reduced_, pt)};
}

void check_constraints(const SolutionCandidate& cand, const std::map<std::string, double>& params) {
  for (const auto& [name, value] : cand.constraints) {
    const auto it = params.find(name);
    if (it == params.end()) {
      throw ConstraintViolationError(cand.label + ": parameter " + name + " is required to be " + value.get_str());
    }
    if (it->second != value.get_d()) {
      throw ConstraintViolationError(cand.label + ": requires " + name + "=" + value.get_str() + ", got " +
                                     std::to_string(it->second));
    }
  }
  if (const auto it = params.find("eps"); it != params.end() && !(it->second > 0.0)) {
    throw ConstraintViolationError(cand.label + ": eps must be positive");
  }
}

std::array<double, 2> halton_point(int index) {
  auto radical_inverse = [](int i, int base) {
    double f = 1.0;
    double r = 0.0;
    while (i > 0) {
      f /= base;
      r += f * (i % base);
      i /= base;
    }
    return r;
  };
  return {radical_inverse(index, 2), radical_inverse(index, 3)};
}

Classification classify(const SolutionCandidate& cand, const std::map<std::string, double>& params,
                        const PDESystem& sys, double tol, int points) {
  check_constraints(cand, params);
  const CandidateEquations eqs(cand, sys);
  Classification out;
  for (int i = 1; i <= points; ++i) {
    const auto h = halton_point(i);
    const auto res = eqs.evaluate(2.0 * std::numbers::pi * h[0], h[1], params);
    out.max_g1 = std::max(out.max_g1, std::abs(res[0]));
    out.max_g2 = std::max(out.max_g2, std::abs(res[1]));
    out.max_reduced = std::max(out.max_reduced, std::abs(res[2]));
  }
  if (out.max_g1 < tol && out.max_g2 < tol) {
    out.verdict = Verdict::Exact;
  } else if (out.max_reduced < tol) {
    out.verdict = Verdict::ReducedOnly;
  } else {
    out.verdict = Verdict::NotSolution;
  }
  out.adjudicated = !cand.suspect;
  return out;
}

std::map<std::string, double> admissible_draw(const SolutionCandidate& cand, const Context& ctx,
                                              std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(0.1, 2.0);
  std::map<std::string, double> out;
  for (const auto& name : ctx.parameters()) {
    const double drawn = dist(rng);
    const auto it = cand.constraints.find(name);
    out[name] = it == cand.constraints.end() ? drawn : it->second.get_d();
  }
  return out;
}

}  // namespace jetcheck
