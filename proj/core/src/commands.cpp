#include "jetcheck/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>
#include <set>

#include "jetcheck/conservation.hpp"
#include "jetcheck/error.hpp"
#include "jetcheck/normal_form.hpp"
#include "jetcheck/parser.hpp"
#include "jetcheck/symmetry.hpp"

namespace jetcheck {

namespace {

CheckVerdict pass_if(bool ok) { return ok ? CheckVerdict::Pass : CheckVerdict::Fail; }

std::string pair_residual(const char* a, const Expr& ea, const char* b, const Expr& eb) {
  if (ea.is_zero() && eb.is_zero()) return "0";
  return std::string(a) + "=" + render(ea) + "; " + b + "=" + render(eb);
}

std::string format_params(const std::map<std::string, double>& params) {
  std::string out;
  char buf[64];
  for (const auto& [name, value] : params) {
    std::snprintf(buf, sizeof buf, "%s%s=%.6g", out.empty() ? "" : ",", name.c_str(), value);
    out += buf;
  }
  return out;
}

const ConservedVector* find_conserved(const Problem& problem, std::string_view label) {
  for (const auto& T : problem.conserved) {
    if (T.label == label) return &T;
  }
  return nullptr;
}

Expr parse_c_value(const std::string& text) {
  Expr e;
  try {
    e = parse(text, Context{});
  } catch (const ParseError&) {
    throw ConfigError("malformed value for c: '" + text + "'");
  }
  if (!e.is_number()) throw ConfigError("malformed value for c: '" + text + "'");
  return e;
}

}  // namespace

VerificationReport cmd_verify(const Problem& problem) {
  VerificationReport report;
  const PDESystem& sys = problem.system;
  for (const auto& m : problem.multipliers) {
    const auto [eu, ev] = multiplier_condition(m, sys);
    report.add("multiplier", m.label, pass_if(eu.is_zero() && ev.is_zero()), pair_residual("E_u", eu, "E_v", ev),
               "multiplier list");
  }
  for (std::size_t k = 0; k < problem.conserved.size() && k < problem.multipliers.size(); ++k) {
    const auto& T = problem.conserved[k];
    const auto& m = problem.multipliers[k];
    const Expr r = divergence_match(T, m, sys);
    report.add("divergence", T.label + "," + m.label, pass_if(r.is_zero()), render(r), "conserved vectors");
  }
  for (const auto& X : problem.symmetries) {
    const auto [r1, r2] = symmetry_invariance(X, sys);
    report.add("symmetry", X.label, pass_if(r1.is_zero() && r2.is_zero()), pair_residual("G1", r1, "G2", r2),
               "symmetry generators");
  }
  return report;
}

VerificationReport cmd_associate(const Problem& problem) {
  static const std::set<std::pair<std::string, std::string>> claimed{{"X1", "T2"}, {"X3", "T2"}};
  VerificationReport report;
  for (const auto& X : problem.symmetries) {
    for (const auto& T : problem.conserved) {
      const auto [rt, rx] = association_residual(X, T, problem.context);
      const bool associated = rt.is_zero() && rx.is_zero();
      const bool is_claimed = claimed.contains({X.label, T.label});
      const CheckVerdict v = associated ? CheckVerdict::Pass : (is_claimed ? CheckVerdict::Fail : CheckVerdict::Flagged);
      report.add("association", X.label + "," + T.label, v, pair_residual("T*t", rt, "T*x", rx),
                 is_claimed ? "association of X1 and X3 with T2" : "association matrix");
    }
  }
  return report;
}

VerificationReport classification_entries(const std::vector<SolutionCandidate>& candidates, const Problem& problem,
                                          double tol, std::uint64_t seed, int draws) {
  VerificationReport report;
  std::mt19937_64 rng(seed);
  for (const auto& cand : candidates) {
    for (int d = 1; d <= draws; ++d) {
      const auto params = admissible_draw(cand, problem.context, rng);
      const std::string subject = cand.label + " draw " + std::to_string(d);
      try {
        const Classification cls = classify(cand, params, problem.system, tol);
        std::string residual = std::string(verdict_name(cls.verdict)) + "; max|G1|=" + format_residual(cls.max_g1) +
                               " max|G2|=" + format_residual(cls.max_g2) +
                               " max|reduced|=" + format_residual(cls.max_reduced) + "; " + format_params(params);
        CheckVerdict v = CheckVerdict::Flagged;
        if (cand.suspect) {
          residual = "suspect (not adjudicated); " + residual;
        } else if (cls.verdict == Verdict::Exact) {
          v = CheckVerdict::Pass;
        }
        report.add("classify", subject, v, residual, "parameter cases " + render_constraints(cand.constraints));
      } catch (const Error& e) {
        report.add("classify", subject, CheckVerdict::Fail, e.what(), "parameter cases");
      }
    }
  }
  return report;
}

VerificationReport cmd_reduce(const Problem& problem, const CommonOptions& common, const ReduceOptions& opts) {
  if (opts.case_id && (*opts.case_id < 1 || *opts.case_id > 3)) {
    throw ConfigError("--case must be 1, 2 or 3");
  }
  if (!problem.context.kind_of("c")) throw ConfigError("the problem declares no parameter c");
  const Expr c = opts.c_value ? parse_c_value(*opts.c_value) : sym(parameter("c"));

  VerificationReport report;
  const CanonicalTransform tr = build_canonical_transform(problem.context, c);
  report.add("transform.jacobian", "X1+cX3", CheckVerdict::Pass, "A=I; J=" + render(tr.J), "canonical coordinates");

  std::string mismatches;
  for (const auto& [jet, value] : chain_rule_derivative_table(tr)) {
    if (!equivalent(value, tr.derivative_table.at(jet))) {
      mismatches += (mismatches.empty() ? "" : "; ") + jet.str() + " chain rule gives " + render(value);
    }
  }
  report.add("transform.derivative-table", "u_x,u_xx,u_t,v_x,v_xx,v_t", pass_if(mismatches.empty()),
             mismatches.empty() ? "0" : mismatches, "derivatives in canonical variables");

  {
    const auto params = problem.numeric_parameters();
    double cnum = 0.0;
    if (c.is_number()) {
      cnum = c.value().get_d();
    } else if (auto it = params.find("c"); it != params.end()) {
      cnum = it->second;
    }
    std::mt19937_64 rng(common.seed);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      const double t = dist(rng), x = dist(rng), u = dist(rng), v = dist(rng);
      const auto [r, s, w, p] = forward_point(cnum, t, x, u, v);
      worst = std::max({worst, std::abs(w * std::cos(p + cnum * s) - u), std::abs(w * std::sin(p + cnum * s) - v),
                        std::abs(r - x), std::abs(s - t)});
    }
    report.add("transform.roundtrip", "50 points", pass_if(worst < 1e-12), format_residual(worst),
               "inverse canonical coordinates");
  }

  if (const ConservedVector* T2 = find_conserved(problem, "T2")) {
    const auto [Ts, Tr] = transform_conserved(*T2, tr);
    const Expr half_w2 = num(1, 2) * pow(sym(dependent("w")), 2);
    const Expr dens = simplify(Ts - half_w2);
    report.add("reduced.density", "T2", pass_if(dens.is_zero()), "T^s=" + render(Ts), "reduced conserved form");
    const Expr printed = printed_reduced_flux(tr);
    const bool same = equivalent(Tr, printed);
    report.add("reduced.flux", "T2", same ? CheckVerdict::Pass : CheckVerdict::Flagged,
               "derived T^r=" + render(Tr) + "; printed T^r=" + render(simplify(printed)), "reduced conserved form");
  } else {
    report.add("reduced.density", "T2", CheckVerdict::Fail, "no conserved vector labelled T2", "reduced conserved form");
  }

  const ReducedODE ode = reduced_ode(problem.system, tr);
  const Expr diff = simplify(ode.residual - printed_reduced_ode(tr));
  report.add("reduced.ode", "u*G1+v*G2", pass_if(diff.is_zero()),
             diff.is_zero() ? render(ode.residual) : "difference " + render(diff), "reduced equation");
  const Expr fdiff = simplify(ode.residual - factored_reduced_ode(tr));
  report.add("reduced.ode.factored", "u*G1+v*G2", pass_if(fdiff.is_zero()), fdiff.is_zero() ? "0" : render(fdiff),
             "reduced equation");

  std::vector<SolutionCandidate> cands;
  for (int k = 1; k <= 3; ++k) {
    if (opts.case_id && *opts.case_id != k) continue;
    auto more = case_solutions(k, tr);
    cands.insert(cands.end(), more.begin(), more.end());
  }
  report.append(classification_entries(cands, problem, common.tol.value_or(1e-10), common.seed, opts.draws));
  return report;
}

VerificationReport cmd_classify(const Problem& problem, const CommonOptions& common, int draws) {
  return classification_entries(problem.candidates, problem, common.tol.value_or(1e-10), common.seed, draws);
}

VerificationReport cmd_simulate(const Problem& problem, const CommonOptions& common, const SimulateOptions& opts) {
  const Grid grid(2.0 * std::numbers::pi, opts.N);
  const double tol = common.tol.value_or(1e-6);
  auto params = problem.numeric_parameters();

  FieldState initial;
  std::optional<SolutionCandidate> exact;
  std::string subject = opts.init;
  if (opts.init == "plane-wave") {
    initial = plane_wave(grid, 0.5, 1.0);
  } else if (opts.init == "case1-exact") {
    params["c"] = 0.0;
    params["gamma"] = 0.0;
    const double beta = params.at("beta");
    const double delta = params.at("delta");
    if (beta == 0.0 || delta == 0.0 || beta / delta <= 0.0) {
      throw ConfigError("case1-exact needs beta and delta of the same sign");
    }
    // Wavenumber delta*eps/beta = 1 fits the periodic domain.
    params["eps"] = beta / delta;
    const CanonicalTransform tr = build_canonical_transform(problem.context, sym(parameter("c")));
    exact = case_solutions(1, tr).at(3);
    initial = candidate_state(*exact, problem.system, grid, 0.0, params);
  } else if (opts.init == "random") {
    std::mt19937_64 rng(common.seed);
    initial = random_trig_state(grid, rng);
  } else {
    throw ConfigError("unknown --init '" + opts.init + "' (plane-wave, case1-exact, random)");
  }

  SimConfig cfg;
  cfg.t_end = opts.T;
  cfg.dt = opts.dt;
  cfg.scheme = opts.scheme;
  cfg.sample_every = opts.sample_every;

  VerificationReport report;
  SimResult result;
  try {
    result = run(grid, initial, cfg, problem.conserved, problem.system, params);
  } catch (const BlowupError& e) {
    report.add("simulate.blowup", subject, CheckVerdict::Fail, e.what(), "conserved densities");
    return report;
  }

  if (opts.csv_out) {
    std::ofstream out(*opts.csv_out);
    if (!out) throw ConfigError("cannot write " + opts.csv_out->string());
    result.series.write_csv(out);
  }

  for (std::size_t q = 0; q < result.series.labels.size(); ++q) {
    const double d = result.series.drift(q);
    const double b = result.series.balance_drift(q);
    CheckVerdict v = pass_if(d < tol);
    std::string residual = format_residual(d);
    if (d >= tol && b < tol) {
      // Only the explicit-x flux leaking through the periodic seam remains.
      v = CheckVerdict::Flagged;
      residual += "; with seam outflow " + format_residual(b);
    }
    report.add("simulate.drift", subject + " " + result.series.labels[q], v, residual, "conserved densities");
  }
  if (exact) {
    const FieldState target = candidate_state(*exact, problem.system, grid, result.final_state.time, params);
    const double err = max_difference(result.final_state, target);
    report.add("simulate.final-match", subject + " " + exact->label, pass_if(err < tol), format_residual(err),
               "parameter cases c=0, gamma=0");
  }
  return report;
}

}  // namespace jetcheck
