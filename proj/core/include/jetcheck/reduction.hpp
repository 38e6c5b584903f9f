#pragma once

#include <array>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "jetcheck/calculus.hpp"
#include "jetcheck/candidate.hpp"
#include "jetcheck/conservation.hpp"
#include "jetcheck/system.hpp"

namespace jetcheck {

/// Change of variables (t, x, u, v) -> (s, r, w, p) that straightens
/// X = d/dt + c (u d/dv - v d/du) into d/ds:
///
///   r = x, s = t, w = sqrt(u^2 + v^2), p = arctan(v/u) - c t
///   x = r, t = s, u = w cos(p + c s), v = w sin(p + c s)
///
/// The derivative table expresses u_x, u_xx, u_t, v_x, v_xx, v_t in the new
/// variables with w and p functions of r only.
struct CanonicalTransform {
  Expr c;
  Context frame;
  Bindings forward;
  Bindings inverse;
  Bindings derivative_table;
  std::array<std::array<Expr, 2>, 2> A;
  Expr J;
  /// Invariants b1..b7 of the characteristic system, in (t, x, u, v, s, r, w, p).
  std::vector<std::pair<std::string, Expr>> invariants;
};

/// Builds the transform for the given c (the parameter symbol or a number).
/// `base` must declare t, x, u, v and the parameters used by the system.
/// Throws if A is not the identity or J != 1.
[[nodiscard]] CanonicalTransform build_canonical_transform(const Context& base, const Expr& c);

/// Derivative table recomputed by the chain rule (D_x = D_r, D_t = D_s with
/// w_s = p_s = 0), independent of the typed table.
[[nodiscard]] Bindings chain_rule_derivative_table(const CanonicalTransform& tr);

/// (r, s, w, p) of a point, using the quadrant-aware angle so w >= 0.
[[nodiscard]] std::array<double, 4> forward_point(double c, double t, double x, double u, double v);

/// The generator d/dt + d/ds + c (u d/dv - v d/du) applied to each invariant.
[[nodiscard]] std::vector<std::pair<std::string, Expr>> generator_on_invariants(const CanonicalTransform& tr);

/// (T^s, T^r) = J (A^-1)^T (T^t, T^x) after substituting the inverse map and
/// derivative table; normalized. Throws if T uses a jet outside the table.
[[nodiscard]] std::pair<Expr, Expr> transform_conserved(const ConservedVector& T, const CanonicalTransform& tr);

/// Flux T2^r in its printed form, with the stray k read as c.
[[nodiscard]] Expr printed_reduced_flux(const CanonicalTransform& tr);

struct ReducedODE {
  /// Residual in p, p_r, p_rr, s and the parameters (w eliminated via w^2 = eps).
  Expr residual;
};

/// Substitutes u = w cos(p + c s), v = w sin(p + c s) with constant w into
/// u G1 + v G2, then imposes w^2 = eps.
[[nodiscard]] ReducedODE reduced_ode(const PDESystem& sys, const CanonicalTransform& tr);

/// The reduced equation in its printed form.
[[nodiscard]] Expr printed_reduced_ode(const CanonicalTransform& tr);

/// eps [A sin(2p + 2cs) - gamma p_rr cos(2p + 2cs)], A = -c - beta p_r + gamma p_r^2 + delta eps.
[[nodiscard]] Expr factored_reduced_ode(const CanonicalTransform& tr);

/// Candidates of the three parameter cases. Throws on an unknown case id.
[[nodiscard]] std::vector<SolutionCandidate> case_solutions(int case_id, const CanonicalTransform& tr);

enum class Verdict { Exact, ReducedOnly, NotSolution };

[[nodiscard]] std::string_view verdict_name(Verdict v);

struct Classification {
  Verdict verdict = Verdict::NotSolution;
  double max_g1 = 0.0;
  double max_g2 = 0.0;
  double max_reduced = 0.0;
  /// False for suspect candidates: residuals are reported, not adjudicated.
  bool adjudicated = true;
};

/// The two equation residuals and the reduced scalar u G1 + v G2 of a
/// candidate, as expressions in x, t and the parameters.
class CandidateEquations {
 public:
  CandidateEquations(const SolutionCandidate& cand, const PDESystem& sys);

  [[nodiscard]] const Expr& g1() const noexcept { return g1_; }
  [[nodiscard]] const Expr& g2() const noexcept { return g2_; }
  [[nodiscard]] const Expr& reduced() const noexcept { return reduced_; }

  /// (G1, G2, u G1 + v G2) at (x, t).
  [[nodiscard]] std::array<double, 3> evaluate(double x, double t, const std::map<std::string, double>& params) const;

 private:
  Symbol t_;
  Symbol x_;
  Expr g1_;
  Expr g2_;
  Expr reduced_;
};

/// Throws ConstraintViolationError unless every constrained parameter has
/// its required value and eps > 0.
void check_constraints(const SolutionCandidate& cand, const std::map<std::string, double>& params);

/// Residuals on `points` quasi-random (x, t) in [0, 2 pi] x [0, 1].
[[nodiscard]] Classification classify(const SolutionCandidate& cand, const std::map<std::string, double>& params,
                                      const PDESystem& sys, double tol = 1e-10, int points = 100);

/// Constrained parameters at their values, all others uniform in [0.1, 2].
[[nodiscard]] std::map<std::string, double> admissible_draw(const SolutionCandidate& cand, const Context& ctx,
                                                             std::mt19937_64& rng);

/// Point i (1-based) of the 2-D Halton sequence in bases 2 and 3.
[[nodiscard]] std::array<double, 2> halton_point(int index);

}  // namespace jetcheck
