#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "jetcheck/candidate.hpp"
#include "jetcheck/conservation.hpp"
#include "jetcheck/symmetry.hpp"
#include "jetcheck/system.hpp"

namespace jetcheck {

/// Contents of a problem-definition file.
///
/// File layout (line oriented, `#` starts a comment):
///
///   [params]        name  or  name = rational      (default numeric value)
///   [independents]  name                           (time first, then space)
///   [dependents]    name
///   [equations]     G1 = expr
///   [evolution]     u_t = expr
///   [multipliers]   label.q1 = expr, label.q2 = expr
///   [conserved]     label.t = expr (density), label.x = expr (flux)
///   [symmetries]    label.t|x|u|v = expr           (missing components are 0)
///   [candidates]    label : c=0, gamma=0 : u = expr : v = expr [: suspect]
///   [printed]       name = expr                    (overrides, see below)
///
/// Entries of [printed] replace the same-named entry of another section when
/// the file is loaded with `printed_variants`; otherwise they are ignored.
/// Multiplier k pairs with conserved vector k (order of first appearance).
struct Problem {
  Context context;
  std::map<std::string, Rational> parameter_values;
  PDESystem system;
  std::vector<MultiplierPair> multipliers;
  std::vector<ConservedVector> conserved;
  std::vector<VectorField> symmetries;
  std::vector<SolutionCandidate> candidates;
  std::vector<std::string> warnings;
  bool printed_variants = false;

  [[nodiscard]] std::map<std::string, double> numeric_parameters() const;
};

[[nodiscard]] Problem parse_problem(std::string_view text, bool printed_variants = false);
[[nodiscard]] Problem load_problem(const std::filesystem::path& path, bool printed_variants = false);

/// Parses one `[candidates]` line body (`label : constraints : u = .. : v = ..`).
[[nodiscard]] SolutionCandidate parse_candidate(std::string_view line, const Context& ctx);

}  // namespace jetcheck
