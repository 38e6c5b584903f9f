#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "jetcheck/numerics.hpp"
#include "jetcheck/problem.hpp"
#include "jetcheck/reduction.hpp"
#include "jetcheck/report.hpp"

namespace jetcheck {

inline constexpr std::uint64_t kDefaultSeed = 1729;

struct CommonOptions {
  std::filesystem::path problem;
  std::optional<double> tol;
  std::uint64_t seed = kDefaultSeed;
  bool printed_variants = false;
};

/// Multiplier conditions, divergence identities and symmetry invariance.
[[nodiscard]] VerificationReport cmd_verify(const Problem& problem);

/// Association residual for every (symmetry, conserved vector) pair. The
/// pairs listed in `claimed` pass or fail; others pass when associated and
/// are flagged otherwise.
[[nodiscard]] VerificationReport cmd_associate(const Problem& problem);

struct ReduceOptions {
  /// Numeric value for c (a rational such as "1/2"); the symbol otherwise.
  std::optional<std::string> c_value;
  /// 1, 2 or 3; all cases when empty.
  std::optional<int> case_id;
  int draws = 3;
};

/// Canonical transform, reduced conserved vector, reduced equation and
/// classification of the case candidates. Throws ConfigError on a malformed
/// c value or case id.
[[nodiscard]] VerificationReport cmd_reduce(const Problem& problem, const CommonOptions& common,
                                            const ReduceOptions& opts);

/// Classification of the problem file's candidates over parameter draws.
[[nodiscard]] VerificationReport cmd_classify(const Problem& problem, const CommonOptions& common, int draws = 3);

struct SimulateOptions {
  int N = 256;
  double dt = 1e-3;
  double T = 1.0;
  /// plane-wave, case1-exact or random.
  std::string init = "plane-wave";
  Scheme scheme = Scheme::Lawson;
  int sample_every = 1;
  std::optional<std::filesystem::path> csv_out;
};

/// Runs the integrator and checks the drift of every conserved density.
[[nodiscard]] VerificationReport cmd_simulate(const Problem& problem, const CommonOptions& common,
                                              const SimulateOptions& opts);

/// Entries for each candidate and parameter draw (shared by reduce and classify).
[[nodiscard]] VerificationReport classification_entries(const std::vector<SolutionCandidate>& candidates,
                                                        const Problem& problem, double tol, std::uint64_t seed,
                                                        int draws);

}  // namespace jetcheck
