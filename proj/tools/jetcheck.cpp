// jetcheck: verification driver for the cubic NLSE problem files.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "jetcheck/commands.hpp"
#include "jetcheck/error.hpp"

namespace {

constexpr int kUsageError = 1;

}  // namespace

int main(int argc, char** argv) {
  using namespace jetcheck;

  CLI::App app{"Symbolic and numeric checks of conservation laws, symmetries and reductions"};
  app.require_subcommand(1);
  app.fallthrough();

  CommonOptions common;
  common.problem = JETCHECK_DEFAULT_PROBLEM;
  std::string json_out;
  double tol = 0.0;
  auto* tol_opt = app.add_option("--tol", tol, "Tolerance (classify 1e-10, simulate 1e-6 by default)")
                      ->check(CLI::PositiveNumber);
  app.add_option("--problem", common.problem, "Problem definition file")->check(CLI::ExistingFile);
  app.add_option("--seed", common.seed, "Seed for parameter draws and random initial data");
  app.add_flag("--printed-variants", common.printed_variants, "Use the [printed] entries of the problem file");
  app.add_option("--json-out", json_out, "Also write the report as JSON");

  auto* verify = app.add_subcommand("verify", "Multipliers, divergence identities and symmetries");
  auto* associate = app.add_subcommand("associate", "Association matrix of symmetries and conserved vectors");

  ReduceOptions reduce_opts;
  std::string c_value;
  int case_id = 0;
  auto* reduce = app.add_subcommand("reduce", "Canonical transform, reduced equation and case candidates");
  auto* c_opt = reduce->add_option("--c", c_value, "Numeric value of c, e.g. 1/2");
  auto* case_opt = reduce->add_option("--case", case_id, "Only this parameter case (1, 2 or 3)");
  reduce->add_option("--draws", reduce_opts.draws, "Parameter draws per candidate")->check(CLI::PositiveNumber);

  SimulateOptions sim;
  std::string scheme = "lawson";
  std::string csv_out;
  auto* simulate = app.add_subcommand("simulate", "Integrate on a periodic grid and monitor conserved quantities");
  simulate->add_option("--N", sim.N, "Grid points (power of two, >= 16)");
  simulate->add_option("--dt", sim.dt, "Time step");
  simulate->add_option("--T", sim.T, "Final time");
  simulate->add_option("--init", sim.init, "Initial data")
      ->check(CLI::IsMember({"plane-wave", "case1-exact", "random"}));
  simulate->add_option("--scheme", scheme, "Time integrator")->check(CLI::IsMember({"lawson", "rk4"}));
  simulate->add_option("--sample-every", sim.sample_every, "Steps between samples")->check(CLI::PositiveNumber);
  auto* csv_opt = simulate->add_option("--csv-out", csv_out, "Write the sampled quantities as CSV");

  int classify_draws = 3;
  auto* classify = app.add_subcommand("classify", "Classify the candidates of the problem file");
  classify->add_option("--draws", classify_draws, "Parameter draws per candidate")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }
  if (*tol_opt) common.tol = tol;

  try {
    const Problem problem = load_problem(common.problem, common.printed_variants);
    for (const auto& w : problem.warnings) std::cerr << "warning: " << w << '\n';

    VerificationReport report;
    if (*verify) {
      report = cmd_verify(problem);
    } else if (*associate) {
      report = cmd_associate(problem);
    } else if (*reduce) {
      if (*c_opt) reduce_opts.c_value = c_value;
      if (*case_opt) reduce_opts.case_id = case_id;
      report = cmd_reduce(problem, common, reduce_opts);
    } else if (*simulate) {
      sim.scheme = scheme == "rk4" ? Scheme::Rk4 : Scheme::Lawson;
      if (*csv_opt) sim.csv_out = csv_out;
      report = cmd_simulate(problem, common, sim);
    } else if (*classify) {
      report = cmd_classify(problem, common, classify_draws);
    }

    report.write_records(std::cout);
    report.write_summary(std::cerr);
    if (!json_out.empty()) {
      std::ofstream out(json_out);
      if (!out) throw ConfigError("cannot write " + json_out);
      out << report.to_json();
    }
    return report.exit_code();
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
  }
  return kUsageError;
}
