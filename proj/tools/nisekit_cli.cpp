// Command-line front end: generate instances, run NISE / MONISE / the
// random-weights baseline, compare runs, and evaluate hypervolumes.
//
// Exit codes: 0 success, 2 usage error, 3 solver failure, 4 timeout (partial
// report written).

#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nisekit/nisekit.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitSolver = 3;
constexpr int kExitTimeout = 4;

int cmd_generate(const nisekit::ProblemSpec& spec, const std::string& out_path) {
  nisekit::MaterializedProblem problem = nisekit::make_oracle(spec);
  nisekit::write_json_file(out_path, problem.instance);
  std::cout << "wrote " << out_path << " (digest " << nisekit::instance_digest(problem.instance)
            << ")\n";
  return kExitOk;
}

int cmd_run(const nisekit::RunConfig& config) {
  const nisekit::RunReport report = nisekit::run_experiment(config);
  std::cout << "algorithm=" << config.algorithm << " solutions=" << report.solutions.size()
            << " hypervolume=" << report.hv_value << " (" << report.hv_mode << ")"
            << " seconds=" << report.total_seconds << " status=" << report.status << "\n";
  if (!config.output_path.empty()) std::cout << "report: " << config.output_path << "\n";
  return report.status == "timeout" ? kExitTimeout : kExitOk;
}

int cmd_compare(const std::vector<std::string>& report_paths, const std::string& out_path) {
  std::vector<nisekit::RunReport> reports;
  reports.reserve(report_paths.size());
  for (const auto& path : report_paths) {
    reports.push_back(nisekit::report_from_json(nisekit::read_json_file(path)));
  }
  const std::string table = nisekit::compare_runs(reports);
  if (out_path.empty()) {
    std::cout << table;
  } else {
    std::ofstream out(out_path);
    if (!out) throw nisekit::DataCorruption("cannot open " + out_path + " for writing");
    out << table;
    std::cout << "wrote " << out_path << "\n";
  }
  return kExitOk;
}

// Point files: {"points": [[...], ...], "reference": [...]} — reference
// optional (derived from the points when absent). Report files also work;
// their solutions become the point set.
int cmd_hv(const std::string& points_path, std::size_t mc_samples, std::uint64_t mc_seed) {
  const nisekit::json j = nisekit::read_json_file(points_path);
  std::vector<nisekit::ObjectiveVector> points;
  nisekit::ObjectiveVector reference;
  if (j.contains("points")) {
    points = j.at("points").get<std::vector<nisekit::ObjectiveVector>>();
    if (j.contains("reference")) reference = j.at("reference").get<nisekit::ObjectiveVector>();
  } else if (j.contains("solutions")) {
    for (const auto& sol : j.at("solutions")) {
      points.push_back(sol.at("objectives").get<nisekit::ObjectiveVector>());
    }
  } else {
    throw nisekit::UsageError("point file needs a 'points' or 'solutions' field");
  }
  if (points.empty()) throw nisekit::UsageError("point file holds no points");
  if (reference.empty()) reference = nisekit::reference_point({points});

  if (reference.size() <= nisekit::kExactHypervolumeMaxDim) {
    std::size_t clipped = 0;
    const double value = nisekit::hypervolume({points, reference}, &clipped);
    std::cout << "hypervolume=" << value << " mode=exact clipped=" << clipped << "\n";
  } else {
    const nisekit::MonteCarloHypervolume mc =
        nisekit::monte_carlo_hypervolume({points, reference}, mc_samples, mc_seed);
    std::cout << "hypervolume=" << mc.value << " mode=monte_carlo stderr=" << mc.standard_error
              << " samples=" << mc.samples << " seed=" << mc.seed << " clipped=" << mc.clipped
              << "\n";
  }
  return kExitOk;
}

void add_problem_flags(CLI::App* cmd, nisekit::ProblemSpec& spec) {
  cmd->add_option("--type", spec.type, "problem type: knapsack | quadratic | multilabel")
      ->required();
  cmd->add_option("--instance", spec.instance_path, "load instance from file");
  cmd->add_option("--q", spec.q, "knapsack: item count");
  cmd->add_option("--m", spec.m, "objective count (knapsack, quadratic)");
  cmd->add_option("--c", spec.c, "knapsack: coverage in [0,1]");
  cmd->add_option("--n", spec.n, "multilabel: sample count");
  cmd->add_option("--d", spec.d, "multilabel: feature count");
  cmd->add_option("--labels", spec.L, "multilabel: label count");
  cmd->add_option("--instance-seed", spec.seed, "generator seed");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"NISE / MONISE multi-objective optimization toolkit"};
  app.require_subcommand(1);

  nisekit::ProblemSpec gen_spec;
  std::string gen_out;
  CLI::App* generate = app.add_subcommand("generate", "write an instance file");
  add_problem_flags(generate, gen_spec);
  generate->add_option("--out", gen_out, "output path")->required();

  nisekit::RunConfig config;
  CLI::App* run = app.add_subcommand("run", "run one experiment");
  add_problem_flags(run, config.problem);
  run->add_option("--algorithm", config.algorithm, "nise | monise | random-weights")->required();
  run->add_option("--mu-stop", config.mu_stop, "stopping threshold (normalized units)");
  run->add_option("--max-iter", config.max_iter, "iteration cap (0 = algorithm default)");
  run->add_option("--budget", config.solution_budget, "random-weights: oracle call budget");
  run->add_option("--seed", config.seed, "run seed (baseline sampling, MC hypervolume)");
  run->add_option("--hv-samples", config.hv_samples, "Monte-Carlo hypervolume samples (m > 8)");
  run->add_option("--out", config.output_path, "report output path");

  std::vector<std::string> compare_paths;
  std::string compare_out;
  CLI::App* compare = app.add_subcommand("compare", "tabulate reports on one instance");
  compare->add_option("reports", compare_paths, "report files")->required()->expected(-1);
  compare->add_option("--out", compare_out, "write the table here instead of stdout");

  std::string hv_path;
  std::size_t hv_samples = 200000;
  std::uint64_t hv_seed = 0;
  CLI::App* hv = app.add_subcommand("hv", "hypervolume of a point file");
  hv->add_option("file", hv_path, "point file or run report")->required();
  hv->add_option("--samples", hv_samples, "Monte-Carlo samples (m > 8)");
  hv->add_option("--seed", hv_seed, "Monte-Carlo seed (m > 8)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // prints help, exits 0
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (generate->parsed()) return cmd_generate(gen_spec, gen_out);
    if (run->parsed()) return cmd_run(config);
    if (compare->parsed()) return cmd_compare(compare_paths, compare_out);
    if (hv->parsed()) return cmd_hv(hv_path, hv_samples, hv_seed);
    std::cerr << "no subcommand\n";
    return kExitUsage;
  } catch (const nisekit::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const nisekit::ContractViolation& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const nisekit::RunAborted& e) {
    std::cerr << "aborted: " << e.what() << "\n";
    return e.cause == nisekit::RunAborted::Cause::solver_timeout ? kExitTimeout : kExitSolver;
  } catch (const nisekit::SolverFailure& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kExitSolver;
  } catch (const nisekit::OracleFailure& e) {
    std::cerr << "oracle failure: " << e.what() << "\n";
    return kExitSolver;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolver;
  }
}
