#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "nisekit/core/dominance.hpp"
#include "nisekit/core/oracle.hpp"
#include "nisekit/core/types.hpp"
#include "nisekit/experiment/report.hpp"
#include "nisekit/metrics/hypervolume.hpp"
#include "nisekit/monise/monise.hpp"
#include "nisekit/nise2d/nise.hpp"
#include "nisekit/problems/instance_io.hpp"
#include "nisekit/problems/knapsack.hpp"
#include "nisekit/problems/logistic.hpp"
#include "nisekit/problems/quadratic.hpp"

namespace nisekit {

struct MaterializedProblem {
  std::unique_ptr<OracleProblem> oracle;
  nlohmann::ordered_json instance;
};

inline MaterializedProblem make_oracle(const ProblemSpec& spec) {
  MaterializedProblem out;
  if (spec.type == "knapsack") {
    KnapsackInstance inst = spec.instance_path.empty()
                                ? knapsack_generate(spec.q, spec.m, spec.c, spec.seed)
                                : knapsack_from_json(read_json_file(spec.instance_path));
    out.instance = knapsack_to_json(inst);
    out.oracle = std::make_unique<KnapsackOracle>(std::move(inst));
  } else if (spec.type == "quadratic") {
    if (!spec.instance_path.empty()) {
      throw UsageError("quadratic problems are parametric; drop the instance path");
    }
    if (spec.m < 2) throw UsageError("quadratic: problem.m must be >= 2");
    out.instance = {{"type", "quadratic"}, {"m", spec.m}};
    out.oracle = std::make_unique<QuadraticSimplexProblem>(spec.m);
  } else if (spec.type == "multilabel") {
    MultilabelInstance inst =
        spec.instance_path.empty()
            ? synthetic_multilabel_generate(spec.n, spec.d, spec.L, spec.seed)
            : multilabel_from_json(read_json_file(spec.instance_path));
    out.instance = multilabel_to_json(inst);
    out.oracle = std::make_unique<LogisticOracle>(std::move(inst));
  } else {
    throw UsageError("unknown problem.type '" + spec.type +
                     "' (expected knapsack, quadratic or multilabel)");
  }
  return out;
}

// Uniform weights on the simplex via normalized exponentials, one oracle
// solve per draw. Failed solves are skipped and counted, never silently
// dropped.
inline Frontier random_weights_baseline(const OracleProblem& problem, std::size_t budget,
                                        std::uint64_t seed, std::size_t* failures = nullptr,
                                        double* oracle_seconds = nullptr) {
  if (budget < 1) throw ContractViolation("random_weights_baseline: budget must be >= 1");
  using clock = std::chrono::steady_clock;
  const std::size_t m = problem.num_objectives();
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> exponential(1.0);

  Frontier frontier;
  std::size_t failed = 0;
  for (std::size_t s = 0; s < budget; ++s) {
    std::vector<double> w(m);
    double total = 0.0;
    for (auto& x : w) total += (x = exponential(rng));
    for (auto& x : w) x /= total;
    try {
      const auto t0 = clock::now();
      WeightedSolution sol = solve_weighted(problem, WeightVector(std::move(w)));
      if (oracle_seconds) {
        *oracle_seconds += std::chrono::duration<double>(clock::now() - t0).count();
      }
      bool duplicate = false;
      for (const auto& kept : frontier.solutions) {
        if (same_objectives(kept.objectives, sol.objectives)) {
          duplicate = true;
          break;
        }
      }
      if (!duplicate) frontier.solutions.push_back(std::move(sol));
    } catch (const OracleFailure&) {
      ++failed;
    }
  }
  if (failures) *failures = failed;
  frontier.solutions = filter_nondominated_solutions(frontier.solutions);
  return frontier;
}

namespace detail {

inline void attach_hypervolume(RunReport& report) {
  if (report.solutions.empty()) {
    report.hv_mode = "none";
    return;
  }
  std::vector<ObjectiveVector> front;
  front.reserve(report.solutions.size());
  for (const auto& s : report.solutions) front.push_back(s.objectives);
  report.hv_reference = reference_point({front});
  if (report.m <= kExactHypervolumeMaxDim) {
    report.hv_mode = "exact";
    report.hv_value = hypervolume({front, report.hv_reference});
  } else {
    report.hv_mode = "monte_carlo";
    const MonteCarloHypervolume mc =
        monte_carlo_hypervolume({front, report.hv_reference}, report.config.hv_samples,
                                report.config.seed);
    report.hv_value = mc.value;
    report.hv_samples = mc.samples;
    report.hv_seed = mc.seed;
    report.hv_standard_error = mc.standard_error;
  }
}

}  // namespace detail

inline RunReport run_experiment(const RunConfig& config) {
  using clock = std::chrono::steady_clock;
  if (!(config.mu_stop > 0.0)) throw UsageError("mu_stop must be > 0");
  if (config.algorithm != "nise" && config.algorithm != "monise" &&
      config.algorithm != "random-weights") {
    throw UsageError("unknown algorithm '" + config.algorithm +
                     "' (expected nise, monise or random-weights)");
  }

  MaterializedProblem problem = make_oracle(config.problem);
  const std::size_t m = problem.oracle->num_objectives();
  if (config.algorithm == "nise" && m != 2) {
    throw UsageError("algorithm=nise requires a 2-objective problem, got m=" +
                     std::to_string(m));
  }
  if (config.algorithm == "random-weights" && config.solution_budget < 1) {
    throw UsageError("algorithm=random-weights requires solution_budget >= 1");
  }

  RunReport report;
  report.config = config;
  report.instance = problem.instance;
  report.instance_digest = instance_digest(problem.instance);
  report.m = m;

  const auto t0 = clock::now();
  Frontier frontier;
  try {
    if (config.algorithm == "nise") {
      NiseTrace trace;
      frontier = run_nise(*problem.oracle, config.mu_stop,
                          config.max_iter > 0 ? config.max_iter : 200, &trace);
      report.oracle_seconds = trace.oracle_seconds;
    } else if (config.algorithm == "monise") {
      MoniseOptions options;
      options.mu_stop = config.mu_stop;
      options.max_iter = config.max_iter;
      MoniseTrace trace;
      frontier = run_monise(*problem.oracle, options, &trace);
      report.oracle_seconds = trace.oracle_seconds;
      report.weight_selection_seconds = trace.milp_seconds;
    } else {
      frontier = random_weights_baseline(*problem.oracle, config.solution_budget, config.seed,
                                         &report.baseline_skipped, &report.oracle_seconds);
    }
  } catch (const RunAborted& aborted) {
    if (aborted.cause != RunAborted::Cause::solver_timeout) throw;
    report.status = "timeout";
    frontier = aborted.partial;
  }
  report.total_seconds = std::chrono::duration<double>(clock::now() - t0).count();

  report.solutions = frontier.solutions;
  report.mu_history = frontier.mu_history;
  detail::attach_hypervolume(report);

  if (!config.output_path.empty()) write_json_file(config.output_path, report_to_json(report));
  return report;
}

}  // namespace nisekit
