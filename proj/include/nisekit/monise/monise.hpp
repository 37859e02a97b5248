#pragma once

#include <chrono>
#include <cstddef>
#include <utility>
#include <vector>

#include "nisekit/core/dominance.hpp"
#include "nisekit/core/oracle.hpp"
#include "nisekit/core/types.hpp"
#include "nisekit/mip/branch_and_bound.hpp"
#include "nisekit/monise/weight_selection.hpp"

namespace nisekit {

struct MoniseOptions {
  double mu_stop = 1e-3;        // in unit (normalized) objective space
  std::size_t max_iter = 0;     // weight-selection rounds; 0 means 5·m
  double utopian_offset = 0.0;  // subtracted from each individual minimum
  double big_m_mu = 0.0;        // 0 means the m default
  double big_m_nu = 0.0;        // 0 means the 2m default
  BnbOptions mip;
};

struct MoniseIterationLog {
  WeightVector weight;        // original units, as sent to the oracle
  ObjectiveVector objectives; // oracle answer
  double mu = 0.0;            // estimation error that selected this weight
  std::size_t milp_nodes = 0;
  bool duplicate = false;     // objectives matched an archived vector
};

struct MoniseTrace {
  std::vector<MoniseIterationLog> iterations;
  double oracle_seconds = 0.0;
  double milp_seconds = 0.0;
};

// Many-objective frontier estimation. Seeds with the m individual minima and
// the uniform-weight solution, then alternates weight selection (the MILP)
// with weighted oracle solves until the estimation error drops to mu_stop.
//
// Two collections evolve: `constraints` keeps every (weight, objectives)
// pair — duplicates included, since a repeated objective vector under a new
// weight still contributes a fresh relaxation constraint — while the returned
// frontier holds deduplicated solutions only.
inline Frontier run_monise(const OracleProblem& problem, const MoniseOptions& options = {},
                           MoniseTrace* trace = nullptr) {
  using clock = std::chrono::steady_clock;
  const std::size_t m = problem.num_objectives();
  if (m < 2) throw ContractViolation("run_monise: needs m >= 2");
  if (!(options.mu_stop > 0.0)) throw ContractViolation("run_monise: mu_stop must be > 0");
  if (!(options.utopian_offset >= 0.0)) {
    throw ContractViolation("run_monise: utopian offset must be >= 0");
  }
  const std::size_t max_iter = options.max_iter > 0 ? options.max_iter : 5 * m;

  Frontier frontier;
  std::vector<WeightedSolution> constraints;

  auto timed_solve = [&](const WeightVector& w) {
    const auto t0 = clock::now();
    WeightedSolution sol = solve_weighted(problem, w);
    if (trace) trace->oracle_seconds += std::chrono::duration<double>(clock::now() - t0).count();
    return sol;
  };

  auto archive_has = [&](const ObjectiveVector& f) {
    for (const auto& s : frontier.solutions) {
      if (same_objectives(s.objectives, f)) return true;
    }
    return false;
  };

  auto append = [&](WeightedSolution sol) {
    const bool duplicate = archive_has(sol.objectives);
    if (!duplicate) frontier.solutions.push_back(sol);
    constraints.push_back(std::move(sol));
    return duplicate;
  };

  try {
    frontier.utopian.resize(m);
    for (std::size_t k = 0; k < m; ++k) {
      WeightedSolution sol = timed_solve(WeightVector::unit(m, k));
      frontier.utopian[k] = sol.objectives[k] - options.utopian_offset;
      append(std::move(sol));
    }
    append(timed_solve(WeightVector::uniform(m)));

    for (std::size_t iter = 0; iter < max_iter; ++iter) {
      WeightSelectionModel model = make_weight_selection_model(
          constraints, frontier.utopian, options.big_m_mu, options.big_m_nu);
      const auto t0 = clock::now();
      WeightSelectionResult pick = next_weight(model, options.mip);
      if (trace) trace->milp_seconds += std::chrono::duration<double>(clock::now() - t0).count();

      frontier.mu_history.push_back(pick.mu);
      if (pick.mu <= options.mu_stop) break;

      WeightedSolution sol = timed_solve(pick.weight);
      const bool duplicate = append(sol);
      if (trace) {
        trace->iterations.push_back(
            {pick.weight, sol.objectives, pick.mu, pick.node_count, duplicate});
      }
    }
  } catch (const OracleFailure& e) {
    frontier.solutions = filter_nondominated_solutions(frontier.solutions);
    throw RunAborted(RunAborted::Cause::oracle_failure, e.what(), std::move(frontier));
  } catch (const SolverTimeout& e) {
    frontier.solutions = filter_nondominated_solutions(frontier.solutions);
    throw RunAborted(RunAborted::Cause::solver_timeout, e.what(), std::move(frontier));
  } catch (const SolverFailure& e) {
    frontier.solutions = filter_nondominated_solutions(frontier.solutions);
    throw RunAborted(RunAborted::Cause::solver_failure, e.what(), std::move(frontier));
  }

  frontier.solutions = filter_nondominated_solutions(frontier.solutions);
  return frontier;
}

inline Frontier run_monise(const OracleProblem& problem, double mu_stop, std::size_t max_iter,
                           MoniseTrace* trace = nullptr) {
  MoniseOptions options;
  options.mu_stop = mu_stop;
  options.max_iter = max_iter;
  return run_monise(problem, options, trace);
}

}  // namespace nisekit
