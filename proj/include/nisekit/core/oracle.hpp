#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>

#include "nisekit/core/types.hpp"

namespace nisekit {

// Contract for weighted-method oracles: given a simplex weight, return an
// optimum of min_x w'f(x). Implementations must be deterministic for a fixed
// weight (stochastic solvers must be seeded at construction) and must fill
// oracle_value = dot(weight, objectives).
class OracleProblem {
 public:
  virtual ~OracleProblem() = default;

  [[nodiscard]] virtual std::size_t num_objectives() const = 0;
  [[nodiscard]] virtual std::string name() const = 0;

  [[nodiscard]] virtual WeightedSolution weighted_optimum(const WeightVector& w) const = 0;

  // Per-objective lower bound when the problem knows one a priori (most
  // don't; the utopian computation below solves for it instead).
  [[nodiscard]] virtual std::optional<double> objective_lower_bound(std::size_t /*k*/) const {
    return std::nullopt;
  }
};

// Checked entry point: validates dimensions and the oracle_value consistency
// promise before handing the solution to an algorithm.
inline WeightedSolution solve_weighted(const OracleProblem& problem, const WeightVector& w) {
  const std::size_t m = problem.num_objectives();
  if (w.size() != m) {
    throw ContractViolation("solve_weighted: weight has " + std::to_string(w.size()) +
                            " entries, problem has " + std::to_string(m) + " objectives");
  }
  WeightedSolution sol = problem.weighted_optimum(w);
  check_objective_vector(sol.objectives, m, "solve_weighted");
  const double expected = dot(sol.weight, sol.objectives);
  if (std::abs(sol.oracle_value - expected) > 1e-8) {
    throw ContractViolation(problem.name() + ": oracle_value " + std::to_string(sol.oracle_value) +
                            " inconsistent with dot(w, f) = " + std::to_string(expected));
  }
  return sol;
}

// Single-objective minimum of objective k, recorded with weight e_k. Zero
// weights can return weakly efficient points; they are recorded as obtained.
inline WeightedSolution individual_minimum(const OracleProblem& problem, std::size_t k) {
  const std::size_t m = problem.num_objectives();
  if (k >= m) {
    throw ContractViolation("individual_minimum: objective index " + std::to_string(k) +
                            " out of range for m = " + std::to_string(m));
  }
  return solve_weighted(problem, WeightVector::unit(m, k));
}

// Component k = k-th individual minimum value, minus a configurable offset.
inline ObjectiveVector utopian_point(const OracleProblem& problem, double offset = 0.0) {
  if (offset < 0.0) throw ContractViolation("utopian_point: offset must be >= 0");
  const std::size_t m = problem.num_objectives();
  ObjectiveVector z(m, 0.0);
  for (std::size_t k = 0; k < m; ++k) {
    WeightedSolution sol = [&] {
      try {
        return individual_minimum(problem, k);
      } catch (const OracleFailure& e) {
        throw OracleFailure("utopian_point: individual minimum of objective " + std::to_string(k) +
                            " failed: " + e.what());
      }
    }();
    z[k] = sol.objectives[k] - offset;
  }
  return z;
}

}  // namespace nisekit
