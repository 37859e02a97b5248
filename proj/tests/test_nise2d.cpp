#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "nisekit/core/errors.hpp"
#include "nisekit/core/oracle.hpp"
#include "nisekit/core/types.hpp"
#include "nisekit/nise2d/nise.hpp"
#include "nisekit/problems/knapsack.hpp"
#include "nisekit/problems/quadratic.hpp"
#include "support/test_oracles.hpp"

using namespace nisekit;

namespace {

// Quadratic oracle that starts failing after a fixed number of solves.
class FlakyQuadratic : public OracleProblem {
 public:
  explicit FlakyQuadratic(std::size_t budget) : budget_(budget) {}
  std::size_t num_objectives() const override { return 2; }
  std::string name() const override { return "flaky"; }
  WeightedSolution weighted_optimum(const WeightVector& w) const override {
    if (++calls_ > budget_) throw OracleFailure("flaky oracle ran out of budget");
    return inner_.weighted_optimum(w);
  }
  std::optional<double> objective_lower_bound(std::size_t k) const override {
    return inner_.objective_lower_bound(k);
  }

 private:
  QuadraticSimplexProblem inner_{2};
  std::size_t budget_;
  mutable std::size_t calls_ = 0;
};

WeightedSolution make_solution(std::vector<double> w, ObjectiveVector f) {
  WeightedSolution sol;
  sol.weight = WeightVector(std::move(w));
  sol.objectives = std::move(f);
  sol.oracle_value = dot(sol.weight, sol.objectives);
  return sol;
}

}  // namespace

TEST_CASE("nise_weight solves the two-point normal system") {
  const WeightVector symmetric = nise_weight({0.0, 1.0}, {1.0, 0.0});
  REQUIRE(std::abs(symmetric[0] - 0.5) <= 1e-12);
  REQUIRE(std::abs(symmetric[1] - 0.5) <= 1e-12);

  const WeightVector skew = nise_weight({0.0, 4.0}, {2.0, 0.0});
  REQUIRE(std::abs(skew[0] - 2.0 / 3.0) <= 1e-12);
  REQUIRE(std::abs(skew[1] - 1.0 / 3.0) <= 1e-12);

  const ObjectiveVector r1{0.0, 1.0}, r2{0.25, 0.25};
  const WeightVector w = nise_weight(r1, r2);
  REQUIRE(std::abs(dot(w, r1) - dot(w, r2)) <= 1e-12);
  REQUIRE(std::abs(w[0] + w[1] - 1.0) <= 1e-12);
}

TEST_CASE("nise_weight rejects degenerate pairs") {
  REQUIRE_THROWS_AS(nise_weight({1.0, 1.0}, {1.0, 1.0}), DegenerateNeighborhood);
  // Difference parallel to the ones vector: the linear system is singular.
  REQUIRE_THROWS_AS(nise_weight({0.0, 0.0}, {1.0, 1.0}), DegenerateNeighborhood);
  // A dominated pair would need a weight outside [0, 1].
  REQUIRE_THROWS_AS(nise_weight({0.0, 0.0}, {1.0, 2.0}), DegenerateNeighborhood);
}

TEST_CASE("intersection_point meets both supporting lines") {
  const ObjectiveVector origin =
      intersection_point(WeightVector({1.0, 0.0}), {0.0, 1.0}, WeightVector({0.0, 1.0}), {1.0, 0.0});
  REQUIRE(std::abs(origin[0]) <= 1e-12);
  REQUIRE(std::abs(origin[1]) <= 1e-12);

  const WeightVector w1({0.5, 0.5});
  const WeightVector w2({0.25, 0.75});
  const ObjectiveVector r1{0.0, 1.0}, r2{1.0, 0.0};
  const ObjectiveVector p = intersection_point(w1, r1, w2, r2);
  REQUIRE(std::abs(dot(w1, p) - dot(w1, r1)) < 1e-10);
  REQUIRE(std::abs(dot(w2, p) - dot(w2, r2)) < 1e-10);

  REQUIRE_THROWS_AS(intersection_point(w1, r1, w1, r2), DegenerateNeighborhood);
}

TEST_CASE("estimation_error evaluates the normalized gap") {
  const double mu = estimation_error(WeightVector({0.5, 0.5}), {1.0, 0.0}, {0.0, 0.0});
  REQUIRE(std::abs(mu - 0.5 / std::sqrt(0.5)) <= 1e-12);
  REQUIRE(std::abs(mu - 0.70711) <= 1e-5);

  REQUIRE(estimation_error(WeightVector({0.3, 0.7}), {0.4, 0.6}, {0.4, 0.6}) == 0.0);

  // Homogeneity: scaling both points doubles the error at fixed weight.
  const WeightVector w({0.6, 0.4});
  const ObjectiveVector r{0.8, 0.1}, p{0.2, 0.3};
  const ObjectiveVector r2{1.6, 0.2}, p2{0.4, 0.6};
  REQUIRE(std::abs(estimation_error(w, r2, p2) - 2.0 * estimation_error(w, r, p)) <= 1e-12);
}

TEST_CASE("make_neighborhood keeps both parents on the common line") {
  const WeightedSolution a = make_solution({0.9, 0.1}, {0.0, 1.0});
  const WeightedSolution b = make_solution({0.1, 0.9}, {1.0, 0.0});
  const Neighborhood nbh = make_neighborhood(a, b);
  REQUIRE(std::abs(dot(nbh.weight, a.objectives) - dot(nbh.weight, b.objectives)) <= 1e-8);
  REQUIRE(nbh.mu >= 0.0);
  // Parents with strictly positive weights give a nonnegative child weight.
  REQUIRE(nbh.weight[0] >= 0.0);
  REQUIRE(nbh.weight[1] >= 0.0);
}

TEST_CASE("run_nise reproduces the quadratic first interior iteration") {
  QuadraticSimplexProblem quad(2);
  NiseTrace trace;
  const Frontier frontier = run_nise(quad, 1e-2, 200, &trace);

  REQUIRE(frontier.utopian == ObjectiveVector{0.0, 0.0});
  REQUIRE(!trace.iterations.empty());
  const NiseIterationLog& first = trace.iterations.front();
  REQUIRE(std::abs(first.weight[0] - 0.5) <= 1e-12);
  REQUIRE(std::abs(first.weight[1] - 0.5) <= 1e-12);
  REQUIRE(std::abs(first.objectives[0] - 0.25) <= 1e-12);
  REQUIRE(std::abs(first.objectives[1] - 0.25) <= 1e-12);
  REQUIRE(std::abs(first.mu - 0.70711) <= 1e-5);

  // Popped errors only shrink on a convex problem.
  for (std::size_t i = 1; i < frontier.mu_history.size(); ++i) {
    REQUIRE(frontier.mu_history[i] <= frontier.mu_history[i - 1] + 1e-12);
  }
  REQUIRE(trace.oracle_seconds >= 0.0);

  // Sensitivity: higher weight on the first objective lowers it.
  std::vector<WeightedSolution> sorted = frontier.solutions;
  std::sort(sorted.begin(), sorted.end(),
            [](const WeightedSolution& x, const WeightedSolution& y) {
              return x.weight[0] < y.weight[0];
            });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    REQUIRE(sorted[i].objectives[0] <= sorted[i - 1].objectives[0] + 1e-9);
  }
}

TEST_CASE("run_nise stops immediately when mu_stop exceeds the initial error") {
  QuadraticSimplexProblem quad(2);
  const Frontier frontier = run_nise(quad, 1.0, 200);
  REQUIRE(frontier.solutions.size() == 2);
  REQUIRE(frontier.mu_history.empty());
  std::vector<ObjectiveVector> points;
  for (const auto& s : frontier.solutions) points.push_back(s.objectives);
  REQUIRE(std::find(points.begin(), points.end(), ObjectiveVector{0.0, 1.0}) != points.end());
  REQUIRE(std::find(points.begin(), points.end(), ObjectiveVector{1.0, 0.0}) != points.end());
}

TEST_CASE("run_nise validates its inputs") {
  QuadraticSimplexProblem quad(2);
  REQUIRE_THROWS_AS(run_nise(quad, 0.0, 10), ContractViolation);
  QuadraticSimplexProblem three(3);
  REQUIRE_THROWS_AS(run_nise(three, 1e-3, 10), ContractViolation);
}

TEST_CASE("run_nise on a 10-item knapsack matches enumeration everywhere") {
  const KnapsackInstance inst = knapsack_generate(10, 2, 0.5, 21);
  KnapsackOracle oracle(inst);
  const Frontier frontier = run_nise(oracle, 1e-6, 60);

  const auto feasible = testkit::knapsack_feasible_objectives(inst);
  for (const auto& sol : frontier.solutions) {
    // Each archived solution is optimal for its own weight...
    const std::uint32_t mask = testkit::decision_to_mask(sol.decision);
    REQUIRE(testkit::knapsack_subset_size(inst, mask) <= inst.capacity);
    const double value = testkit::knapsack_subset_value(inst, sol.weight.values(), mask);
    const testkit::KnapsackBest best = testkit::knapsack_enumerate(inst, sol.weight.values());
    REQUIRE(value >= best.value - 1e-9 * std::max(1.0, std::abs(best.value)));
    // ...and non-dominated within the entire feasible set.
    for (const auto& other : feasible) {
      REQUIRE_FALSE(testkit::brute_dominates(other, sol.objectives));
    }
  }
}

TEST_CASE("run_nise aborts with a filtered partial frontier on oracle failure") {
  FlakyQuadratic flaky(4);
  bool aborted = false;
  try {
    run_nise(flaky, 1e-6, 200);
  } catch (const RunAborted& e) {
    aborted = true;
    REQUIRE(e.cause == RunAborted::Cause::oracle_failure);
    REQUIRE(!e.partial.solutions.empty());
    std::vector<ObjectiveVector> points;
    for (const auto& s : e.partial.solutions) points.push_back(s.objectives);
    REQUIRE(points == testkit::brute_nondominated(points));
  }
  REQUIRE(aborted);
}
