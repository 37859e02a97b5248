#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <queue>
#include <string>
#include <vector>

#include "nisekit/core/dominance.hpp"
#include "nisekit/core/oracle.hpp"
#include "nisekit/core/types.hpp"

namespace nisekit {

// Weight w with w'r1 = w'r2 and w'1 = 1: the normal of the line through the
// two objective points, scaled to the simplex.
inline WeightVector nise_weight(const ObjectiveVector& r1, const ObjectiveVector& r2) {
  if (r1.size() != 2 || r2.size() != 2) throw ContractViolation("nise_weight: needs m = 2");
  if (same_objectives(r1, r2)) {
    throw DegenerateNeighborhood("nise_weight: coincident objective points");
  }
  const double d1 = r1[0] - r2[0];
  const double d2 = r1[1] - r2[1];
  // w1*d1 + w2*d2 = 0 with w1 + w2 = 1  =>  w1 = d2/(d2 - d1).
  if (std::abs(d2 - d1) < 1e-12) {
    throw DegenerateNeighborhood("nise_weight: difference parallel to the all-ones vector");
  }
  double w1 = d2 / (d2 - d1);
  // A weight outside [0,1] means one point dominates the other (no supporting
  // line with nonnegative normal exists); such a pair is not a usable
  // neighborhood. Roundoff at the boundary is absorbed.
  if (w1 < -1e-9 || w1 > 1.0 + 1e-9) {
    throw DegenerateNeighborhood("nise_weight: pair admits no nonnegative normal");
  }
  w1 = std::min(std::max(w1, 0.0), 1.0);
  return WeightVector({w1, 1.0 - w1});
}

// Intersection p of the two supporting lines w1'p = w1'r1 and w2'p = w2'r2.
inline ObjectiveVector intersection_point(const WeightVector& w1, const ObjectiveVector& r1,
                                          const WeightVector& w2, const ObjectiveVector& r2) {
  if (w1.size() != 2 || w2.size() != 2 || r1.size() != 2 || r2.size() != 2) {
    throw ContractViolation("intersection_point: needs m = 2");
  }
  const double det = w1[0] * w2[1] - w1[1] * w2[0];
  if (std::abs(det) < 1e-12) {
    throw DegenerateNeighborhood("intersection_point: parallel supporting lines");
  }
  const double b1 = dot(w1, r1);
  const double b2 = dot(w2, r2);
  return {(b1 * w2[1] - w1[1] * b2) / det, (w1[0] * b2 - b1 * w2[0]) / det};
}

// Distance from the line {x : w'x = w'r} to the point p (the estimation error).
inline double estimation_error(const WeightVector& w, const ObjectiveVector& r,
                               const ObjectiveVector& p) {
  const double norm = l2_norm(w.values());
  if (norm <= 0.0) throw ContractViolation("estimation_error: zero weight vector");
  const double gap = dot(w, r) - dot(w, p);
  return std::sqrt(gap * gap / (norm * norm));
}

// Two adjacent efficient solutions plus the derived exploration data: the
// shared weight, the intersection of the parents' supporting lines and the
// estimation error of the segment between them.
struct Neighborhood {
  WeightedSolution sol_a, sol_b;
  WeightVector weight;
  ObjectiveVector intersection;
  double mu = 0.0;
};

inline Neighborhood make_neighborhood(const WeightedSolution& a, const WeightedSolution& b) {
  Neighborhood n{a, b, nise_weight(a.objectives, b.objectives), {}, 0.0};
  n.intersection = intersection_point(a.weight, a.objectives, b.weight, b.objectives);
  // Both parents lie on the new line, so either serves as r; assert agreement.
  const double drift = std::abs(dot(n.weight, a.objectives) - dot(n.weight, b.objectives));
  if (drift > 1e-8) {
    throw DegenerateNeighborhood("make_neighborhood: parents not on a common line, drift " +
                                 std::to_string(drift));
  }
  n.mu = estimation_error(n.weight, a.objectives, n.intersection);
  return n;
}

struct NiseIterationLog {
  WeightVector weight;
  ObjectiveVector objectives;
  double mu = 0.0;   // estimation error of the popped neighborhood
  double gap = 0.0;  // w'r - w'p of the popped neighborhood (unnormalized)
  bool closed = false;  // solution coincided with a parent
};

struct NiseTrace {
  std::vector<NiseIterationLog> iterations;
  double oracle_seconds = 0.0;
};

namespace detail {

struct NiseQueueEntry {
  double mu;
  std::size_t seq;  // insertion order, FIFO among equal mu
  std::size_t slot;
};

struct NiseQueueOrder {
  bool operator()(const NiseQueueEntry& a, const NiseQueueEntry& b) const {
    if (a.mu != b.mu) return a.mu < b.mu;
    return a.seq > b.seq;
  }
};

}  // namespace detail

// Two-objective non-inferior set estimation: start from both individual
// minima, repeatedly solve the weighted problem on the max-error neighborhood
// and split it around the new solution.
inline Frontier run_nise(const OracleProblem& problem, double mu_stop, std::size_t max_iter = 200,
                         NiseTrace* trace = nullptr) {
  if (problem.num_objectives() != 2) throw ContractViolation("run_nise: needs m = 2");
  if (!(mu_stop > 0.0)) throw ContractViolation("run_nise: mu_stop must be > 0");

  Frontier frontier;
  std::vector<Neighborhood> slots;
  std::priority_queue<detail::NiseQueueEntry, std::vector<detail::NiseQueueEntry>,
                      detail::NiseQueueOrder>
      queue;
  std::size_t seq = 0;

  using clock = std::chrono::steady_clock;
  auto timed_solve = [&](const WeightVector& w) {
    const auto t0 = clock::now();
    WeightedSolution sol = solve_weighted(problem, w);
    if (trace) trace->oracle_seconds += std::chrono::duration<double>(clock::now() - t0).count();
    return sol;
  };

  auto push_neighborhood = [&](const WeightedSolution& a, const WeightedSolution& b) {
    try {
      Neighborhood n = make_neighborhood(a, b);
      slots.push_back(std::move(n));
      queue.push({slots.back().mu, seq++, slots.size() - 1});
    } catch (const DegenerateNeighborhood&) {
      // Coincident or collinear-with-ones pairs add nothing to the frontier.
    }
  };

  auto archive_has = [&](const ObjectiveVector& f) {
    for (const auto& s : frontier.solutions) {
      if (same_objectives(s.objectives, f)) return true;
    }
    return false;
  };

  try {
    const WeightedSolution min0 = timed_solve(WeightVector::unit(2, 0));
    const WeightedSolution min1 = timed_solve(WeightVector::unit(2, 1));
    frontier.utopian = {min0.objectives[0], min1.objectives[1]};
    frontier.solutions.push_back(min0);
    if (!archive_has(min1.objectives)) frontier.solutions.push_back(min1);
    if (frontier.solutions.size() == 2) push_neighborhood(min0, min1);

    std::size_t iter = 0;
    while (!queue.empty() && iter < max_iter) {
      const detail::NiseQueueEntry top = queue.top();
      if (top.mu <= mu_stop) break;
      queue.pop();
      // Copy: pushing children below may reallocate the slot storage.
      const Neighborhood nbh = slots[top.slot];
      ++iter;

      WeightedSolution sol = timed_solve(nbh.weight);
      frontier.mu_history.push_back(nbh.mu);
      const bool hits_parent = same_objectives(sol.objectives, nbh.sol_a.objectives) ||
                               same_objectives(sol.objectives, nbh.sol_b.objectives);
      if (trace) {
        trace->iterations.push_back({nbh.weight, sol.objectives, nbh.mu,
                                     dot(nbh.weight, nbh.sol_a.objectives) -
                                         dot(nbh.weight, nbh.intersection),
                                     hits_parent});
      }
      if (hits_parent) continue;  // close the neighborhood (mu := 0), no children

      if (!archive_has(sol.objectives)) frontier.solutions.push_back(sol);
      push_neighborhood(nbh.sol_a, sol);
      push_neighborhood(sol, nbh.sol_b);
    }
  } catch (const OracleFailure& e) {
    frontier.solutions = filter_nondominated_solutions(frontier.solutions);
    throw RunAborted(RunAborted::Cause::oracle_failure, e.what(), std::move(frontier));
  }

  frontier.solutions = filter_nondominated_solutions(frontier.solutions);
  return frontier;
}

}  // namespace nisekit
