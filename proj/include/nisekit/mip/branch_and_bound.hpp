#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <queue>
#include <utility>
#include <vector>

#include "nisekit/mip/simplex.hpp"

namespace nisekit {

enum class MilpStatus { optimal, infeasible, unbounded, iteration_limit };

struct MilpResult {
  MilpStatus status = MilpStatus::iteration_limit;
  std::vector<double> values;
  double objective_value = 0.0;
  std::size_t node_count = 0;
  std::vector<double> incumbent_history;  // objective after each incumbent update
};

struct BnbOptions {
  std::size_t max_nodes = 100000;
  double integrality_tol = 1e-6;
  double bound_slack = 1e-9;  // pruning margin on LP bounds
  SimplexOptions lp;
};

namespace detail {

struct BnbNode {
  double bound = 0.0;  // own LP relaxation value, maximize direction
  std::size_t id = 0;  // FIFO tie-break for equal bounds
  std::vector<std::pair<std::size_t, double>> fixings;  // (binary var, 0 or 1)
  std::vector<double> lp_values;                        // own LP solution
};

struct BnbNodeOrder {
  bool operator()(const BnbNode& a, const BnbNode& b) const {
    if (a.bound != b.bound) return a.bound < b.bound;  // larger bound first
    return a.id > b.id;
  }
};

}  // namespace detail

// Best-bound branch and bound over the binary variables of a MilpModel.
// Branching fixes variable bounds; every node's LP is solved exactly once
// (models here are tens of variables, robustness over speed).
inline MilpResult branch_and_bound(const MilpModel& model, const BnbOptions& opts = {}) {
  model.validate();
  const double dir = model.lp.sense == Sense::maximize ? 1.0 : -1.0;

  MilpResult res;
  bool have_incumbent = false;
  double incumbent_score = -kInfinity;  // maximize direction
  bool gave_up = false;

  auto solve_fixed = [&](const std::vector<std::pair<std::size_t, double>>& fixings) {
    LinearProgram lp = model.lp;
    for (const auto& [j, v] : fixings) lp.lower[j] = lp.upper[j] = v;
    return simplex_solve(lp, opts.lp);
  };

  auto most_fractional_binary = [&](const std::vector<double>& x) -> std::size_t {
    std::size_t pick = SIZE_MAX;
    double best = opts.integrality_tol;
    for (std::size_t j : model.binary_indices) {
      const double f = std::min(x[j], 1.0 - x[j]);  // distance to the nearer integer
      if (f > best) {
        best = f;
        pick = j;
      }
    }
    return pick;
  };

  std::priority_queue<detail::BnbNode, std::vector<detail::BnbNode>, detail::BnbNodeOrder> open;
  std::size_t next_id = 0;

  {
    LpResult root = solve_fixed({});
    if (root.status == LpStatus::infeasible) {
      res.status = MilpStatus::infeasible;
      return res;
    }
    if (root.status == LpStatus::unbounded) {
      res.status = MilpStatus::unbounded;
      return res;
    }
    if (root.status == LpStatus::iteration_limit) {
      res.status = MilpStatus::iteration_limit;
      return res;
    }
    open.push({dir * root.objective_value, next_id++, {}, std::move(root.values)});
  }

  while (!open.empty() && !gave_up) {
    detail::BnbNode node = std::move(const_cast<detail::BnbNode&>(open.top()));
    open.pop();
    if (have_incumbent && node.bound <= incumbent_score + opts.bound_slack) continue;
    if (++res.node_count > opts.max_nodes) {
      gave_up = true;
      break;
    }

    const std::size_t branch_var = most_fractional_binary(node.lp_values);
    if (branch_var == SIZE_MAX) {
      // Integral within tolerance. Re-solve with every binary pinned to its
      // rounded value so the reported point is exactly 0/1 feasible.
      auto fixings = node.fixings;
      for (std::size_t j : model.binary_indices) {
        fixings.emplace_back(j, std::round(node.lp_values[j]));
      }
      LpResult pinned = solve_fixed(fixings);
      if (pinned.status != LpStatus::optimal) continue;  // rounding broke it; rare
      const double pinned_score = dir * pinned.objective_value;
      if (!have_incumbent || pinned_score > incumbent_score) {
        have_incumbent = true;
        incumbent_score = pinned_score;
        res.values = pinned.values;
        for (std::size_t j : model.binary_indices) res.values[j] = std::round(res.values[j]);
        res.objective_value = pinned.objective_value;
        res.incumbent_history.push_back(pinned.objective_value);
      }
      continue;
    }

    for (double v : {0.0, 1.0}) {
      auto fixings = node.fixings;
      fixings.emplace_back(branch_var, v);
      LpResult child = solve_fixed(fixings);
      if (child.status == LpStatus::infeasible) continue;
      if (child.status != LpStatus::optimal) {
        // A bounded parent cannot spawn an unbounded child; any solver limit
        // here means we cannot certify the answer. Fail loudly.
        gave_up = true;
        break;
      }
      const double child_score = dir * child.objective_value;
      if (have_incumbent && child_score <= incumbent_score + opts.bound_slack) continue;
      open.push({child_score, next_id++, std::move(fixings), std::move(child.values)});
    }
  }

  if (gave_up) {
    res.status = MilpStatus::iteration_limit;  // best incumbent, if any, is attached
  } else {
    res.status = have_incumbent ? MilpStatus::optimal : MilpStatus::infeasible;
  }
  return res;
}

}  // namespace nisekit
