#pragma once

#include <cstddef>
#include <vector>

#include "nisekit/core/types.hpp"

namespace nisekit {

// a dominates b: no worse everywhere, strictly better somewhere (minimization).
inline bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
  if (a.size() != b.size()) throw ContractViolation("dominates: dimension mismatch");
  bool strict = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
    if (a[i] < b[i]) strict = true;
  }
  return strict;
}

// Indices of points not dominated by any other input point, in input order.
// Equal vectors never dominate each other, so duplicates all survive.
inline std::vector<std::size_t> nondominated_indices(const std::vector<ObjectiveVector>& points) {
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < points.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < points.size() && !dominated; ++j) {
      if (j != i && dominates(points[j], points[i])) dominated = true;
    }
    if (!dominated) keep.push_back(i);
  }
  return keep;
}

inline std::vector<ObjectiveVector> filter_nondominated(const std::vector<ObjectiveVector>& points) {
  std::vector<ObjectiveVector> out;
  for (std::size_t i : nondominated_indices(points)) out.push_back(points[i]);
  return out;
}

// Same filter but keeping the full solutions (weights travel with the points).
inline std::vector<WeightedSolution> filter_nondominated_solutions(
    const std::vector<WeightedSolution>& solutions) {
  std::vector<ObjectiveVector> points;
  points.reserve(solutions.size());
  for (const auto& s : solutions) points.push_back(s.objectives);
  std::vector<WeightedSolution> out;
  for (std::size_t i : nondominated_indices(points)) out.push_back(solutions[i]);
  return out;
}

}  // namespace nisekit
