#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "nisekit/core/errors.hpp"
#include "nisekit/experiment/report.hpp"
#include "nisekit/metrics/hypervolume.hpp"

namespace nisekit {

// Cross-algorithm table: one shared reference point from the union of all
// fronts, hypervolume recomputed per report against it. Monte-Carlo rows use
// each report's own run seed, so the table does not depend on report order.
// Columns: algorithm, m, solutions, hypervolume, seconds.
inline std::string compare_runs(const std::vector<RunReport>& reports) {
  if (reports.empty()) throw ContractViolation("compare_runs: no reports");
  for (const auto& r : reports) {
    if (r.instance_digest != reports.front().instance_digest) {
      throw DataCorruption("compare_runs: reports cover different instances (" +
                           r.instance_digest + " vs " + reports.front().instance_digest + ")");
    }
  }

  std::vector<std::vector<ObjectiveVector>> fronts;
  for (const auto& r : reports) {
    std::vector<ObjectiveVector> front;
    front.reserve(r.solutions.size());
    for (const auto& s : r.solutions) front.push_back(s.objectives);
    fronts.push_back(std::move(front));
  }
  const ObjectiveVector shared_ref = reference_point(fronts);

  std::ostringstream table;
  table << "algorithm,m,solutions,hypervolume,seconds\n";
  table.precision(12);
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const RunReport& r = reports[i];
    double hv = 0.0;
    if (r.m <= kExactHypervolumeMaxDim) {
      hv = hypervolume({fronts[i], shared_ref});
    } else {
      hv = monte_carlo_hypervolume({fronts[i], shared_ref}, r.config.hv_samples, r.config.seed)
               .value;
    }
    table << r.config.algorithm << ',' << r.m << ',' << r.solutions.size() << ',' << hv << ','
          << r.total_seconds << '\n';
  }
  return table.str();
}

}  // namespace nisekit
