#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace nisekit {

// Programming/contract errors: bad dimensions, invalid arguments, broken
// preconditions. These indicate caller bugs, not runtime conditions.
struct ContractViolation : std::logic_error {
  using std::logic_error::logic_error;
};

// Corrupt data detected at runtime (e.g. an archive point below the utopian).
struct DataCorruption : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A weighted-solve oracle failed (infeasible, unbounded, non-convergent).
// best_decision carries the last iterate when an iterative solver gives up.
struct OracleFailure : std::runtime_error {
  explicit OracleFailure(const std::string& what, std::vector<double> best = {})
      : std::runtime_error(what), best_decision(std::move(best)) {}
  std::vector<double> best_decision;
};

// Two points forming a NISE neighborhood coincide or give a singular system.
struct DegenerateNeighborhood : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// LP/MILP level failures (infeasible model where feasibility is guaranteed,
// solver limits without usable output, ...).
struct SolverFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace nisekit
