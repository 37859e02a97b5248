#pragma once

#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include "nisekit/core/types.hpp"

namespace nisekit {

enum class Relation { less_equal, equal, greater_equal };
enum class Sense { maximize, minimize };

struct LinearRow {
  std::vector<double> coeffs;
  Relation rel = Relation::less_equal;
  double rhs = 0.0;
};

// Dense LP description. Default variable bounds are [0, +inf); override
// `lower`/`upper` per variable for free or boxed variables.
struct LinearProgram {
  Sense sense = Sense::maximize;
  std::vector<double> objective;
  std::vector<LinearRow> rows;
  std::vector<double> lower;
  std::vector<double> upper;

  explicit LinearProgram(std::size_t n = 0)
      : objective(n, 0.0), lower(n, 0.0), upper(n, kInfinity) {}

  [[nodiscard]] std::size_t num_vars() const { return objective.size(); }

  void add_row(std::vector<double> coeffs, Relation rel, double rhs) {
    if (coeffs.size() != num_vars()) {
      throw ContractViolation("LinearProgram::add_row: coefficient length " +
                              std::to_string(coeffs.size()) + " != variable count " +
                              std::to_string(num_vars()));
    }
    rows.push_back({std::move(coeffs), rel, rhs});
  }

  void validate() const {
    for (const auto& row : rows) {
      if (row.coeffs.size() != num_vars()) throw ContractViolation("LinearProgram: ragged row");
    }
    if (lower.size() != num_vars() || upper.size() != num_vars()) {
      throw ContractViolation("LinearProgram: bounds length mismatch");
    }
    for (std::size_t j = 0; j < num_vars(); ++j) {
      if (lower[j] > upper[j]) {
        throw ContractViolation("LinearProgram: lower > upper for variable " + std::to_string(j));
      }
    }
  }
};

struct MilpModel {
  LinearProgram lp;
  std::vector<std::size_t> binary_indices;  // variables constrained to {0,1}

  void validate() const {
    lp.validate();
    for (std::size_t j : binary_indices) {
      if (j >= lp.num_vars()) throw ContractViolation("MilpModel: binary index out of range");
      if (lp.lower[j] != 0.0 || lp.upper[j] != 1.0) {
        throw ContractViolation("MilpModel: binary variable " + std::to_string(j) +
                                " must have bounds [0,1]");
      }
    }
  }
};

// Human-readable dump for debugging; not a stable format.
inline std::string dump_lp(const LinearProgram& lp, const std::vector<std::size_t>& binaries = {}) {
  std::ostringstream os;
  auto term = [&](double c, std::size_t j) {
    os << (c < 0 ? " - " : " + ") << std::abs(c) << " x" << j;
  };
  os << (lp.sense == Sense::maximize ? "maximize" : "minimize");
  for (std::size_t j = 0; j < lp.num_vars(); ++j) {
    if (lp.objective[j] != 0.0) term(lp.objective[j], j);
  }
  os << "\nsubject to\n";
  for (std::size_t i = 0; i < lp.rows.size(); ++i) {
    os << "  r" << i << ":";
    for (std::size_t j = 0; j < lp.num_vars(); ++j) {
      if (lp.rows[i].coeffs[j] != 0.0) term(lp.rows[i].coeffs[j], j);
    }
    const char* rel = lp.rows[i].rel == Relation::less_equal      ? "<="
                      : lp.rows[i].rel == Relation::greater_equal ? ">="
                                                                  : "=";
    os << " " << rel << " " << lp.rows[i].rhs << "\n";
  }
  os << "bounds\n";
  for (std::size_t j = 0; j < lp.num_vars(); ++j) {
    os << "  " << lp.lower[j] << " <= x" << j << " <= " << lp.upper[j] << "\n";
  }
  if (!binaries.empty()) {
    os << "binary";
    for (std::size_t j : binaries) os << " x" << j;
    os << "\n";
  }
  return os.str();
}

}  // namespace nisekit
