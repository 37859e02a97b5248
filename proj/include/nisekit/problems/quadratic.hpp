#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "nisekit/core/oracle.hpp"
#include "nisekit/core/types.hpp"

namespace nisekit {

// Minimize (x_1^2, ..., x_m^2) over the unit simplex. The weighted problem
// has the closed form x_i = (1/w_i) / sum_j (1/w_j): equalize 2 w_i x_i.
class QuadraticSimplexProblem final : public OracleProblem {
 public:
  explicit QuadraticSimplexProblem(std::size_t m) : m_(m) {
    if (m_ < 2) throw ContractViolation("quadratic problem: m must be >= 2");
  }

  std::size_t num_objectives() const override { return m_; }
  std::string name() const override { return "quadratic"; }

  WeightedSolution weighted_optimum(const WeightVector& w) const override {
    std::vector<double> x(m_, 0.0);
    std::size_t zeros = 0;
    for (std::size_t i = 0; i < m_; ++i) zeros += (w[i] == 0.0);
    if (zeros == 0) {
      double total = 0.0;
      for (std::size_t i = 0; i < m_; ++i) total += 1.0 / w[i];
      for (std::size_t i = 0; i < m_; ++i) x[i] = (1.0 / w[i]) / total;
    } else {
      // Limit of the closed form as the zero components vanish: the free
      // coordinates absorb the unit mass (their squares cost nothing) and
      // share it equally.
      for (std::size_t i = 0; i < m_; ++i) {
        if (w[i] == 0.0) x[i] = 1.0 / static_cast<double>(zeros);
      }
    }

    WeightedSolution sol;
    sol.weight = w;
    sol.objectives.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) sol.objectives[i] = x[i] * x[i];
    sol.decision = std::move(x);
    sol.oracle_value = dot(w, sol.objectives);
    return sol;
  }

  std::optional<double> objective_lower_bound(std::size_t) const override { return 0.0; }

 private:
  std::size_t m_;
};

}  // namespace nisekit
