#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "nisekit/core/oracle.hpp"
#include "nisekit/core/types.hpp"

namespace nisekit {

// Multi-objective 0/1 knapsack: q items, each with one integer size and m
// integer utility values; maximize utilities under the capacity. Stored and
// reported in minimization convention (objectives are negated totals).
struct KnapsackInstance {
  std::size_t q = 0;
  std::size_t m = 0;
  std::vector<long long> sizes;               // q entries
  std::vector<std::vector<long long>> values; // values[k][i], m rows of q
  long long capacity = 0;
  std::uint64_t seed = 0;

  void validate() const {
    if (q < 1 || m < 2) throw ContractViolation("knapsack: needs q >= 1 and m >= 2");
    if (sizes.size() != q) throw ContractViolation("knapsack: sizes length != q");
    if (values.size() != m) throw ContractViolation("knapsack: values rows != m");
    for (const auto& row : values) {
      if (row.size() != q) throw ContractViolation("knapsack: values row length != q");
      for (long long v : row) {
        if (v < 0) throw ContractViolation("knapsack: negative value");
      }
    }
    for (long long t : sizes) {
      if (t < 0) throw ContractViolation("knapsack: negative size");
    }
    if (capacity < 0) throw ContractViolation("knapsack: negative capacity");
  }
};

// Sizes and all per-objective values drawn uniformly from the integers
// [0,1000]; capacity T = round(500·q·c) so c sweeps empty to everything.
inline KnapsackInstance knapsack_generate(std::size_t q, std::size_t m, double c,
                                          std::uint64_t seed) {
  if (q < 1 || m < 2) throw ContractViolation("knapsack_generate: needs q >= 1, m >= 2");
  if (!(c >= 0.0 && c <= 1.0)) throw ContractViolation("knapsack_generate: c outside [0,1]");
  KnapsackInstance inst;
  inst.q = q;
  inst.m = m;
  inst.seed = seed;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long long> uniform(0, 1000);
  inst.sizes.resize(q);
  for (auto& t : inst.sizes) t = uniform(rng);
  inst.values.assign(m, std::vector<long long>(q));
  for (auto& row : inst.values) {
    for (auto& v : row) v = uniform(rng);
  }
  inst.capacity = std::llround(500.0 * static_cast<double>(q) * c);
  inst.validate();
  return inst;
}

// Weighted solves run an exact dynamic program over the integer capacity;
// the reported objectives are re-summed in integer arithmetic from the chosen
// subset, so the minimization totals carry no float drift.
class KnapsackOracle final : public OracleProblem {
 public:
  explicit KnapsackOracle(KnapsackInstance instance) : inst_(std::move(instance)) {
    inst_.validate();
  }

  const KnapsackInstance& instance() const { return inst_; }

  std::size_t num_objectives() const override { return inst_.m; }
  std::string name() const override { return "knapsack"; }

  WeightedSolution weighted_optimum(const WeightVector& w) const override {
    const std::size_t q = inst_.q;
    const std::size_t cap = static_cast<std::size_t>(inst_.capacity);

    // Scalarized per-item scores. The weighted problem maximizes their sum.
    std::vector<double> score(q, 0.0);
    for (std::size_t k = 0; k < inst_.m; ++k) {
      for (std::size_t i = 0; i < q; ++i) {
        score[i] += w[k] * static_cast<double>(inst_.values[k][i]);
      }
    }

    std::vector<double> best(cap + 1, 0.0);
    std::vector<std::vector<char>> keep(q, std::vector<char>(cap + 1, 0));
    for (std::size_t i = 0; i < q; ++i) {
      const long long t = inst_.sizes[i];
      if (t > inst_.capacity) continue;
      const std::size_t ti = static_cast<std::size_t>(t);
      for (std::size_t c = cap + 1; c-- > ti;) {
        const double with = best[c - ti] + score[i];
        if (with > best[c]) {
          best[c] = with;
          keep[i][c] = 1;
        }
      }
    }

    std::vector<double> x(q, 0.0);
    std::size_t c = cap;
    for (std::size_t i = q; i-- > 0;) {
      if (keep[i][c]) {
        x[i] = 1.0;
        c -= static_cast<std::size_t>(inst_.sizes[i]);
      }
    }

    WeightedSolution sol;
    sol.weight = w;
    sol.objectives.resize(inst_.m);
    for (std::size_t k = 0; k < inst_.m; ++k) {
      long long total = 0;
      for (std::size_t i = 0; i < q; ++i) {
        if (x[i] > 0.5) total += inst_.values[k][i];
      }
      sol.objectives[k] = -static_cast<double>(total);
    }
    sol.decision = std::move(x);
    sol.oracle_value = dot(w, sol.objectives);
    return sol;
  }

  std::optional<double> objective_lower_bound(std::size_t k) const override {
    long long total = 0;
    for (long long v : inst_.values[k]) total += v;
    return -static_cast<double>(total);
  }

 private:
  KnapsackInstance inst_;
};

}  // namespace nisekit
