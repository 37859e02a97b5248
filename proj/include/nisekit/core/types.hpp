#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "nisekit/core/errors.hpp"

namespace nisekit {

// Objective vectors use a minimization convention throughout; maximization
// problems negate inside their oracle.
using ObjectiveVector = std::vector<double>;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) {
    throw ContractViolation("dot: dimension mismatch (" + std::to_string(a.size()) + " vs " +
                            std::to_string(b.size()) + ")");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double l2_norm(const std::vector<double>& a) {
  double s = 0.0;
  for (double x : a) s += x * x;
  return std::sqrt(s);
}

inline double linf_distance(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw ContractViolation("linf_distance: dimension mismatch");
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

inline bool all_finite(const std::vector<double>& a) {
  for (double x : a) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

inline void check_objective_vector(const ObjectiveVector& f, std::size_t m, const char* where) {
  if (f.size() != m) {
    throw ContractViolation(std::string(where) + ": expected " + std::to_string(m) +
                            " objectives, got " + std::to_string(f.size()));
  }
  if (f.size() < 2) throw ContractViolation(std::string(where) + ": need m >= 2 objectives");
  if (!all_finite(f)) throw ContractViolation(std::string(where) + ": non-finite objective entry");
}

// Max-norm equality used for archive deduplication.
inline bool same_objectives(const ObjectiveVector& a, const ObjectiveVector& b, double tol = 1e-9) {
  return a.size() == b.size() && linf_distance(a, b) <= tol;
}

// Nonnegative weights summing to 1. Construction renormalizes drift up to
// |sum - 1| <= 1e-6 and rejects anything worse, so downstream code can rely
// on the simplex invariant at 1e-9.
class WeightVector {
 public:
  // Empty "unset" state so aggregates holding a weight can default-construct;
  // every non-empty instance satisfies the simplex invariant.
  WeightVector() = default;

  explicit WeightVector(std::vector<double> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) throw ContractViolation("WeightVector: empty");
    double sum = 0.0;
    for (double w : entries_) {
      if (!std::isfinite(w)) throw ContractViolation("WeightVector: non-finite entry");
      if (w < 0.0) {
        throw ContractViolation("WeightVector: negative entry " + std::to_string(w));
      }
      sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-6) {
      throw ContractViolation("WeightVector: entries sum to " + std::to_string(sum));
    }
    if (std::abs(sum - 1.0) > 1e-9) {
      for (double& w : entries_) w /= sum;
    }
  }

  [[nodiscard]] std::size_t size() const { return entries_.size(); }
  [[nodiscard]] double operator[](std::size_t i) const { return entries_[i]; }
  [[nodiscard]] const std::vector<double>& values() const { return entries_; }
  [[nodiscard]] auto begin() const { return entries_.begin(); }
  [[nodiscard]] auto end() const { return entries_.end(); }

  [[nodiscard]] bool strictly_positive() const {
    for (double w : entries_) {
      if (w <= 0.0) return false;
    }
    return true;
  }

  // Unit weight e_k (used for individual minima).
  static WeightVector unit(std::size_t m, std::size_t k) {
    std::vector<double> w(m, 0.0);
    w.at(k) = 1.0;
    return WeightVector(std::move(w));
  }

  static WeightVector uniform(std::size_t m) {
    return WeightVector(std::vector<double>(m, 1.0 / static_cast<double>(m)));
  }

 private:
  std::vector<double> entries_;
};

inline double dot(const WeightVector& w, const ObjectiveVector& f) { return dot(w.values(), f); }

struct WeightedSolution {
  WeightVector weight;
  ObjectiveVector objectives;
  std::vector<double> decision;  // problem-specific encoding
  double oracle_value = 0.0;     // the scalar w'f(x*) reported by the oracle
};

struct Frontier {
  std::vector<WeightedSolution> solutions;
  std::vector<double> mu_history;  // per-iteration estimation error
  ObjectiveVector utopian;
};

// Thrown when a NISE/MONISE run dies mid-flight; carries everything gathered
// so far so callers can emit a partial report.
class RunAborted : public std::runtime_error {
 public:
  enum class Cause { oracle_failure, solver_failure, solver_timeout };

  RunAborted(Cause cause, const std::string& what, Frontier partial)
      : std::runtime_error(what), cause(cause), partial(std::move(partial)) {}

  Cause cause;
  Frontier partial;
};

}  // namespace nisekit
