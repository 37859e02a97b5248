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

// Multilabel classification data. All labels share the single parameter
// vector theta of dimension d+1; the feature map appends a constant 1.
struct MultilabelInstance {
  std::size_t n = 0, d = 0, L = 0;
  std::vector<std::vector<double>> X;  // n rows of d features
  std::vector<std::vector<int>> Y;     // n rows of L labels in {0,1}
  std::uint64_t seed = 0;

  void validate() const {
    if (n < 1 || d < 1 || L < 1) throw ContractViolation("multilabel: needs n, d, L >= 1");
    if (X.size() != n || Y.size() != n) throw ContractViolation("multilabel: row count mismatch");
    for (const auto& row : X) {
      if (row.size() != d) throw ContractViolation("multilabel: feature row length != d");
      if (!all_finite(row)) throw ContractViolation("multilabel: non-finite feature");
    }
    for (const auto& row : Y) {
      if (row.size() != L) throw ContractViolation("multilabel: label row length != L");
      for (int y : row) {
        if (y != 0 && y != 1) throw ContractViolation("multilabel: label outside {0,1}");
      }
    }
  }
};

// Standard-normal features; labels from independent random linear classifiers
// with 5% of entries flipped.
inline MultilabelInstance synthetic_multilabel_generate(std::size_t n, std::size_t d,
                                                        std::size_t L, std::uint64_t seed) {
  MultilabelInstance inst;
  inst.n = n;
  inst.d = d;
  inst.L = L;
  inst.seed = seed;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::bernoulli_distribution flip(0.05);
  inst.X.assign(n, std::vector<double>(d));
  for (auto& row : inst.X) {
    for (auto& x : row) x = normal(rng);
  }
  inst.Y.assign(n, std::vector<int>(L, 0));
  for (std::size_t l = 0; l < L; ++l) {
    std::vector<double> classifier(d + 1);
    for (auto& a : classifier) a = normal(rng);
    for (std::size_t i = 0; i < n; ++i) {
      double z = classifier[d];
      for (std::size_t j = 0; j < d; ++j) z += classifier[j] * inst.X[i][j];
      bool y = z >= 0.0;
      if (flip(rng)) y = !y;
      inst.Y[i][l] = y ? 1 : 0;
    }
  }
  inst.validate();
  return inst;
}

namespace detail {

inline double softplus(double z) { return z > 30.0 ? z : std::log1p(std::exp(z)); }

inline double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

}  // namespace detail

// Objectives: one logistic loss per label plus the l2 norm of theta as the
// last component. Weighted solves run gradient descent with a backtracking
// line search; the norm term uses its minimal-norm subgradient so the origin
// is handled exactly.
class LogisticOracle final : public OracleProblem {
 public:
  explicit LogisticOracle(MultilabelInstance instance, double tol = 1e-6,
                          std::size_t max_iterations = 10000)
      : inst_(std::move(instance)), tol_(tol), max_iterations_(max_iterations) {
    inst_.validate();
    if (!(tol_ > 0.0)) throw ContractViolation("logistic: tol must be > 0");
  }

  const MultilabelInstance& instance() const { return inst_; }

  std::size_t num_objectives() const override { return inst_.L + 1; }
  std::string name() const override { return "multilabel_logistic"; }

  // loss_l(theta) = sum_i softplus(z_i) - y_il z_i with z_i = theta' phi(x_i).
  double label_loss(const std::vector<double>& theta, std::size_t l) const {
    double loss = 0.0;
    for (std::size_t i = 0; i < inst_.n; ++i) {
      const double z = margin(theta, i);
      loss += detail::softplus(z) - static_cast<double>(inst_.Y[i][l]) * z;
    }
    return loss;
  }

  ObjectiveVector objectives_at(const std::vector<double>& theta) const {
    ObjectiveVector f(inst_.L + 1);
    for (std::size_t l = 0; l < inst_.L; ++l) f[l] = label_loss(theta, l);
    f[inst_.L] = l2_norm(theta);
    return f;
  }

  // Gradient of the label loss: sum_i (sigmoid(z_i) - y_il) phi(x_i).
  std::vector<double> label_loss_gradient(const std::vector<double>& theta, std::size_t l) const {
    std::vector<double> g(inst_.d + 1, 0.0);
    for (std::size_t i = 0; i < inst_.n; ++i) {
      const double r = detail::sigmoid(margin(theta, i)) - static_cast<double>(inst_.Y[i][l]);
      for (std::size_t j = 0; j < inst_.d; ++j) g[j] += r * inst_.X[i][j];
      g[inst_.d] += r;
    }
    return g;
  }

  WeightedSolution weighted_optimum(const WeightVector& w) const override {
    const std::size_t dim = inst_.d + 1;
    const double w_reg = w[inst_.L];
    std::vector<double> theta(dim, 0.0);

    // Per-sample smooth-part coefficients: sum_l w_l (sigmoid(z) - y_il)
    // = s_w sigmoid(z) - wy_i with s_w = sum of label weights.
    double label_weight_sum = 0.0;
    std::vector<double> weighted_labels(inst_.n, 0.0);
    for (std::size_t l = 0; l < inst_.L; ++l) {
      label_weight_sum += w[l];
      for (std::size_t i = 0; i < inst_.n; ++i) {
        weighted_labels[i] += w[l] * static_cast<double>(inst_.Y[i][l]);
      }
    }

    auto smooth_gradient = [&](const std::vector<double>& t) {
      std::vector<double> g(dim, 0.0);
      for (std::size_t i = 0; i < inst_.n; ++i) {
        const double r = label_weight_sum * detail::sigmoid(margin(t, i)) - weighted_labels[i];
        for (std::size_t j = 0; j < inst_.d; ++j) g[j] += r * inst_.X[i][j];
        g[inst_.d] += r;
      }
      return g;
    };
    auto objective = [&](const std::vector<double>& t) {
      double value = w_reg * l2_norm(t);
      for (std::size_t i = 0; i < inst_.n; ++i) {
        const double z = margin(t, i);
        value += label_weight_sum * detail::softplus(z) - weighted_labels[i] * z;
      }
      return value;
    };
    // Minimal-norm subgradient of the full objective; zero iff theta optimal.
    auto subgradient = [&](const std::vector<double>& t) {
      std::vector<double> g = smooth_gradient(t);
      const double norm_t = l2_norm(t);
      if (norm_t > 1e-10) {
        for (std::size_t j = 0; j < dim; ++j) g[j] += w_reg * t[j] / norm_t;
      } else {
        const double norm_g = l2_norm(g);
        const double shrink = norm_g > w_reg ? (norm_g - w_reg) / norm_g : 0.0;
        for (double& x : g) x *= shrink;
      }
      return g;
    };

    double value = objective(theta);
    bool converged = l2_norm(subgradient(theta)) <= tol_;
    for (std::size_t iter = 0; !converged && iter < max_iterations_; ++iter) {
      const std::vector<double> g = subgradient(theta);
      const double gnorm2 = dot(g, g);
      if (std::sqrt(gnorm2) <= tol_) {
        converged = true;
        break;
      }
      double step = 1.0;
      bool moved = false;
      std::vector<double> candidate(dim);
      while (step > 1e-18) {
        for (std::size_t j = 0; j < dim; ++j) candidate[j] = theta[j] - step * g[j];
        const double cand_value = objective(candidate);
        if (cand_value <= value - 1e-4 * step * gnorm2) {
          theta = candidate;
          value = cand_value;
          moved = true;
          break;
        }
        step *= 0.5;
      }
      if (!moved) break;  // flat to machine precision; final check decides
    }
    if (!converged) converged = l2_norm(subgradient(theta)) <= tol_;

    // Snap a vanishing iterate to the exact origin so the norm objective and
    // its reported decision agree with the subgradient convergence rule.
    if (l2_norm(theta) <= 1e-10) theta.assign(dim, 0.0);

    if (!converged) {
      throw OracleFailure("logistic solve stalled above tolerance " + std::to_string(tol_),
                          theta);
    }

    WeightedSolution sol;
    sol.weight = w;
    sol.objectives = objectives_at(theta);
    sol.decision = std::move(theta);
    sol.oracle_value = dot(w, sol.objectives);
    return sol;
  }

  std::optional<double> objective_lower_bound(std::size_t) const override { return 0.0; }

 private:
  double margin(const std::vector<double>& theta, std::size_t i) const {
    double z = theta[inst_.d];
    for (std::size_t j = 0; j < inst_.d; ++j) z += theta[j] * inst_.X[i][j];
    return z;
  }

  MultilabelInstance inst_;
  double tol_;
  std::size_t max_iterations_;
};

}  // namespace nisekit
