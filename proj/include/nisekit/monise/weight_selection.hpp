#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "nisekit/core/errors.hpp"
#include "nisekit/core/types.hpp"
#include "nisekit/mip/branch_and_bound.hpp"
#include "nisekit/mip/linear_program.hpp"
#include "nisekit/monise/normalization.hpp"

namespace nisekit {

// Data for one weight-selection round: the archive of all weighted solutions
// found so far (duplicates by objective value are kept — each contributes its
// own relaxation constraint) plus the normalization that maps everything onto
// the unit box, where the big-M bounds below are valid.
struct WeightSelectionModel {
  std::vector<WeightedSolution> archive;  // original units
  ObjectiveVector utopian;                // original units
  Normalization normalization;
  double big_m_mu = 0.0;
  double big_m_nu = 0.0;

  // Unit-space copies consumed by the MILP.
  std::vector<ObjectiveVector> points_unit;
  std::vector<WeightVector> weights_unit;

  std::size_t num_objectives() const { return utopian.size(); }
  std::size_t size() const { return archive.size(); }
};

// big_m defaults: in the unit box w'r^i - v <= m is safe (both terms in
// [0,1] against a simplex weight), and the stationarity identity bounds nu_j
// by |r_low| + |sum mu_i r^i| + |xi| <= 2m. Pass positive values to override.
inline WeightSelectionModel make_weight_selection_model(std::vector<WeightedSolution> archive,
                                                        ObjectiveVector utopian,
                                                        double big_m_mu = 0.0,
                                                        double big_m_nu = 0.0) {
  if (archive.empty()) throw ContractViolation("weight selection: empty archive");
  WeightSelectionModel model;
  model.utopian = std::move(utopian);
  const double m = static_cast<double>(model.utopian.size());
  model.big_m_mu = big_m_mu > 0.0 ? big_m_mu : m;
  model.big_m_nu = big_m_nu > 0.0 ? big_m_nu : 2.0 * m;
  model.archive = std::move(archive);

  NormalizedArchive unit = normalize_archive(model.archive, model.utopian);
  model.normalization = std::move(unit.normalization);
  model.points_unit = std::move(unit.points);
  model.weights_unit = std::move(unit.weights);
  for (const auto& p : model.points_unit) {
    for (double x : p) {
      if (x < 0.0 || x > 1.0 + 1e-6) {
        throw ContractViolation("weight selection: normalized point escapes the unit box");
      }
    }
  }
  return model;
}

// Column layout of the weight-selection MILP. Continuous block first, then
// the binaries, so tests can audit the structure by index.
struct MilpLayout {
  std::size_t m = 0;
  std::size_t L = 0;

  std::size_t w(std::size_t j) const { return j; }
  std::size_t r_low(std::size_t j) const { return m + j; }
  std::size_t v() const { return 2 * m; }
  std::size_t mu(std::size_t i) const { return 2 * m + 1 + i; }
  std::size_t nu(std::size_t j) const { return 2 * m + 1 + L + j; }
  std::size_t xi() const { return 3 * m + 1 + L; }
  std::size_t mu_b(std::size_t i) const { return 3 * m + 2 + L + i; }
  std::size_t nu_b(std::size_t j) const { return 3 * m + 2 + 2 * L + j; }

  std::size_t num_continuous() const { return 3 * m + 2 + L; }
  std::size_t num_binary() const { return L + m; }
  std::size_t num_variables() const { return num_continuous() + num_binary(); }
};

inline MilpLayout weight_milp_layout(const WeightSelectionModel& model) {
  return {model.num_objectives(), model.size()};
}

// The single-level reformulation of the weight-selection problem. Variables:
// the sought weight w, the relaxation point r_low, the approximation level v,
// the KKT multipliers (mu per archive entry, nu per objective, xi for the
// simplex equality) and the complementarity switches mu_B, nu_B. At any
// feasible point xi = v - w'r_low, the estimation error of w, so maximizing
// xi finds the weight with the largest gap between the frontier's upper and
// lower models.
inline MilpModel build_weight_milp(const WeightSelectionModel& model) {
  const MilpLayout lay = weight_milp_layout(model);
  const std::size_t m = lay.m, L = lay.L;
  const auto& R = model.points_unit;    // r^i, unit space
  const auto& W = model.weights_unit;   // w^i, unit space

  MilpModel milp;
  milp.lp = LinearProgram(lay.num_variables());
  LinearProgram& lp = milp.lp;
  lp.sense = Sense::maximize;
  lp.objective[lay.xi()] = 1.0;
  for (std::size_t j = 0; j < m; ++j) lp.upper[lay.w(j)] = 1.0;
  // Every 0/1-feasible point has v in [0,1]: some mu_B_i is 0 (else the mu
  // simplex row is infeasible), whose complementarity row forces
  // v >= w'r^i >= 0, while the approximation rows cap v by w'r^i <= 1.
  // Likewise xi = v - w'r_low <= v <= 1 there. Both bounds are implied
  // whenever the binaries are fixed integrally, and at fractional nodes they
  // only sharpen the relaxation — they never cut an integral point.
  lp.upper[lay.v()] = 1.0;
  for (std::size_t i = 0; i < L; ++i) lp.upper[lay.mu(i)] = 1.0;
  for (std::size_t j = 0; j < m; ++j) lp.upper[lay.nu(j)] = model.big_m_nu;
  lp.lower[lay.xi()] = -kInfinity;
  lp.upper[lay.xi()] = 1.0;
  for (std::size_t i = 0; i < L; ++i) {
    lp.upper[lay.mu_b(i)] = 1.0;
    milp.binary_indices.push_back(lay.mu_b(i));
  }
  for (std::size_t j = 0; j < m; ++j) {
    lp.upper[lay.nu_b(j)] = 1.0;
    milp.binary_indices.push_back(lay.nu_b(j));
  }

  auto blank = [&] { return std::vector<double>(lay.num_variables(), 0.0); };

  // (a) stationarity: r_low_j - sum_i mu_i r^i_j - nu_j + xi = 0.
  for (std::size_t j = 0; j < m; ++j) {
    auto c = blank();
    c[lay.r_low(j)] = 1.0;
    for (std::size_t i = 0; i < L; ++i) c[lay.mu(i)] = -R[i][j];
    c[lay.nu(j)] = -1.0;
    c[lay.xi()] = 1.0;
    lp.add_row(std::move(c), Relation::equal, 0.0);
  }

  // (b) the multipliers of the approximation rows form a simplex.
  {
    auto c = blank();
    for (std::size_t i = 0; i < L; ++i) c[lay.mu(i)] = 1.0;
    lp.add_row(std::move(c), Relation::equal, 1.0);
  }

  // (c) relaxation feasibility: w^i' r_low >= w^i' r^i (r_low >= 0 is a bound).
  for (std::size_t i = 0; i < L; ++i) {
    auto c = blank();
    for (std::size_t j = 0; j < m; ++j) c[lay.r_low(j)] = W[i][j];
    lp.add_row(std::move(c), Relation::greater_equal, dot(W[i], R[i]));
  }

  // (d) approximation feasibility: v <= w' r^i. Written with v on the left
  // so the row starts slack-basic (zero rhs) instead of needing an artificial.
  for (std::size_t i = 0; i < L; ++i) {
    auto c = blank();
    c[lay.v()] = 1.0;
    for (std::size_t j = 0; j < m; ++j) c[lay.w(j)] = -R[i][j];
    lp.add_row(std::move(c), Relation::less_equal, 0.0);
  }

  // (e) simplex: w'1 = 1 (w >= 0 and w <= 1 are bounds).
  {
    auto c = blank();
    for (std::size_t j = 0; j < m; ++j) c[lay.w(j)] = 1.0;
    lp.add_row(std::move(c), Relation::equal, 1.0);
  }

  // (f) complementarity, approximation side: either the row is tight or its
  // multiplier vanishes.
  for (std::size_t i = 0; i < L; ++i) {
    auto c = blank();
    for (std::size_t j = 0; j < m; ++j) c[lay.w(j)] = R[i][j];
    c[lay.v()] = -1.0;
    c[lay.mu_b(i)] = -model.big_m_mu;
    lp.add_row(std::move(c), Relation::less_equal, 0.0);
  }
  for (std::size_t i = 0; i < L; ++i) {
    auto c = blank();
    c[lay.mu(i)] = 1.0;
    c[lay.mu_b(i)] = 1.0;
    lp.add_row(std::move(c), Relation::less_equal, 1.0);
  }

  // (f) complementarity, nonnegativity side: w_j > 0 forces nu_j = 0.
  for (std::size_t j = 0; j < m; ++j) {
    auto c = blank();
    c[lay.w(j)] = 1.0;
    c[lay.nu_b(j)] = -1.0;
    lp.add_row(std::move(c), Relation::less_equal, 0.0);
  }
  for (std::size_t j = 0; j < m; ++j) {
    auto c = blank();
    c[lay.nu(j)] = 1.0;
    c[lay.nu_b(j)] = model.big_m_nu;
    lp.add_row(std::move(c), Relation::less_equal, model.big_m_nu);
  }

  milp.validate();
  return milp;
}

// Outcome of one weight-selection solve. The weight is reported in original
// units (ready for the oracle); everything else lives in the unit space the
// MILP was posed in, which is where the KKT invariants below are stated.
struct WeightSelectionResult {
  WeightVector weight;        // original units
  WeightVector weight_unit;   // unit space, the MILP's w
  double mu = 0.0;            // MILP optimum; the estimation error
  ObjectiveVector r_low;      // unit space
  double v = 0.0;             // unit space
  std::vector<double> duals_mu;
  std::vector<double> duals_nu;
  double xi = 0.0;
  std::vector<int> mu_binary;
  std::vector<int> nu_binary;
  std::size_t node_count = 0;
};

struct KktResiduals {
  double stationarity = 0.0;       // inf-norm of r_low - sum mu_i r^i - nu + xi 1
  double mu_simplex = 0.0;         // |sum mu_i - 1|
  double complementarity_mu = 0.0; // max_i mu_i (w'r^i - v)
  double complementarity_nu = 0.0; // max_j nu_j w_j
  double gap_identity = 0.0;       // |mu - (v - w'r_low)|
  double xi_identity = 0.0;        // |mu - xi|

  double worst() const {
    return std::max({stationarity, mu_simplex, complementarity_mu, complementarity_nu,
                     gap_identity, xi_identity});
  }
};

inline KktResiduals kkt_residuals(const WeightSelectionModel& model,
                                  const WeightSelectionResult& result) {
  const std::size_t m = model.num_objectives(), L = model.size();
  KktResiduals res;
  for (std::size_t j = 0; j < m; ++j) {
    double s = result.r_low[j] - result.duals_nu[j] + result.xi;
    for (std::size_t i = 0; i < L; ++i) s -= result.duals_mu[i] * model.points_unit[i][j];
    res.stationarity = std::max(res.stationarity, std::abs(s));
  }
  double mu_sum = 0.0;
  for (double x : result.duals_mu) mu_sum += x;
  res.mu_simplex = std::abs(mu_sum - 1.0);
  for (std::size_t i = 0; i < L; ++i) {
    const double slack = dot(result.weight_unit, model.points_unit[i]) - result.v;
    res.complementarity_mu = std::max(res.complementarity_mu,
                                      std::abs(result.duals_mu[i] * slack));
  }
  for (std::size_t j = 0; j < m; ++j) {
    res.complementarity_nu = std::max(res.complementarity_nu,
                                      std::abs(result.duals_nu[j] * result.weight_unit[j]));
  }
  res.gap_identity = std::abs(result.mu - (result.v - dot(result.weight_unit, result.r_low)));
  res.xi_identity = std::abs(result.mu - result.xi);
  return res;
}

// MILP hit its node budget before certifying optimality. Carries the best
// incumbent so callers can salvage a partial run.
class SolverTimeout : public SolverFailure {
 public:
  SolverTimeout(const std::string& what, std::vector<WeightSelectionResult> incumbent)
      : SolverFailure(what), incumbent_(std::move(incumbent)) {}

  // Empty when the budget expired before any integral point was found.
  const std::vector<WeightSelectionResult>& incumbent() const { return incumbent_; }

 private:
  std::vector<WeightSelectionResult> incumbent_;
};

namespace detail {

inline WeightSelectionResult unpack_weight_result(const WeightSelectionModel& model,
                                                  const MilpResult& milp) {
  const MilpLayout lay = weight_milp_layout(model);
  WeightSelectionResult out;
  std::vector<double> w_unit(lay.m);
  for (std::size_t j = 0; j < lay.m; ++j) {
    w_unit[j] = std::clamp(milp.values[lay.w(j)], 0.0, 1.0);
  }
  out.weight_unit = WeightVector(std::move(w_unit));
  out.weight = model.normalization.weight_from_unit(out.weight_unit);
  out.mu = milp.objective_value;
  out.r_low.resize(lay.m);
  for (std::size_t j = 0; j < lay.m; ++j) out.r_low[j] = milp.values[lay.r_low(j)];
  out.v = milp.values[lay.v()];
  out.duals_mu.resize(lay.L);
  for (std::size_t i = 0; i < lay.L; ++i) out.duals_mu[i] = milp.values[lay.mu(i)];
  out.duals_nu.resize(lay.m);
  for (std::size_t j = 0; j < lay.m; ++j) out.duals_nu[j] = milp.values[lay.nu(j)];
  out.xi = milp.values[lay.xi()];
  out.mu_binary.resize(lay.L);
  for (std::size_t i = 0; i < lay.L; ++i) {
    out.mu_binary[i] = static_cast<int>(std::lround(milp.values[lay.mu_b(i)]));
  }
  out.nu_binary.resize(lay.m);
  for (std::size_t j = 0; j < lay.m; ++j) {
    out.nu_binary[j] = static_cast<int>(std::lround(milp.values[lay.nu_b(j)]));
  }
  out.node_count = milp.node_count;
  return out;
}

}  // namespace detail

// Solve the weight-selection MILP and return the certified-optimal weight,
// after checking the KKT invariants that make the reformulation trustworthy.
inline WeightSelectionResult next_weight(const WeightSelectionModel& model,
                                         const BnbOptions& options = {},
                                         double kkt_tol = 1e-6) {
  const MilpModel milp = build_weight_milp(model);
  const MilpResult solved = branch_and_bound(milp, options);
  if (solved.status == MilpStatus::infeasible || solved.status == MilpStatus::unbounded) {
    // Feasible by construction (w = any archive weight with its own KKT
    // certificate) and bounded by xi <= 1; reaching here means solver damage.
    throw ContractViolation("weight-selection MILP reported " +
                            std::string(solved.status == MilpStatus::infeasible ? "infeasible"
                                                                                : "unbounded"));
  }
  if (solved.status == MilpStatus::iteration_limit) {
    std::vector<WeightSelectionResult> incumbent;
    if (!solved.values.empty()) incumbent.push_back(detail::unpack_weight_result(model, solved));
    throw SolverTimeout("weight-selection MILP hit its node budget (" +
                            std::to_string(solved.node_count) + " nodes)",
                        std::move(incumbent));
  }
  WeightSelectionResult out = detail::unpack_weight_result(model, solved);
  const KktResiduals res = kkt_residuals(model, out);
  if (!(res.worst() < kkt_tol)) {
    throw ContractViolation("weight-selection KKT residual " + std::to_string(res.worst()) +
                            " exceeds " + std::to_string(kkt_tol));
  }
  return out;
}

}  // namespace nisekit
