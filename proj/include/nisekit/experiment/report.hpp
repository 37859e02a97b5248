#pragma once

#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "nisekit/core/errors.hpp"
#include "nisekit/core/types.hpp"

namespace nisekit {

// Raised for configuration mistakes the user can fix (maps to the usage exit
// code in the CLI, as opposed to solver or data failures).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// What to optimize: either generator parameters or a path to a serialized
// instance. `seed` here is the instance seed; the run seed lives in RunConfig.
struct ProblemSpec {
  std::string type;           // "knapsack" | "quadratic" | "multilabel"
  std::string instance_path;  // when set, overrides the generator fields
  std::size_t q = 0;
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t d = 0;
  std::size_t L = 0;
  double c = 0.5;
  std::uint64_t seed = 0;
};

struct RunConfig {
  ProblemSpec problem;
  std::string algorithm = "monise";  // "nise" | "monise" | "random-weights"
  double mu_stop = 1e-3;
  std::size_t max_iter = 0;         // 0 = algorithm default
  std::size_t solution_budget = 0;  // oracle calls for random-weights
  std::uint64_t seed = 0;           // run seed: baseline sampling, MC hypervolume
  std::size_t hv_samples = 200000;  // Monte-Carlo sample count when m > 8
  std::string output_path;
};

struct RunReport {
  RunConfig config;
  nlohmann::ordered_json instance;  // materialized instance, self-contained
  std::string instance_digest;
  std::size_t m = 0;
  std::string status = "ok";  // "ok" | "timeout"
  std::vector<WeightedSolution> solutions;  // weights + objectives only
  std::vector<double> mu_history;
  double oracle_seconds = 0.0;
  double weight_selection_seconds = 0.0;
  double total_seconds = 0.0;
  double hv_value = 0.0;
  ObjectiveVector hv_reference;
  std::string hv_mode;  // "exact" | "monte_carlo" | "none"
  std::size_t hv_samples = 0;
  std::uint64_t hv_seed = 0;
  double hv_standard_error = 0.0;
  std::size_t baseline_skipped = 0;  // oracle failures skipped by the baseline
};

// FNV-1a over the canonical instance serialization; two reports compare only
// if these match.
inline std::string instance_digest(const nlohmann::ordered_json& instance) {
  const std::string text = instance.dump();
  std::uint64_t hash = 1469598103934665603ull;
  for (unsigned char ch : text) {
    hash ^= ch;
    hash *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return std::string(buf);
}

inline nlohmann::ordered_json problem_spec_to_json(const ProblemSpec& p) {
  nlohmann::ordered_json j;
  j["type"] = p.type;
  j["instance_path"] = p.instance_path;
  j["q"] = p.q;
  j["m"] = p.m;
  j["n"] = p.n;
  j["d"] = p.d;
  j["L"] = p.L;
  j["c"] = p.c;
  j["seed"] = p.seed;
  return j;
}

inline ProblemSpec problem_spec_from_json(const nlohmann::ordered_json& j) {
  ProblemSpec p;
  p.type = j.at("type").get<std::string>();
  p.instance_path = j.at("instance_path").get<std::string>();
  p.q = j.at("q").get<std::size_t>();
  p.m = j.at("m").get<std::size_t>();
  p.n = j.at("n").get<std::size_t>();
  p.d = j.at("d").get<std::size_t>();
  p.L = j.at("L").get<std::size_t>();
  p.c = j.at("c").get<double>();
  p.seed = j.at("seed").get<std::uint64_t>();
  return p;
}

inline nlohmann::ordered_json run_config_to_json(const RunConfig& c) {
  nlohmann::ordered_json j;
  j["problem"] = problem_spec_to_json(c.problem);
  j["algorithm"] = c.algorithm;
  j["mu_stop"] = c.mu_stop;
  j["max_iter"] = c.max_iter;
  j["solution_budget"] = c.solution_budget;
  j["seed"] = c.seed;
  j["hv_samples"] = c.hv_samples;
  j["output_path"] = c.output_path;
  return j;
}

inline RunConfig run_config_from_json(const nlohmann::ordered_json& j) {
  RunConfig c;
  c.problem = problem_spec_from_json(j.at("problem"));
  c.algorithm = j.at("algorithm").get<std::string>();
  c.mu_stop = j.at("mu_stop").get<double>();
  c.max_iter = j.at("max_iter").get<std::size_t>();
  c.solution_budget = j.at("solution_budget").get<std::size_t>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.hv_samples = j.at("hv_samples").get<std::size_t>();
  c.output_path = j.at("output_path").get<std::string>();
  return c;
}

inline nlohmann::ordered_json report_to_json(const RunReport& r) {
  nlohmann::ordered_json j;
  j["config"] = run_config_to_json(r.config);
  j["instance"] = r.instance;
  j["instance_digest"] = r.instance_digest;
  j["m"] = r.m;
  j["status"] = r.status;
  j["solutions"] = nlohmann::ordered_json::array();
  for (const auto& s : r.solutions) {
    nlohmann::ordered_json sol;
    sol["weight"] = s.weight.values();
    sol["objectives"] = s.objectives;
    sol["oracle_value"] = s.oracle_value;
    j["solutions"].push_back(std::move(sol));
  }
  j["mu_history"] = r.mu_history;
  j["timing"] = {{"oracle_seconds", r.oracle_seconds},
                 {"weight_selection_seconds", r.weight_selection_seconds},
                 {"total_seconds", r.total_seconds}};
  j["hypervolume"] = {{"value", r.hv_value},         {"reference", r.hv_reference},
                      {"mode", r.hv_mode},           {"samples", r.hv_samples},
                      {"seed", r.hv_seed},           {"standard_error", r.hv_standard_error}};
  j["baseline_skipped"] = r.baseline_skipped;
  return j;
}

inline RunReport report_from_json(const nlohmann::ordered_json& j) {
  RunReport r;
  r.config = run_config_from_json(j.at("config"));
  r.instance = j.at("instance");
  r.instance_digest = j.at("instance_digest").get<std::string>();
  r.m = j.at("m").get<std::size_t>();
  r.status = j.at("status").get<std::string>();
  for (const auto& sol : j.at("solutions")) {
    WeightedSolution s;
    s.weight = WeightVector(sol.at("weight").get<std::vector<double>>());
    s.objectives = sol.at("objectives").get<ObjectiveVector>();
    s.oracle_value = sol.at("oracle_value").get<double>();
    r.solutions.push_back(std::move(s));
  }
  r.mu_history = j.at("mu_history").get<std::vector<double>>();
  r.oracle_seconds = j.at("timing").at("oracle_seconds").get<double>();
  r.weight_selection_seconds = j.at("timing").at("weight_selection_seconds").get<double>();
  r.total_seconds = j.at("timing").at("total_seconds").get<double>();
  r.hv_value = j.at("hypervolume").at("value").get<double>();
  r.hv_reference = j.at("hypervolume").at("reference").get<ObjectiveVector>();
  r.hv_mode = j.at("hypervolume").at("mode").get<std::string>();
  r.hv_samples = j.at("hypervolume").at("samples").get<std::size_t>();
  r.hv_seed = j.at("hypervolume").at("seed").get<std::uint64_t>();
  r.hv_standard_error = j.at("hypervolume").at("standard_error").get<double>();
  r.baseline_skipped = j.at("baseline_skipped").get<std::size_t>();
  return r;
}

}  // namespace nisekit
