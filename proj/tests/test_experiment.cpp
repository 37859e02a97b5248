#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cmath>
#include <cstddef>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "nisekit/experiment/compare.hpp"
#include "nisekit/experiment/report.hpp"
#include "nisekit/experiment/runner.hpp"
#include "nisekit/problems/instance_io.hpp"
#include "nisekit/problems/quadratic.hpp"
#include "support/test_oracles.hpp"

using namespace nisekit;

namespace {

std::filesystem::path scratch_dir() {
  static const std::filesystem::path dir = [] {
    std::filesystem::path p =
        std::filesystem::temp_directory_path() / "nisekit_experiment_tests";
    std::filesystem::create_directories(p);
    return p;
  }();
  return dir;
}

std::filesystem::path scratch_file(const std::string& name) { return scratch_dir() / name; }

// Runs the CLI binary, captures combined stdout/stderr, returns the exit code.
int run_cli(const std::string& args, std::string* output = nullptr) {
  static int counter = 0;
  const std::filesystem::path capture =
      scratch_file("cli_capture_" + std::to_string(counter++) + ".txt");
  const std::string command =
      std::string(NISEKIT_CLI_PATH) + " " + args + " > " + capture.string() + " 2>&1";
  const int raw = std::system(command.c_str());
  if (output) {
    std::ifstream in(capture);
    std::stringstream buffer;
    buffer << in.rdbuf();
    *output = buffer.str();
  }
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

// Parses the compare table: header plus one row per report, five columns.
std::vector<std::vector<std::string>> parse_table(const std::string& table) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream lines(table);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::istringstream cols(line);
    std::string cell;
    while (std::getline(cols, cell, ',')) cells.push_back(cell);
    rows.push_back(std::move(cells));
  }
  return rows;
}

RunConfig quadratic_config(std::size_t m) {
  RunConfig config;
  config.problem.type = "quadratic";
  config.problem.m = m;
  return config;
}

class AlwaysFailOracle : public OracleProblem {
 public:
  std::size_t num_objectives() const override { return 2; }
  std::string name() const override { return "always_fail"; }
  WeightedSolution weighted_optimum(const WeightVector&) const override {
    throw OracleFailure("refusing every weight");
  }
};

}  // namespace

TEST_CASE("make_oracle validates problem specs") {
  ProblemSpec unknown;
  unknown.type = "sudoku";
  REQUIRE_THROWS_AS(make_oracle(unknown), UsageError);

  ProblemSpec conflicted;
  conflicted.type = "quadratic";
  conflicted.m = 3;
  conflicted.instance_path = "somewhere.json";
  REQUIRE_THROWS_AS(make_oracle(conflicted), UsageError);

  ProblemSpec degenerate;
  degenerate.type = "quadratic";
  degenerate.m = 1;
  REQUIRE_THROWS_AS(make_oracle(degenerate), UsageError);

  ProblemSpec knapsack;
  knapsack.type = "knapsack";
  knapsack.q = 8;
  knapsack.m = 2;
  knapsack.c = 0.5;
  knapsack.seed = 3;
  const MaterializedProblem problem = make_oracle(knapsack);
  REQUIRE(problem.oracle->num_objectives() == 2);
  REQUIRE(problem.instance.at("type") == "knapsack");
}

TEST_CASE("instance files round-trip through JSON") {
  const KnapsackInstance inst = knapsack_generate(12, 3, 0.4, 99);
  const json j = knapsack_to_json(inst);
  const KnapsackInstance back = knapsack_from_json(j);
  REQUIRE(back.sizes == inst.sizes);
  REQUIRE(back.values == inst.values);
  REQUIRE(back.capacity == inst.capacity);
  REQUIRE(instance_digest(j) == instance_digest(knapsack_to_json(back)));

  const MultilabelInstance ml = synthetic_multilabel_generate(10, 2, 2, 5);
  const MultilabelInstance ml_back = multilabel_from_json(multilabel_to_json(ml));
  REQUIRE(ml_back.X == ml.X);
  REQUIRE(ml_back.Y == ml.Y);

  // Different instances get different digests.
  const json other = knapsack_to_json(knapsack_generate(12, 3, 0.4, 100));
  REQUIRE(instance_digest(j) != instance_digest(other));
}

TEST_CASE("run_experiment produces a coherent monise report") {
  RunConfig config = quadratic_config(3);
  config.max_iter = 8;
  config.output_path = scratch_file("monise_report.json").string();
  const RunReport report = run_experiment(config);

  REQUIRE(report.status == "ok");
  REQUIRE(report.m == 3);
  REQUIRE(report.hv_mode == "exact");
  REQUIRE(report.hv_value > 0.0);
  REQUIRE(report.instance_digest == instance_digest(report.instance));
  REQUIRE(report.solutions.size() <= config.max_iter + 3 + 1);
  for (std::size_t i = 1; i < report.mu_history.size(); ++i) {
    REQUIRE(report.mu_history[i] <= report.mu_history[i - 1] + 1e-8);
  }
  std::vector<ObjectiveVector> points;
  for (const auto& s : report.solutions) points.push_back(s.objectives);
  REQUIRE(points == testkit::brute_nondominated(points));

  // The written file parses back into the same report.
  const json on_disk = read_json_file(config.output_path);
  REQUIRE(on_disk == report_to_json(report));
  const RunReport parsed = report_from_json(on_disk);
  REQUIRE(report_to_json(parsed) == on_disk);
}

TEST_CASE("run_experiment runs nise on two objectives") {
  RunConfig config;
  config.problem.type = "knapsack";
  config.problem.q = 10;
  config.problem.m = 2;
  config.problem.seed = 4;
  config.algorithm = "nise";
  config.mu_stop = 1e-4;
  const RunReport report = run_experiment(config);
  REQUIRE(report.status == "ok");
  REQUIRE(report.solutions.size() >= 2);
  for (std::size_t i = 1; i < report.mu_history.size(); ++i) {
    REQUIRE(report.mu_history[i] <= report.mu_history[i - 1] + 1e-9);
  }
}

TEST_CASE("run_experiment rejects bad configurations") {
  RunConfig nise3 = quadratic_config(3);
  nise3.algorithm = "nise";
  REQUIRE_THROWS_AS(run_experiment(nise3), UsageError);

  RunConfig unknown = quadratic_config(3);
  unknown.algorithm = "simulated-annealing";
  REQUIRE_THROWS_AS(run_experiment(unknown), UsageError);

  RunConfig no_budget = quadratic_config(3);
  no_budget.algorithm = "random-weights";
  no_budget.solution_budget = 0;
  REQUIRE_THROWS_AS(run_experiment(no_budget), UsageError);

  RunConfig bad_stop = quadratic_config(3);
  bad_stop.mu_stop = 0.0;
  REQUIRE_THROWS_AS(run_experiment(bad_stop), UsageError);
}

TEST_CASE("random_weights_baseline is reproducible and honest about failures") {
  QuadraticSimplexProblem quad(3);
  const Frontier one = random_weights_baseline(quad, 1, 11);
  const Frontier two = random_weights_baseline(quad, 1, 11);
  REQUIRE(one.solutions.size() == 1);
  REQUIRE(one.solutions[0].objectives == two.solutions[0].objectives);

  AlwaysFailOracle hopeless;
  std::size_t failures = 0;
  const Frontier empty = random_weights_baseline(hopeless, 7, 1, &failures);
  REQUIRE(empty.solutions.empty());
  REQUIRE(failures == 7);

  REQUIRE_THROWS_AS(random_weights_baseline(quad, 0, 1), ContractViolation);
}

TEST_CASE("random_weights_baseline solutions satisfy the closed-form optimality") {
  QuadraticSimplexProblem quad(3);
  const Frontier frontier = random_weights_baseline(quad, 50, 17);
  for (const auto& sol : frontier.solutions) {
    // Interior stationarity: 2 w_i x_i constant across components.
    const double lambda = 2.0 * sol.weight[0] * sol.decision[0];
    for (std::size_t i = 1; i < 3; ++i) {
      REQUIRE(std::abs(2.0 * sol.weight[i] * sol.decision[i] - lambda) < 1e-8);
    }
  }
}

TEST_CASE("baseline weight sampling is uniform on the simplex") {
  QuadraticSimplexProblem quad(3);
  const Frontier frontier = random_weights_baseline(quad, 10000, 12345);
  REQUIRE(frontier.solutions.size() > 9900);  // distinct weights map to distinct points
  for (std::size_t k = 0; k < 3; ++k) {
    double mean = 0.0;
    for (const auto& sol : frontier.solutions) mean += sol.weight[k];
    mean /= static_cast<double>(frontier.solutions.size());
    // Dirichlet(1,1,1) components have sd sqrt(1/18); 3 standard errors.
    REQUIRE(std::abs(mean - 1.0 / 3.0) < 3.0 * std::sqrt(1.0 / 18.0) / 100.0 + 1e-3);
  }
}

TEST_CASE("compare_runs builds one table over a shared reference") {
  RunConfig config = quadratic_config(3);
  config.max_iter = 5;
  const RunReport monise = run_experiment(config);

  RunConfig rand_config = quadratic_config(3);
  rand_config.algorithm = "random-weights";
  rand_config.solution_budget = monise.solutions.size();
  rand_config.seed = 2;
  const RunReport random = run_experiment(rand_config);

  const std::string table = compare_runs({monise, random});
  const auto rows = parse_table(table);
  REQUIRE(rows.size() == 3);
  REQUIRE(rows[0] == std::vector<std::string>{"algorithm", "m", "solutions", "hypervolume",
                                              "seconds"});
  REQUIRE(rows[1][0] == "monise");
  REQUIRE(rows[2][0] == "random-weights");

  // Identical reports produce identical hypervolume cells.
  const auto twin_rows = parse_table(compare_runs({monise, monise}));
  REQUIRE(twin_rows[1][3] == twin_rows[2][3]);

  // Order invariance: each algorithm keeps its value when the list flips.
  const auto flipped = parse_table(compare_runs({random, monise}));
  REQUIRE(flipped[1][0] == "random-weights");
  REQUIRE(flipped[1][3] == rows[2][3]);
  REQUIRE(flipped[2][3] == rows[1][3]);

  // Reports from different instances refuse to share a table.
  RunConfig other = quadratic_config(4);
  other.max_iter = 1;
  const RunReport mismatched = run_experiment(other);
  REQUIRE_THROWS_AS(compare_runs({monise, mismatched}), DataCorruption);
}

TEST_CASE("monise beats the random baseline at equal budgets") {
  RunConfig config = quadratic_config(3);
  config.max_iter = 6;
  const RunReport monise = run_experiment(config);

  int wins = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    RunConfig rand_config = quadratic_config(3);
    rand_config.algorithm = "random-weights";
    rand_config.solution_budget = monise.solutions.size();
    rand_config.seed = seed;
    const RunReport random = run_experiment(rand_config);
    const auto rows = parse_table(compare_runs({monise, random}));
    if (std::stod(rows[1][3]) >= std::stod(rows[2][3])) ++wins;
  }
  REQUIRE(wins >= 9);
}

TEST_CASE("cli rejects nise on three objectives") {
  std::string output;
  const int rc = run_cli("run --type quadratic --m 3 --algorithm nise", &output);
  REQUIRE(rc == 2);
  REQUIRE(output.find("usage error") != std::string::npos);
}

TEST_CASE("cli rejects unknown flags and missing subcommands") {
  REQUIRE(run_cli("run --type quadratic --m 3 --algorithm monise --frobnicate") == 2);
  REQUIRE(run_cli("") == 2);
}

TEST_CASE("cli generate, run, hv and compare work end to end") {
  const std::string instance = scratch_file("cli_instance.json").string();
  std::string output;
  REQUIRE(run_cli("generate --type knapsack --q 8 --m 2 --c 0.5 --instance-seed 3 --out " +
                      instance,
                  &output) == 0);
  REQUIRE(std::filesystem::exists(instance));
  REQUIRE_NOTHROW(knapsack_from_json(read_json_file(instance)));

  // Run monise twice on the generated instance and once via quadratic.
  const std::string report_a = scratch_file("cli_report_a.json").string();
  const std::string report_b = scratch_file("cli_report_b.json").string();
  REQUIRE(run_cli("run --type knapsack --instance " + instance +
                      " --algorithm monise --max-iter 6 --out " + report_a,
                  &output) == 0);
  REQUIRE(output.find("status=ok") != std::string::npos);
  REQUIRE(run_cli("run --type knapsack --instance " + instance +
                      " --algorithm random-weights --budget 10 --seed 5 --out " + report_b,
                  &output) == 0);

  REQUIRE(run_cli("compare " + report_a + " " + report_b, &output) == 0);
  REQUIRE(output.find("algorithm,m,solutions,hypervolume,seconds") != std::string::npos);
  REQUIRE(parse_table(output).size() == 3);

  // Hypervolume of a literal point file.
  const std::string points = scratch_file("cli_points.json").string();
  {
    std::ofstream out(points);
    out << R"({"points": [[0.0, 0.5], [0.5, 0.0]], "reference": [1.0, 1.0]})" << "\n";
  }
  REQUIRE(run_cli("hv " + points, &output) == 0);
  REQUIRE(output.find("hypervolume=0.75") != std::string::npos);
  REQUIRE(output.find("mode=exact") != std::string::npos);

  // Reports feed the hv subcommand directly.
  REQUIRE(run_cli("hv " + report_a, &output) == 0);
  REQUIRE(output.find("mode=exact") != std::string::npos);
}
