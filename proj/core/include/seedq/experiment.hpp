#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "seedq/graph.hpp"
#include "seedq/oracles.hpp"

namespace seedq {

struct ProfitParams {
  double seed_cost = 10.0;     // c_s
  double query_cost = 1.0;     // c_q
  double revenue = 0.1;        // r, per adopter
};

/// r * spread - c_s * k - c_q * queries. Throws ParameterError on negative input.
double profit(double spread, std::size_t k, std::uint64_t queries, const ProfitParams& params);

struct BoundValues {
  double E = 0.0;
  double C = 0.0;
  double bound = 0.0;
  double rho = 0.0;
  std::size_t initial_nodes = 0;
  std::size_t T = 0;
  std::size_t tau = 0;
};

/// Edge-query bound for probing with the accuracy-target parameters:
/// E = p tau (tau - 1) / 2, C = n rho T (E + sqrt(delta (tau ln n + ln T) E)),
/// bound = 2C + (2 + sqrt 2) T n sqrt(delta + ln T), with n rho, T and tau
/// rounded up as probe() uses them.
BoundValues edge_query_bound(std::size_t n, std::size_t k, double epsilon, double delta, double p);

struct GraphSource {
  /// Edge-list file; when empty the generator below is used.
  std::string path;
  /// er | pa | star | clique-circle | clique-isolated
  std::string generator = "pa";
  std::size_t n = 1000;
  double edge_prob = 0.01;     // er
  std::size_t m = 3;           // pa
  double mu = 0.3;             // clique-circle
  std::size_t clique_size = 100;  // clique-isolated
  bool directed = false;
  std::uint64_t seed = 1;
};

enum class Algorithm { kProbeSeed, kSpreadSeed, kLtSpreadSeed, kGreedy, kRandom, kOneHop, kDegree };

Algorithm parse_algorithm(const std::string& name);
std::string algorithm_name(Algorithm a);

struct ExperimentConfig {
  GraphSource graph;
  /// "ic" or "lt". For lt the weights are b_uv = 1 / in_degree(v) unless
  /// lt_weights = "random".
  std::string model = "ic";
  std::string lt_weights = "uniform";
  /// Cascade probability; overrides the graph's own probabilities when set.
  std::optional<double> p;

  Algorithm algorithm = Algorithm::kProbeSeed;
  std::size_t k = 5;
  double epsilon = 0.5;
  double delta = 1.0;
  std::optional<double> eps_prime;
  std::optional<double> rho;
  std::optional<std::size_t> T;
  std::optional<std::size_t> tau;
  std::optional<std::uint64_t> edge_budget;
  /// Queries per round for the spread algorithms.
  std::optional<std::size_t> rounds_rho;
  /// Total spread-query budget, split as floor(budget / k) per round.
  std::optional<std::uint64_t> spread_budget;
  std::size_t greedy_sims = 200;

  /// T | rounds_rho | budget | edge_budget | k; empty for a single point.
  std::string sweep;
  std::vector<double> sweep_values;

  std::size_t repetitions = 1;
  std::size_t eval_sims = 500;
  std::uint64_t rng_seed = 1;
  ProfitParams profit;

  /// Throws ParameterError when a field is out of range.
  void validate() const;
};

/// Flat "key = value" text with optional [section] headers; keys inside a
/// section are read as "section.key". Unknown keys throw ParseError.
ExperimentConfig parse_experiment_config(std::istream& in);
ExperimentConfig load_experiment_config(const std::string& path);

struct ExperimentRow {
  std::string sweep_value;
  std::size_t repetition = 0;
  std::string algorithm;
  std::size_t k = 0;
  std::vector<NodeId> seeds;
  double spread = 0.0;
  double spread_std_error = 0.0;
  LedgerCounts ledger;
  /// Spread, reverse or edge queries, whichever the algorithm pays for.
  std::uint64_t queries = 0;
  std::uint64_t revealed_nodes = 0;
  std::uint64_t sketch_edges = 0;
  std::optional<double> objective;
  double profit = 0.0;
  double wall_seconds = 0.0;
};

struct SweepSummary {
  std::string sweep_value;
  std::size_t repetitions = 0;
  double mean_spread = 0.0;
  double std_error = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double mean_queries = 0.0;
  double mean_profit = 0.0;
  double mean_wall_seconds = 0.0;
};

struct ExperimentResult {
  std::string sweep;
  std::vector<ExperimentRow> rows;
  std::vector<SweepSummary> summary;
};

/// Runs every (sweep point, repetition) pair in that order. Repetition r of
/// point i uses substreams of rng_seed derived from (i, r), so rows do not
/// depend on execution order.
ExperimentResult run_experiment(const ExperimentConfig& config);
/// Same on an already built graph (LT weights are derived from it).
ExperimentResult run_experiment(const ExperimentConfig& config, const Graph& graph);

Graph build_graph(const GraphSource& source, std::optional<double> p);

inline constexpr const char* kCsvSchema = "seedq.sweep.v1";

/// One row per repetition. Deterministic: wall time is left out.
void write_experiment_csv(std::ostream& out, const ExperimentResult& result);
/// Means and 95% intervals (mean +- 1.96 stderr) per sweep point.
void write_experiment_json(std::ostream& out, const ExperimentConfig& config,
                           const ExperimentResult& result);

}  // namespace seedq
