#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "seedq/errors.hpp"
#include "seedq/experiment.hpp"
#include "seedq/generators.hpp"

namespace seedq {
namespace {

TEST(Profit, Examples) {
  EXPECT_DOUBLE_EQ(profit(1000, 4, 44, ProfitParams{}), 16.0);
  EXPECT_DOUBLE_EQ(profit(0, 0, 0, ProfitParams{}), 0.0);
  EXPECT_DOUBLE_EQ(profit(50, 2, 7, ProfitParams{1, 2, 1}), 34.0);
  EXPECT_THROW(profit(-1, 1, 1, ProfitParams{}), ParameterError);
}

TEST(Bound, PinnedValues) {
  const BoundValues b = edge_query_bound(1000, 5, 0.5, 1.0, 0.1);
  EXPECT_EQ(b.initial_nodes, 177u);
  EXPECT_EQ(b.T, 843u);
  EXPECT_EQ(b.tau, 278u);
  EXPECT_NEAR(b.E, 3850.3, 1e-9);
  // Independent evaluation of the same closed form.
  const double E = 0.1 * 278 * 277 / 2.0;
  const double C = 177.0 * 843 * (E + std::sqrt((278 * std::log(1000.0) + std::log(843.0)) * E));
  EXPECT_NEAR(b.C, C, 1e-6 * C);
  EXPECT_NEAR(b.C, 980949932.606543, 1e-3);
  EXPECT_NEAR(b.bound, 2 * C + (2 + std::sqrt(2.0)) * 843 * 1000 * std::sqrt(1 + std::log(843.0)),
              1e-6 * b.bound);
  EXPECT_NEAR(b.bound, 1969905644.7965639, 1e-2);
}

TEST(Bound, ZeroProbabilityLeavesOnlyTheAdditiveTerm) {
  const BoundValues b = edge_query_bound(1000, 5, 0.5, 1.0, 0.0);
  EXPECT_DOUBLE_EQ(b.E, 0.0);
  EXPECT_DOUBLE_EQ(b.C, 0.0);
  EXPECT_NEAR(b.bound, (2 + std::sqrt(2.0)) * 843 * 1000 * std::sqrt(1 + std::log(843.0)), 1e-3);
  EXPECT_THROW(edge_query_bound(1000, 5, 0.5, 1.0, 1.5), ParameterError);
}

TEST(Bound, TauOneGivesNoEdgeTerm) {
  // epsilon = 1 forces tau = 1.
  const BoundValues b = edge_query_bound(100, 2, 1.0, 1.0, 0.5);
  EXPECT_EQ(b.tau, 1u);
  EXPECT_DOUBLE_EQ(b.E, 0.0);
}

TEST(Config, ParsesSectionsAndLists) {
  std::istringstream in(R"(
[graph]
generator = er
n = 80
edge_prob = 0.05
seed = 3

[model]
type = ic
p = 0.2

[algorithm]
name = probe-seed
k = 3
epsilon = 0.4
T = 4

[sweep]
param = T
values = 0, 1, 2

[run]
repetitions = 2
eval_sims = 50
seed = 9
)");
  const ExperimentConfig c = parse_experiment_config(in);
  EXPECT_EQ(c.graph.generator, "er");
  EXPECT_EQ(c.graph.n, 80u);
  EXPECT_DOUBLE_EQ(*c.p, 0.2);
  EXPECT_EQ(c.algorithm, Algorithm::kProbeSeed);
  EXPECT_EQ(c.k, 3u);
  EXPECT_EQ(*c.T, 4u);
  EXPECT_EQ(c.sweep, "T");
  EXPECT_EQ(c.sweep_values, (std::vector<double>{0, 1, 2}));
  EXPECT_EQ(c.repetitions, 2u);
  EXPECT_EQ(c.rng_seed, 9u);
}

TEST(Config, Errors) {
  std::istringstream unknown("[algorithm]\nname = probe-seed\nkk = 3\n");
  EXPECT_THROW(parse_experiment_config(unknown), ParseError);
  std::istringstream bad_number("[algorithm]\nk = three\n");
  EXPECT_THROW(parse_experiment_config(bad_number), ParseError);
  std::istringstream bad_algorithm("[algorithm]\nname = magic\n");
  EXPECT_THROW(parse_experiment_config(bad_algorithm), ParameterError);
  std::istringstream half_sweep("[sweep]\nparam = T\n");
  EXPECT_THROW(parse_experiment_config(half_sweep), ParameterError);
  EXPECT_EQ(algorithm_name(parse_algorithm("lt-spread-seed")), "lt-spread-seed");
}

ExperimentConfig small_sweep() {
  ExperimentConfig c;
  c.graph.generator = "er";
  c.graph.n = 60;
  c.graph.edge_prob = 0.06;
  c.graph.seed = 2;
  c.p = 0.3;
  c.algorithm = Algorithm::kProbeSeed;
  c.k = 3;
  c.epsilon = 0.5;
  c.tau = 20;
  c.sweep = "T";
  c.sweep_values = {0, 2, 5};
  c.repetitions = 3;
  c.eval_sims = 100;
  c.rng_seed = 4;
  return c;
}

std::string csv_of(const ExperimentResult& r) {
  std::ostringstream out;
  write_experiment_csv(out, r);
  return out.str();
}

TEST(Experiment, RerunIsByteIdentical) {
  const ExperimentConfig c = small_sweep();
  const std::string a = csv_of(run_experiment(c));
  const std::string b = csv_of(run_experiment(c));
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.rfind("#schema=seedq.sweep.v1\n", 0), 0u);
}

TEST(Experiment, RowsAndLedger) {
  const ExperimentConfig c = small_sweep();
  const ExperimentResult r = run_experiment(c);
  ASSERT_EQ(r.rows.size(), 9u);
  ASSERT_EQ(r.summary.size(), 3u);
  for (const ExperimentRow& row : r.rows) {
    EXPECT_EQ(row.seeds.size(), 3u);
    EXPECT_EQ(row.queries, row.ledger.edge_reveals());
    EXPECT_DOUBLE_EQ(row.profit, profit(row.spread, 3, row.queries, c.profit));
    if (row.sweep_value == "0") {
      // No copies: random seeding, nothing queried.
      EXPECT_EQ(row.algorithm, "random");
      EXPECT_EQ(row.queries, 0u);
    } else {
      EXPECT_EQ(row.algorithm, "probe-seed");
      EXPECT_GT(row.queries, 0u);
    }
  }
  for (const SweepSummary& s : r.summary) {
    EXPECT_NEAR(s.ci_high - s.mean_spread, 1.96 * s.std_error, 1e-9);
  }
}

TEST(Experiment, SpreadBudgetSplitsPerRound) {
  ExperimentConfig c;
  c.graph.generator = "er";
  c.graph.n = 40;
  c.graph.edge_prob = 0.1;
  c.p = 0.2;
  c.algorithm = Algorithm::kSpreadSeed;
  c.k = 4;
  c.sweep = "budget";
  c.sweep_values = {3, 41};
  c.eval_sims = 20;
  const ExperimentResult r = run_experiment(c);
  ASSERT_EQ(r.rows.size(), 2u);
  EXPECT_EQ(r.rows[0].algorithm, "random");
  EXPECT_EQ(r.rows[1].queries, 40u);
}

TEST(Experiment, JsonSummary) {
  ExperimentConfig c = small_sweep();
  c.sweep_values = {2};
  const ExperimentResult r = run_experiment(c);
  std::ostringstream out;
  write_experiment_json(out, c, r);
  const auto doc = nlohmann::json::parse(out.str());
  EXPECT_EQ(doc.at("schema"), "seedq.sweep.v1");
  ASSERT_TRUE(doc.contains("points"));
}

}  // namespace
}  // namespace seedq
