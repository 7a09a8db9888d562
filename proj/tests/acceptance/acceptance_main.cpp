// One PASS/FAIL line per acceptance criterion. Exit status is nonzero when any
// criterion fails. All tolerances are pinned below; all randomness is seeded.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "seedq/baselines.hpp"
#include "seedq/cascade.hpp"
#include "seedq/experiment.hpp"
#include "seedq/generators.hpp"
#include "seedq/oracles.hpp"
#include "seedq/probe.hpp"
#include "seedq/sketch_seed.hpp"
#include "seedq/spread_seed.hpp"
#include "unit/test_util.hpp"

namespace {

using namespace seedq;

constexpr double kSigma = 4.0;                  // z-score tolerance for statistical checks
constexpr double kOneMinusInvE = 1.0 - 1.0 / M_E;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* format, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

struct Corpus {
  std::vector<Graph> graphs;
};

// Criteria 1, 2 and 11 share one corpus: n <= 10, |E| <= 16, p cycling
// through {0.2, 0.5, 0.9}.
const Corpus& corpus() {
  static const Corpus c = [] {
    Corpus out;
    Rng rng(20240601);
    const double ps[] = {0.2, 0.5, 0.9};
    for (std::size_t i = 0; i < 200; ++i) {
      out.graphs.push_back(testing::random_tiny_graph(rng, 10, 16, ps[i % 3]));
    }
    return out;
  }();
  return c;
}

std::vector<NodeId> random_set(Rng& rng, std::size_t n, std::size_t max_size) {
  const std::size_t size = 1 + rng.below(std::min(n, max_size));
  return sample_without_replacement(n, size, rng);
}

Outcome criterion1() {
  Rng rng(1);
  std::size_t pairs = 0;
  std::size_t ok = 0;
  for (const Graph& g : corpus().graphs) {
    const ExactInfluence exact(g);
    for (int s = 0; s < 3; ++s) {
      const std::vector<NodeId> seeds = random_set(rng, g.num_nodes(), 3);
      Rng sim_rng = rng.substream(pairs);
      const InfluenceEstimate est = influence_mc(g, seeds, 200000, sim_rng);
      const double truth = exact(seeds);
      ++pairs;
      if (std::abs(est.mean - truth) <= kSigma * est.std_error + 1e-9) ++ok;
    }
  }
  const double rate = static_cast<double>(ok) / static_cast<double>(pairs);
  return {rate >= 0.99, fmt("%zu/%zu (graph, seed set) pairs within 4 stderr, need >= 99%%", ok,
                            pairs)};
}

Outcome criterion2() {
  std::size_t instances = 0;
  std::size_t ok = 0;
  double worst = 1.0;
  for (const Graph& g : corpus().graphs) {
    const ExactInfluence exact(g);
    for (std::size_t k = 1; k <= std::min<std::size_t>(3, g.num_nodes()); ++k) {
      double best = 0.0;
      for (const auto& s : testing::subsets(g.num_nodes(), k)) best = std::max(best, exact(s));
      const double got = exact(greedy_exact(g, k).seeds);
      ++instances;
      worst = std::min(worst, got / best);
      if (got >= kOneMinusInvE * best - 1e-9) ++ok;
    }
  }
  return {ok == instances,
          fmt("%zu/%zu instances reach (1-1/e) of optimum, worst ratio %.4f", ok, instances,
              worst)};
}

Outcome criterion3() {
  const std::size_t n = 50;
  const Graph g = gen_erdos_renyi(n, 0.1, 33, 0.3);
  Rng set_rng(3);
  std::vector<std::vector<NodeId>> sets;
  for (int i = 0; i < 10; ++i) sets.push_back(random_set(set_rng, n, 5));
  std::vector<double> reference;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    Rng mc_rng = Rng(30).substream(i);
    reference.push_back(influence_mc(g, sets[i], 100000, mc_rng).mean);
  }
  ProbeParams params;
  params.rho = 1.0;
  params.copies = 20000;
  params.tau = n;
  std::size_t trials = 0;
  std::size_t ok = 0;
  double worst = 0.0;
  for (std::uint64_t sketch_id = 0; sketch_id < 4; ++sketch_id) {
    EdgeQueryOracle oracle(g);
    Rng probe_rng = Rng(31).substream(sketch_id);
    const Sketch sketch = probe(oracle, params, probe_rng);
    for (std::size_t i = 0; i < sets.size(); ++i) {
      const double diff = std::abs(sketch_coverage_value(sketch, sets[i]) - reference[i]);
      worst = std::max(worst, diff);
      ++trials;
      if (diff <= 0.05 * static_cast<double>(n)) ++ok;
    }
  }
  return {static_cast<double>(ok) >= 0.95 * static_cast<double>(trials),
          fmt("%zu/%zu coverage estimates within 0.05 n = 2.5, worst gap %.3f", ok, trials,
              worst)};
}

Sketch random_sketch(Rng& rng, std::size_t n, std::size_t copies) {
  std::vector<NodeId> all(n);
  std::iota(all.begin(), all.end(), NodeId{0});
  Sketch s(n, false, all, copies);
  for (std::size_t c = 0; c < copies; ++c) {
    std::vector<NodeId> order = all;
    for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
    const std::size_t used = 1 + rng.below(n);
    for (std::size_t pos = 0; pos < used;) {
      const std::size_t size = std::min<std::size_t>(used - pos, 1 + rng.below(4));
      std::vector<NodeId> members(order.begin() + static_cast<std::ptrdiff_t>(pos),
                                  order.begin() + static_cast<std::ptrdiff_t>(pos + size));
      s.add_group(c, members, static_cast<std::uint32_t>(1 + rng.below(5)));
      pos += size;
    }
  }
  s.finalize();
  return s;
}

// Greedy by full re-evaluation of the coverage objective.
double reference_greedy_value(const Sketch& s, std::size_t k) {
  std::vector<NodeId> chosen;
  for (std::size_t step = 0; step < k; ++step) {
    double best = -1.0;
    NodeId arg = 0;
    for (NodeId v = 0; v < s.num_nodes(); ++v) {
      if (std::find(chosen.begin(), chosen.end(), v) != chosen.end()) continue;
      auto with = chosen;
      with.push_back(v);
      const double value = sketch_coverage_value(s, with);
      if (value > best + 1e-12) {
        best = value;
        arg = v;
      }
    }
    chosen.push_back(arg);
  }
  return sketch_coverage_value(s, chosen);
}

Outcome criterion4() {
  Rng rng(4);
  const double eps_prime = 0.2;
  std::size_t exhaustive_ok = 0;
  std::size_t sampled_ok = 0;
  const std::size_t trials = 500;
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t n = 3 + rng.below(10);
    const Sketch s = random_sketch(rng, n, 1 + rng.below(4));
    const std::size_t k = 1 + rng.below(3);
    if (std::abs(*seed_from_sketch_exhaustive(s, k).value - reference_greedy_value(s, k)) < 1e-9) {
      ++exhaustive_ok;
    }
    double opt = 0.0;
    for (const auto& set : testing::subsets(n, k)) {
      opt = std::max(opt, sketch_coverage_value(s, set));
    }
    Rng seed_rng = rng.substream(t);
    const double got = *seed_from_sketch(s, k, eps_prime, seed_rng).value;
    if (got >= (kOneMinusInvE - eps_prime) * opt - 1e-9) ++sampled_ok;
  }
  return {exhaustive_ok == trials && static_cast<double>(sampled_ok) >= 0.9 * trials,
          fmt("exhaustive equals greedy in %zu/%zu; sampled reaches (1-1/e-0.2) opt in %zu/%zu, "
              "need >= 90%%",
              exhaustive_ok, trials, sampled_ok, trials)};
}

Outcome criterion5() {
  const Graph g = gen_star(100, false, 0.3);
  std::size_t center = 0;
  for (std::uint64_t run = 0; run < 100; ++run) {
    SpreadQueryOracle oracle(g);
    Rng rng = Rng(5).substream(run);
    if (spread_seed(oracle, 1, 5000, rng).seeds[0] == 0) ++center;
  }
  return {center >= 99, fmt("center selected in %zu/100 runs, need >= 99", center)};
}

Outcome criterion6() {
  Rng graph_rng(6);
  const std::size_t rounds = 10000;
  std::size_t checked = 0;
  std::size_t ok = 0;
  double worst_z = 0.0;
  for (std::uint64_t gi = 0; gi < 20; ++gi) {
    const Graph g = testing::random_tiny_graph(graph_rng, 8, 12, 0.2 + 0.7 * graph_rng.uniform());
    const std::size_t n = g.num_nodes();
    const std::size_t rho = n;
    const ExactInfluence exact(g);
    SpreadQueryOracle oracle(g);
    std::vector<double> sum(n, 0.0), sum_sq(n, 0.0);
    Rng rng = Rng(60).substream(gi);
    for (std::size_t r = 0; r < rounds; ++r) {
      const SpreadRound round = spread_round(oracle, {}, rho, rng);
      for (NodeId u = 0; u < n; ++u) {
        const double x = static_cast<double>(n) / static_cast<double>(rho) * round.counts[u];
        sum[u] += x;
        sum_sq[u] += x * x;
      }
    }
    for (NodeId u = 0; u < n; ++u) {
      const double mean = sum[u] / rounds;
      const double var = std::max(0.0, (sum_sq[u] - sum[u] * mean) / (rounds - 1.0));
      const double se = std::sqrt(var / rounds);
      const NodeId single[] = {u};
      const double diff = std::abs(mean - exact(single));
      ++checked;
      if (se > 0) worst_z = std::max(worst_z, diff / se);
      if (diff <= kSigma * se + 1e-9) ++ok;
    }
  }
  return {ok == checked, fmt("%zu/%zu nodes within 4 sigma, worst |z| %.2f", ok, checked, worst_z)};
}

Outcome criterion7() {
  // (a) Clique circle below the query threshold.
  const double mu = 0.3;
  const std::size_t runs = 10000;
  double sum = 0.0, sum_sq = 0.0;
  std::uint64_t budget = 0;
  double threshold = 0.0;
  std::uint64_t max_queries = 0;
  for (std::uint64_t run = 0; run < runs; ++run) {
    const CliqueCircle cc = gen_clique_circle(900, mu, 7000 + run, 1.0);
    threshold = cc.query_threshold(mu);
    budget = static_cast<std::uint64_t>(std::floor(0.01 * threshold));
    EdgeQueryOracle::Options options;
    options.edge_budget = budget;
    EdgeQueryOracle oracle(cc.graph, options);
    Rng rng = Rng(7).substream(run);
    Rng probe_rng = rng.substream(1);
    Rng seed_rng = rng.substream(2);
    const Sketch sketch = probe(oracle, probe_params_for(900, 1, 0.5, 1.0), probe_rng);
    const SeedResult r = seed_from_sketch(sketch, 1, default_eps_prime(0.5), seed_rng);
    max_queries = std::max(max_queries, oracle.ledger().edge_reveals());
    Rng eval_rng = rng.substream(3);
    const double spread = static_cast<double>(simulate_ic(cc.graph, r.seeds, eval_rng).size());
    sum += spread;
    sum_sq += spread * spread;
  }
  const double mean = sum / runs;
  const double se = std::sqrt(std::max(0.0, (sum_sq - sum * mean) / (runs - 1.0)) / runs);
  const bool a = mean <= 2.0 * 9.0 && max_queries <= budget;

  // (b) Clique plus isolated nodes with 50 spread queries.
  const Graph g = gen_clique_plus_isolated(10000, 100, 71, 1.0);
  const std::size_t hit_runs = 1000;
  std::size_t hits = 0;
  for (std::uint64_t run = 0; run < hit_runs; ++run) {
    SpreadQueryOracle oracle(g);
    Rng rng = Rng(72).substream(run);
    const SpreadRound round = spread_round(oracle, {}, 50, rng);
    const bool hit = std::any_of(round.initial_nodes.begin(), round.initial_nodes.end(),
                                 [&](NodeId u) { return g.degree(u) > 0; });
    if (hit) ++hits;
  }
  const double q = 1.0 - std::pow(0.99, 50);
  const double rate = static_cast<double>(hits) / hit_runs;
  const double sigma = std::sqrt(q * (1 - q) / hit_runs);
  const bool b = std::abs(rate - q) <= kSigma * sigma;
  return {a && b,
          fmt("(a) budget %llu of threshold %.3f, mean spread %.2f +- %.2f over %zu runs, need "
              "<= 18 (optimum 90); (b) clique hit rate %.3f vs %.3f, 4 sigma = %.3f",
              static_cast<unsigned long long>(budget), threshold, mean, se, runs, rate, q,
              kSigma * sigma)};
}

Outcome criterion8() {
  const std::size_t n = 2000;
  const Graph base = gen_preferential_attachment(n, 4, 8, 1.0);
  std::string detail;
  bool pass = true;
  for (double p : {0.01, 0.1}) {
    const Graph g = base.with_uniform_prob(p);
    const BoundValues bound = edge_query_bound(n, 5, 0.5, 1.0, p);
    const ProbeParams params = probe_params_for(n, 5, 0.5, 1.0);
    std::size_t within = 0;
    std::uint64_t largest = 0;
    for (std::uint64_t run = 0; run < 100; ++run) {
      EdgeQueryOracle oracle(g);
      Rng rng = Rng(80).substream(run);
      probe(oracle, params, rng);
      const std::uint64_t used = oracle.ledger().edge_reveals();
      largest = std::max(largest, used);
      if (static_cast<double>(used) <= bound.bound) ++within;
    }
    pass = pass && within >= 95;
    detail += fmt("p=%.2f: %zu/100 runs within bound %.4g (max ledger %llu); ", p, within,
                  bound.bound, static_cast<unsigned long long>(largest));
  }
  detail += "need >= 95";
  return {pass, detail};
}

// Non-decreasing within 2 combined standard errors between neighbors, and
// the last doubling gains less than a quarter of the first.
struct CurveCheck {
  bool pass = false;
  std::string detail;
};

CurveCheck check_curve(const ExperimentResult& r, std::size_t first_index) {
  const auto& s = r.summary;
  bool monotone = true;
  for (std::size_t i = first_index + 1; i < s.size(); ++i) {
    const double tol = 2.0 * std::hypot(s[i].std_error, s[i - 1].std_error);
    if (s[i].mean_spread < s[i - 1].mean_spread - tol) monotone = false;
  }
  const double first_gain = s[first_index + 1].mean_spread - s[first_index].mean_spread;
  const double last_gain = s.back().mean_spread - s[s.size() - 2].mean_spread;
  const bool plateau = first_gain > 0 && last_gain < 0.25 * first_gain;
  std::string curve;
  for (const auto& p : s) curve += fmt("%s:%.1f ", p.sweep_value.c_str(), p.mean_spread);
  return {monotone && plateau,
          fmt("%sfirst gain %.2f, last gain %.2f (ratio %.3f)%s", curve.c_str(), first_gain,
              last_gain, last_gain / first_gain, monotone ? "" : ", not monotone")};
}

Outcome criterion9() {
  const Graph g = gen_preferential_attachment(2000, 4, 7, 0.08);
  ExperimentConfig probe_cfg;
  probe_cfg.algorithm = Algorithm::kProbeSeed;
  probe_cfg.k = 5;
  probe_cfg.epsilon = 0.5;
  probe_cfg.rho = 0.05;  // 100 initial nodes
  probe_cfg.sweep = "T";
  probe_cfg.sweep_values = {0, 1, 2, 4, 8, 16, 32, 64, 128, 256};
  probe_cfg.repetitions = 50;
  probe_cfg.eval_sims = 500;
  probe_cfg.rng_seed = 9;
  // Index 1 is T = 1; T = 0 is the random-seeding baseline.
  const CurveCheck t = check_curve(run_experiment(probe_cfg, g), 1);

  ExperimentConfig spread_cfg = probe_cfg;
  spread_cfg.algorithm = Algorithm::kSpreadSeed;
  spread_cfg.rho.reset();
  spread_cfg.sweep = "budget";
  spread_cfg.sweep_values = {5, 10, 20, 40, 80, 160, 320, 640, 1280, 2560, 5120};
  const CurveCheck b = check_curve(run_experiment(spread_cfg, g), 0);
  return {t.pass && b.pass, "vs T: " + t.detail + "; vs budget: " + b.detail};
}

Outcome criterion10() {
  const ProfitParams params{10.0, 1.0, 0.1};
  struct Row {
    double spread;
    std::size_t k;
    std::uint64_t q;
    double expected;
  };
  // Expected values computed by hand.
  const Row rows[] = {{1000, 4, 44, 16.0},  {0, 0, 0, 0.0},      {2000, 2, 100, 80.0},
                      {500, 10, 0, -50.0},  {3000, 10, 200, 0.0}, {1500, 4, 10, 100.0}};
  std::size_t ok = 0;
  for (const Row& r : rows) {
    const double expected = 0.1 * r.spread - 10.0 * static_cast<double>(r.k) -
                            1.0 * static_cast<double>(r.q);
    const double got = profit(r.spread, r.k, r.q, params);
    if (got == expected && std::abs(got - r.expected) < 1e-9) ++ok;
  }
  const std::size_t total = sizeof rows / sizeof rows[0];
  return {ok == total, fmt("%zu/%zu profit examples exact", ok, total)};
}

Outcome criterion11() {
  const std::size_t sims = 20000;
  std::size_t compared = 0;
  std::size_t ok = 0;
  double worst_z = 0.0;
  std::uint64_t max_cost = 0;
  bool cost_ok = true;
  Rng rng(11);
  std::uint64_t gi = 0;
  for (const Graph& undirected : corpus().graphs) {
    const Graph g = undirected.as_directed();
    const std::size_t n = g.num_nodes();
    Rng weight_rng = rng.substream(gi);
    const WeightedLTGraph lt = random_lt_weights(g, weight_rng);
    const std::vector<NodeId> seeds = random_set(weight_rng, n, 2);
    std::vector<std::size_t> a(n, 0), b(n, 0);
    Rng ra = rng.substream(1000 + gi), rb = rng.substream(2000 + gi);
    for (std::size_t s = 0; s < sims; ++s) {
      for (NodeId v : simulate_lt(lt, seeds, ra, LtMode::kThresholds).adopters) ++a[v];
      for (NodeId v : simulate_lt(lt, seeds, rb, LtMode::kTriggering).adopters) ++b[v];
    }
    for (NodeId v = 0; v < n; ++v) {
      const double pa = static_cast<double>(a[v]) / sims;
      const double pb = static_cast<double>(b[v]) / sims;
      const double pooled = (pa + pb) / 2.0;
      const double se = std::sqrt(2.0 * pooled * (1 - pooled) / sims);
      ++compared;
      if (se > 0) worst_z = std::max(worst_z, std::abs(pa - pb) / se);
      if (std::abs(pa - pb) <= kSigma * se) ++ok;
    }

    ReverseCascadeOracle oracle(lt);
    Rng trace_rng = rng.substream(3000 + gi);
    for (int t = 0; t < 200; ++t) {
      const ReverseTrace trace = oracle.query(static_cast<NodeId>(trace_rng.below(n)), trace_rng);
      max_cost = std::max(max_cost, trace.revealed_edges);
      if (trace.revealed_edges > n) cost_ok = false;
    }
    const SeedResult r = lt_spread_seed(oracle, 1, 50, trace_rng);
    if (r.query_cost.reverse_queries != 250) cost_ok = false;
    ++gi;
  }
  return {ok == compared && cost_ok,
          fmt("%zu/%zu adoption probabilities agree within 4 sigma (worst |z| %.2f); max edge "
              "cost per trace %llu (need <= n)",
              ok, compared, worst_z, static_cast<unsigned long long>(max_cost))};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"exact-oracle equivalence", criterion1},
      {"greedy guarantee", criterion2},
      {"sketch estimator consistency", criterion3},
      {"sketch seeding vs greedy", criterion4},
      {"star recovery", criterion5},
      {"marginal gain unbiasedness", criterion6},
      {"hard instances", criterion7},
      {"query bound conformance", criterion8},
      {"diminishing returns", criterion9},
      {"profit arithmetic", criterion10},
      {"linear threshold equivalence", criterion11},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failures;
    std::printf("criterion %2d %s: %s [%s] (%.1f s)\n", index, o.pass ? "PASS" : "FAIL", name,
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of 11 criteria passed\n", 11 - failures);
  return failures == 0 ? 0 : 1;
}
