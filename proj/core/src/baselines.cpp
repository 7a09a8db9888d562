#include "seedq/baselines.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

#include "seedq/cascade.hpp"
#include "seedq/errors.hpp"
#include "seedq/generators.hpp"

namespace seedq {

namespace {

void check_k(std::size_t n, std::size_t k) {
  if (k < 1) throw ParameterError("k must be at least 1");
  if (k > n) throw ParameterError("k exceeds the number of nodes");
}

struct Entry {
  double gain;
  NodeId node;
  std::size_t round;  // size of the seed set the gain was computed against
};

struct EntryOrder {
  bool operator()(const Entry& a, const Entry& b) const {
    if (a.gain != b.gain) return a.gain < b.gain;
    return a.node > b.node;
  }
};

}  // namespace

SeedResult lazy_greedy(std::size_t n, std::size_t k, const SetFunction& f) {
  check_k(n, k);
  SeedResult result;
  result.algorithm = "greedy";
  std::vector<NodeId> set;
  const double base = f(set);
  std::priority_queue<Entry, std::vector<Entry>, EntryOrder> queue;
  for (NodeId v = 0; v < n; ++v) {
    const NodeId single[] = {v};
    queue.push({f(single) - base, v, 0});
  }
  double current = base;
  while (set.size() < k) {
    Entry top = queue.top();
    queue.pop();
    if (top.round == set.size()) {
      set.push_back(top.node);
      current += top.gain;
      continue;
    }
    set.push_back(top.node);
    const double with = f(set);
    set.pop_back();
    queue.push({with - current, top.node, set.size()});
  }
  result.seeds = set;
  result.value = current;
  return result;
}

SeedResult greedy_full(const Graph& graph, std::size_t k, std::size_t n_sims, Rng& rng) {
  if (n_sims < 1) throw ParameterError("n_sims must be at least 1");
  const Rng::Token token = rng.token();
  std::uint64_t evaluation = 0;
  Rng base = rng.substream(0);
  IcSimulator sim(graph);
  SeedResult result = lazy_greedy(graph.num_nodes(), k, [&](std::span<const NodeId> s) {
    if (s.empty()) return 0.0;
    Rng eval_rng = base.substream(evaluation++);
    double total = 0.0;
    for (std::size_t i = 0; i < n_sims; ++i) {
      total += static_cast<double>(sim.run(s, eval_rng).size());
    }
    return total / static_cast<double>(n_sims);
  });
  result.algorithm = "greedy-mc";
  result.rng_token = token;
  return result;
}

SeedResult greedy_exact(const Graph& graph, std::size_t k) {
  const ExactInfluence exact(graph);
  SeedResult result =
      lazy_greedy(graph.num_nodes(), k, [&](std::span<const NodeId> s) { return exact(s); });
  result.algorithm = "greedy-exact";
  return result;
}

SeedResult random_seeds(std::size_t n, std::size_t k, Rng& rng) {
  check_k(n, k);
  SeedResult result;
  result.algorithm = "random";
  result.rng_token = rng.token();
  result.seeds = sample_without_replacement(n, k, rng);
  return result;
}

SeedResult one_hop(NominationOracle& oracle, std::size_t k, Rng& rng) {
  const std::size_t n = oracle.num_nodes();
  check_k(n, k);
  SeedResult result;
  result.algorithm = "one-hop";
  result.rng_token = rng.token();
  std::vector<char> taken(n, 0);
  const std::size_t max_attempts = n * k;
  for (std::size_t attempt = 0; result.seeds.size() < k; ++attempt) {
    if (attempt >= max_attempts) {
      throw ExhaustionError("one-hop nomination found only " +
                            std::to_string(result.seeds.size()) + " distinct nodes");
    }
    const auto v = static_cast<NodeId>(rng.below(n));
    const NodeId nominee = oracle.nominate(v, rng);
    if (taken[nominee]) continue;
    taken[nominee] = 1;
    result.seeds.push_back(nominee);
  }
  result.query_cost = oracle.ledger().snapshot();
  return result;
}

SeedResult top_degree(const Graph& graph, std::size_t k) {
  const std::size_t n = graph.num_nodes();
  check_k(n, k);
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId{0});
  std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
    return graph.out_degree(a) > graph.out_degree(b);
  });
  SeedResult result;
  result.algorithm = "degree";
  result.seeds.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
  return result;
}

}  // namespace seedq
