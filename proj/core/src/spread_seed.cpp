#include "seedq/spread_seed.hpp"

#include <algorithm>
#include <cmath>

#include "seedq/errors.hpp"
#include "seedq/probe.hpp"

namespace seedq {

namespace {

template <typename Query>
SpreadRound run_round(std::size_t n, std::span<const NodeId> chosen, std::size_t rho, Rng& rng,
                      bool keep_traces, Query&& query) {
  if (rho < 1) throw ParameterError("rho must be at least 1");
  std::vector<char> is_chosen(n, 0);
  for (NodeId s : chosen) {
    if (s >= n) throw ParameterError("chosen seed is not a node");
    is_chosen[s] = 1;
  }
  SpreadRound round;
  round.counts.assign(n, 0);
  round.initial_nodes.reserve(rho);
  round.nulled.reserve(rho);
  if (keep_traces) round.traces.reserve(rho);
  for (std::size_t j = 0; j < rho; ++j) {
    const auto u = static_cast<NodeId>(rng.below(n));
    round.initial_nodes.push_back(u);
    std::span<const NodeId> trace = query(u);
    const bool hit = std::any_of(trace.begin(), trace.end(),
                                 [&](NodeId v) { return is_chosen[v] != 0; });
    round.nulled.push_back(hit ? 1 : 0);
    if (!hit) {
      for (NodeId v : trace) ++round.counts[v];
    }
    if (keep_traces) {
      round.traces.emplace_back();
      if (!hit) round.traces.back().assign(trace.begin(), trace.end());
    }
  }
  return round;
}

RoundSummary summarize(const SpreadRound& round, NodeId selected, bool fallback) {
  RoundSummary s;
  s.index = round.index;
  s.queries = round.initial_nodes.size();
  s.nulled = static_cast<std::size_t>(std::count(round.nulled.begin(), round.nulled.end(), 1));
  s.selected = selected;
  s.random_fallback = fallback;
  std::vector<std::pair<NodeId, std::uint32_t>> nonzero;
  for (NodeId v = 0; v < round.counts.size(); ++v) {
    if (round.counts[v] > 0) nonzero.emplace_back(v, round.counts[v]);
  }
  const std::size_t top = std::min<std::size_t>(5, nonzero.size());
  std::partial_sort(nonzero.begin(), nonzero.begin() + static_cast<std::ptrdiff_t>(top),
                    nonzero.end(), [](const auto& a, const auto& b) {
                      return a.second != b.second ? a.second > b.second : a.first < b.first;
                    });
  s.top.assign(nonzero.begin(), nonzero.begin() + static_cast<std::ptrdiff_t>(top));
  return s;
}

template <typename Round>
SeedResult run_rounds(std::size_t n, std::size_t k, std::size_t rho, Rng& rng,
                      Round&& one_round) {
  if (k < 1) throw ParameterError("k must be at least 1");
  if (k > n) throw ParameterError("k exceeds the number of nodes");
  if (rho < 1) throw ParameterError("rho must be at least 1");
  SeedResult result;
  result.rng_token = rng.token();
  for (std::size_t i = 0; i < k; ++i) {
    Rng round_rng = rng.substream(i);
    SpreadRound round = one_round(std::span<const NodeId>(result.seeds), round_rng);
    round.index = i;
    bool fallback = false;
    const NodeId chosen = select_from_counts(round.counts, result.seeds, round_rng, &fallback);
    result.rounds.push_back(summarize(round, chosen, fallback));
    result.seeds.push_back(chosen);
  }
  return result;
}

}  // namespace

double param_rho_spread_raw(std::size_t n, std::size_t k, double epsilon) {
  if (n < 2) throw ParameterError("parameter formulas need n >= 2");
  if (k < 1) throw ParameterError("parameter formulas need k >= 1");
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw ParameterError("epsilon must lie in (0, 1]");
  const double nk = static_cast<double>(n) * static_cast<double>(k);
  return 81.0 * static_cast<double>(k) * std::log(6.0 * nk / epsilon) /
         (epsilon * epsilon * epsilon);
}

std::size_t param_rho_spread(std::size_t n, std::size_t k, double epsilon) {
  return std::max<std::size_t>(1, ceil_count(param_rho_spread_raw(n, k, epsilon)));
}

SpreadRound spread_round(SpreadQueryOracle& oracle, std::span<const NodeId> chosen,
                         std::size_t rho, Rng& rng, bool keep_traces) {
  return run_round(oracle.num_nodes(), chosen, rho, rng, keep_traces,
                   [&](NodeId u) { return oracle.spread_query(u, rng); });
}

SpreadRound lt_spread_round(ReverseCascadeOracle& oracle, std::span<const NodeId> chosen,
                            std::size_t rho, Rng& rng, bool keep_traces) {
  if (oracle.model() != ReverseModel::kLinearThreshold) {
    throw ModelError("reverse-trace seeding needs a linear-threshold oracle");
  }
  ReverseTrace trace;
  return run_round(oracle.num_nodes(), chosen, rho, rng, keep_traces, [&](NodeId u) {
    trace = oracle.query(u, rng);
    return std::span<const NodeId>(trace.nodes);
  });
}

NodeId select_from_counts(std::span<const std::uint32_t> counts, std::span<const NodeId> chosen,
                          Rng& rng, bool* fallback) {
  const std::size_t n = counts.size();
  std::vector<char> is_chosen(n, 0);
  for (NodeId s : chosen) is_chosen[s] = 1;
  NodeId best = 0;
  std::uint32_t best_count = 0;
  bool found = false;
  for (NodeId v = 0; v < n; ++v) {
    if (is_chosen[v] || counts[v] <= best_count) continue;
    best = v;
    best_count = counts[v];
    found = true;
  }
  if (fallback != nullptr) *fallback = !found;
  if (found) return best;
  std::vector<NodeId> remaining;
  remaining.reserve(n);
  for (NodeId v = 0; v < n; ++v) {
    if (!is_chosen[v]) remaining.push_back(v);
  }
  if (remaining.empty()) throw ExhaustionError("no candidate left to seed");
  return remaining[rng.below(remaining.size())];
}

SeedResult spread_seed(SpreadQueryOracle& oracle, std::size_t k, std::size_t rho, Rng& rng) {
  SeedResult result = run_rounds(oracle.num_nodes(), k, rho, rng,
                                 [&](std::span<const NodeId> chosen, Rng& r) {
                                   return spread_round(oracle, chosen, rho, r);
                                 });
  result.algorithm = "spread-seed";
  result.query_cost = oracle.ledger().snapshot();
  return result;
}

SeedResult lt_spread_seed(ReverseCascadeOracle& oracle, std::size_t k, std::size_t rho,
                          Rng& rng) {
  if (oracle.model() != ReverseModel::kLinearThreshold) {
    throw ModelError("reverse-trace seeding needs a linear-threshold oracle");
  }
  SeedResult result = run_rounds(oracle.num_nodes(), k, rho, rng,
                                 [&](std::span<const NodeId> chosen, Rng& r) {
                                   return lt_spread_round(oracle, chosen, rho, r);
                                 });
  result.algorithm = "lt-spread-seed";
  result.query_cost = oracle.ledger().snapshot();
  return result;
}

}  // namespace seedq
