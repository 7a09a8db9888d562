#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "seedq/oracles.hpp"
#include "seedq/rng.hpp"
#include "seedq/seed_result.hpp"

namespace seedq {

/// ceil(81 k ln(6 n k / e) / e^3) queries per round (natural log).
/// Preconditions: n >= 2, k >= 1, 0 < epsilon <= 1.
std::size_t param_rho_spread(std::size_t n, std::size_t k, double epsilon);
double param_rho_spread_raw(std::size_t n, std::size_t k, double epsilon);

/// One round of cascades from random start nodes.
struct SpreadRound {
  std::size_t index = 0;
  /// Start nodes, drawn uniformly with replacement.
  std::vector<NodeId> initial_nodes;
  /// Per query, the observed node set; empty when it touched a chosen seed.
  /// Filled only when traces are kept.
  std::vector<std::vector<NodeId>> traces;
  /// Per query, whether the raw trace touched a chosen seed.
  std::vector<char> nulled;
  /// counts[u] = number of kept traces containing u.
  std::vector<std::uint32_t> counts;
};

/// Runs `rho` spread queries against the current seed set `chosen`.
SpreadRound spread_round(SpreadQueryOracle& oracle, std::span<const NodeId> chosen,
                         std::size_t rho, Rng& rng, bool keep_traces = false);
/// Same, with reverse traces from a linear-threshold oracle.
SpreadRound lt_spread_round(ReverseCascadeOracle& oracle, std::span<const NodeId> chosen,
                            std::size_t rho, Rng& rng, bool keep_traces = false);

/// Node with the highest count outside `chosen` (lowest id on ties); a
/// uniform remaining node when all counts are zero. Sets `fallback` then.
NodeId select_from_counts(std::span<const std::uint32_t> counts,
                          std::span<const NodeId> chosen, Rng& rng, bool* fallback = nullptr);

/// k rounds of rho spread queries, one seed per round. Per-round summaries
/// are stored in the result.
SeedResult spread_seed(SpreadQueryOracle& oracle, std::size_t k, std::size_t rho, Rng& rng);

/// The same procedure on reverse linear-threshold traces. Throws ModelError
/// when the oracle is not a linear-threshold oracle.
SeedResult lt_spread_seed(ReverseCascadeOracle& oracle, std::size_t k, std::size_t rho,
                          Rng& rng);

}  // namespace seedq
