#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "seedq/graph.hpp"
#include "seedq/oracles.hpp"
#include "seedq/rng.hpp"

namespace seedq {

/// Per-round summary of a spread-query run.
struct RoundSummary {
  std::size_t index = 0;
  std::size_t queries = 0;
  /// Cascades dropped because they touched an already chosen seed.
  std::size_t nulled = 0;
  /// Up to five (node, count) pairs, highest count first.
  std::vector<std::pair<NodeId, std::uint32_t>> top;
  NodeId selected = 0;
  /// True when every count was zero and the seed was drawn at random.
  bool random_fallback = false;
};

struct SeedResult {
  std::string algorithm;
  /// Distinct nodes in selection order.
  std::vector<NodeId> seeds;
  /// Objective value the algorithm optimized (sketch coverage, estimated
  /// influence); absent for strategies without one.
  std::optional<double> value;
  Rng::Token rng_token;
  LedgerCounts query_cost;
  std::vector<RoundSummary> rounds;
};

/// JSON object with seeds, value, query cost, the replay token and, when
/// present, per-round summaries.
void write_seed_result_json(std::ostream& out, const SeedResult& result);
std::string seed_result_json(const SeedResult& result);

/// Whitespace-separated node ids; '#' starts a comment.
std::vector<NodeId> read_seed_list(std::istream& in);

}  // namespace seedq
