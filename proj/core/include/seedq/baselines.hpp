#pragma once

#include <cstddef>
#include <functional>
#include <span>

#include "seedq/graph.hpp"
#include "seedq/oracles.hpp"
#include "seedq/rng.hpp"
#include "seedq/seed_result.hpp"

namespace seedq {

/// Objective for greedy selection, called with candidate seed sets.
using SetFunction = std::function<double(std::span<const NodeId>)>;

/// Lazy greedy over nodes 0..n-1: candidates are kept in a priority queue
/// keyed by their last marginal gain; a stale entry at the top is
/// re-evaluated before it can be accepted. Ties go to the lowest id.
SeedResult lazy_greedy(std::size_t n, std::size_t k, const SetFunction& f);

/// Greedy with Monte Carlo marginal gains (n_sims cascades per evaluation).
/// Uses the full graph and no oracle.
SeedResult greedy_full(const Graph& graph, std::size_t k, std::size_t n_sims, Rng& rng);

/// Greedy with exact influence; |E| <= 20.
SeedResult greedy_exact(const Graph& graph, std::size_t k);

/// k distinct nodes chosen uniformly at random.
SeedResult random_seeds(std::size_t n, std::size_t k, Rng& rng);

/// Random nodes nominate a random neighbor until k distinct nominees are
/// found. Throws ExhaustionError after n*k attempts without success.
SeedResult one_hop(NominationOracle& oracle, std::size_t k, Rng& rng);

/// The k nodes of highest (out-)degree, lowest id on ties.
SeedResult top_degree(const Graph& graph, std::size_t k);

}  // namespace seedq
