#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "seedq/graph.hpp"
#include "seedq/rng.hpp"

namespace seedq {

/// Outcome of one diffusion run. Adopters are listed in activation order
/// (breadth-first from the seeds); seeds come first.
struct CascadeTrace {
  std::vector<NodeId> seed_set;
  std::vector<NodeId> adopters;
  /// Edges that carried an activation, when requested.
  std::optional<std::vector<EdgeId>> realized_edges;

  std::size_t size() const noexcept { return adopters.size(); }
};

struct InfluenceEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t n_sims = 0;
};

/// Reusable independent-cascade simulator. Every edge is flipped at most once
/// per run, lazily, the first time an adopter could use it; for undirected
/// graphs both directions share that single coin.
class IcSimulator {
 public:
  explicit IcSimulator(const Graph& graph);

  /// Adopters in activation order. The span is invalidated by the next run.
  std::span<const NodeId> run(std::span<const NodeId> seeds, Rng& rng,
                              std::vector<EdgeId>* realized = nullptr);

  const Graph& graph() const noexcept { return graph_; }

 private:
  const Graph& graph_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 0;
  std::vector<NodeId> order_;
};

/// Seeds are deduplicated; an empty seed set yields an empty trace.
CascadeTrace simulate_ic(const Graph& graph, std::span<const NodeId> seeds, Rng& rng,
                         bool record_edges = false);

InfluenceEstimate influence_mc(const Graph& graph, std::span<const NodeId> seeds,
                               std::size_t n_sims, Rng& rng);

/// Exact expected spread by enumerating all 2^|E| live-edge realizations.
/// Realizations are compressed to distinct reachability patterns once, so a
/// single instance answers many seed-set queries cheaply.
class ExactInfluence {
 public:
  static constexpr std::size_t kMaxEdges = 20;

  /// Throws CapacityError when the graph has more than kMaxEdges edges.
  explicit ExactInfluence(const Graph& graph);

  double operator()(std::span<const NodeId> seeds) const;

  std::size_t num_nodes() const noexcept { return n_; }
  std::size_t distinct_patterns() const noexcept { return probs_.size(); }

 private:
  std::size_t n_ = 0;
  std::vector<int> slot_;  // node -> index among edge endpoints, or -1
  std::size_t slots_ = 0;
  std::vector<double> probs_;
  std::vector<std::uint64_t> reach_;  // pattern-major, slots_ masks per pattern
};

double influence_exact(const Graph& graph, std::span<const NodeId> seeds);

enum class LtMode { kThresholds, kTriggering };

/// Linear-threshold diffusion. kThresholds draws theta_v ~ U(0, 1] and
/// activates v once the weight of its active in-neighbors reaches theta_v.
/// kTriggering draws each node's triggering set (one in-neighbor u with
/// probability b_uv, otherwise none) and returns the live-edge reachable set.
CascadeTrace simulate_lt(const WeightedLTGraph& graph, std::span<const NodeId> seeds, Rng& rng,
                         LtMode mode);

InfluenceEstimate influence_mc_lt(const WeightedLTGraph& graph, std::span<const NodeId> seeds,
                                  std::size_t n_sims, Rng& rng,
                                  LtMode mode = LtMode::kTriggering);

/// Draws node v's LT triggering in-arc; nullopt for the empty set.
std::optional<Arc> draw_lt_trigger(const WeightedLTGraph& graph, NodeId v, Rng& rng);

}  // namespace seedq
