#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "seedq/cascade.hpp"
#include "seedq/graph.hpp"
#include "seedq/rng.hpp"

namespace seedq {

struct LedgerCounts {
  std::uint64_t kept_edges = 0;
  std::uint64_t discarded_edges = 0;
  std::uint64_t spread_queries = 0;
  std::uint64_t reverse_queries = 0;
  std::uint64_t nominations = 0;

  std::uint64_t edge_reveals() const { return kept_edges + discarded_edges; }
  friend bool operator==(const LedgerCounts&, const LedgerCounts&) = default;
};

/// Monotone query counters. One revealed edge (kept or discarded) costs one
/// edge query; coins that come up tails cost nothing. Increments may come
/// from several threads.
class QueryLedger {
 public:
  QueryLedger() = default;
  QueryLedger(const QueryLedger&) = delete;
  QueryLedger& operator=(const QueryLedger&) = delete;

  void add_kept(std::uint64_t n = 1) { kept_.fetch_add(n, std::memory_order_relaxed); }
  void add_discarded(std::uint64_t n = 1) { discarded_.fetch_add(n, std::memory_order_relaxed); }
  void add_spread_query() { spread_.fetch_add(1, std::memory_order_relaxed); }
  void add_reverse_query() { reverse_.fetch_add(1, std::memory_order_relaxed); }
  void add_nomination() { nominations_.fetch_add(1, std::memory_order_relaxed); }

  LedgerCounts snapshot() const;
  std::uint64_t edge_reveals() const {
    return kept_.load(std::memory_order_relaxed) + discarded_.load(std::memory_order_relaxed);
  }

 private:
  std::atomic<std::uint64_t> kept_{0};
  std::atomic<std::uint64_t> discarded_{0};
  std::atomic<std::uint64_t> spread_{0};
  std::atomic<std::uint64_t> reverse_{0};
  std::atomic<std::uint64_t> nominations_{0};
};

struct RevealedEdge {
  NodeId node = 0;  // the endpoint other than the probed node
  EdgeId edge = 0;
  /// The edge already had its chance when `node` was probed; it is reported
  /// and paid for but must not enter the sketch.
  bool discard = false;
};

class ProbeSession;

/// Edge-query access to a hidden graph. A probed node reveals each incident
/// edge (incoming edges for directed graphs) independently with the edge's
/// probability.
class EdgeQueryOracle {
 public:
  struct Options {
    /// Reveal probability p' used instead of the cascade probability.
    /// Experimental: no guarantee is claimed when p' differs from p.
    std::optional<double> reveal_prob;
    /// Hard cap on edge reveals; once reached, probes reveal nothing.
    std::optional<std::uint64_t> edge_budget;
  };

  explicit EdgeQueryOracle(const Graph& graph) : EdgeQueryOracle(graph, Options{}) {}
  EdgeQueryOracle(const Graph& graph, Options options);

  std::size_t num_nodes() const noexcept { return graph_.num_nodes(); }
  bool directed() const noexcept { return graph_.directed(); }

  ProbeSession open_session();

  QueryLedger& ledger() noexcept { return ledger_; }
  const QueryLedger& ledger() const noexcept { return ledger_; }
  bool budget_exhausted() const;

  /// Ground truth, for tests and evaluation only.
  const Graph& hidden_graph() const noexcept { return graph_; }

 private:
  friend class ProbeSession;

  const Graph& graph_;
  Options options_;
  QueryLedger ledger_;
};

/// One probing pass (one sketch copy). Single owner; no node may be probed
/// twice within a session.
class ProbeSession {
 public:
  /// Appends the revealed edges of v to `out`. Throws SessionError when v was
  /// already probed in this session.
  void edge_probe(NodeId v, Rng& rng, std::vector<RevealedEdge>& out);
  std::vector<RevealedEdge> edge_probe(NodeId v, Rng& rng);

  bool probed(NodeId v) const { return probed_[v] != 0; }
  std::size_t probed_count() const noexcept { return probed_count_; }
  std::uint64_t kept_edges() const noexcept { return kept_; }
  std::uint64_t discarded_edges() const noexcept { return discarded_; }

 private:
  friend class EdgeQueryOracle;
  explicit ProbeSession(EdgeQueryOracle& oracle);

  EdgeQueryOracle* oracle_;
  std::vector<char> probed_;
  std::size_t probed_count_ = 0;
  std::uint64_t kept_ = 0;
  std::uint64_t discarded_ = 0;
};

/// Spread-query access: seed one node, observe only the adopter identities.
class SpreadQueryOracle {
 public:
  explicit SpreadQueryOracle(const Graph& graph);

  std::size_t num_nodes() const noexcept { return graph_.num_nodes(); }

  /// Adopters in activation order; invalidated by the next query.
  std::span<const NodeId> spread_query(NodeId u, Rng& rng);

  QueryLedger& ledger() noexcept { return ledger_; }
  const QueryLedger& ledger() const noexcept { return ledger_; }
  const Graph& hidden_graph() const noexcept { return graph_; }

 private:
  const Graph& graph_;
  IcSimulator sim_;
  QueryLedger ledger_;
};

enum class ReverseModel { kDirectedIc, kLinearThreshold };

struct ReverseTrace {
  /// Nodes with a realized path to the start node, start node first.
  std::vector<NodeId> nodes;
  std::uint64_t revealed_edges = 0;
};

/// Cascades run backwards from a start node. Directed IC reveals every
/// incoming edge with its probability (backward BFS); linear threshold walks
/// the chain of triggering sets, stopping at an empty set or a revisit.
/// Revealed edges are charged as kept edge queries.
class ReverseCascadeOracle {
 public:
  /// Directed independent cascade; throws ModelError for undirected graphs.
  explicit ReverseCascadeOracle(const Graph& graph);
  explicit ReverseCascadeOracle(const WeightedLTGraph& graph);

  ReverseModel model() const noexcept { return model_; }
  std::size_t num_nodes() const noexcept { return graph_->num_nodes(); }

  ReverseTrace query(NodeId u, Rng& rng);

  QueryLedger& ledger() noexcept { return ledger_; }
  const QueryLedger& ledger() const noexcept { return ledger_; }

 private:
  const Graph* graph_;
  const WeightedLTGraph* lt_ = nullptr;
  ReverseModel model_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 0;
  QueryLedger ledger_;
};

/// Neighbor nomination for one-hop targeting: a node names a uniformly random
/// neighbor (itself when isolated). Each nomination is counted separately
/// from edge and spread queries.
class NominationOracle {
 public:
  explicit NominationOracle(const Graph& graph);

  std::size_t num_nodes() const noexcept { return graph_.num_nodes(); }
  NodeId nominate(NodeId v, Rng& rng);

  QueryLedger& ledger() noexcept { return ledger_; }
  const QueryLedger& ledger() const noexcept { return ledger_; }

 private:
  const Graph& graph_;
  QueryLedger ledger_;
};

}  // namespace seedq
