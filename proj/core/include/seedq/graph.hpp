#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace seedq {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

struct Edge {
  NodeId u = 0;
  NodeId v = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Input record for graph construction; prob falls back to the graph-level p.
struct EdgeSpec {
  NodeId u = 0;
  NodeId v = 0;
  std::optional<double> prob;
};

/// One adjacency entry: the node on the other side and the edge it uses.
struct Arc {
  NodeId node = 0;
  EdgeId edge = 0;
};

/// Immutable node/edge store with CSR adjacency. Nodes are 0..n-1. For an
/// undirected graph every edge appears in the adjacency of both endpoints and
/// out_arcs == in_arcs. Edge activation probabilities are held as one
/// graph-level value unless the edges carry different values.
class Graph {
 public:
  Graph() = default;

  /// Drops duplicate edges (keeping the first), rejects self-loops,
  /// out-of-range endpoints and probabilities outside [0, 1].
  static Graph from_edges(std::size_t n, std::span<const EdgeSpec> edges, bool directed,
                          double default_prob = 1.0);

  std::size_t num_nodes() const noexcept { return n_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  bool directed() const noexcept { return directed_; }

  const Edge& edge(EdgeId e) const { return edges_[e]; }
  std::span<const Edge> edges() const noexcept { return edges_; }

  double prob(EdgeId e) const { return probs_.empty() ? uniform_prob_ : probs_[e]; }
  bool heterogeneous() const noexcept { return !probs_.empty(); }
  /// The shared probability, or nullopt when edges carry their own.
  std::optional<double> uniform_prob() const {
    if (heterogeneous()) return std::nullopt;
    return uniform_prob_;
  }
  double max_prob() const;

  std::span<const Arc> out_arcs(NodeId v) const {
    return {out_arcs_.data() + out_offset_[v], out_arcs_.data() + out_offset_[v + 1]};
  }
  std::span<const Arc> in_arcs(NodeId v) const {
    if (!directed_) return out_arcs(v);
    return {in_arcs_.data() + in_offset_[v], in_arcs_.data() + in_offset_[v + 1]};
  }
  /// Undirected incidence list (out_arcs for directed graphs).
  std::span<const Arc> neighbors(NodeId v) const { return out_arcs(v); }

  std::size_t out_degree(NodeId v) const { return out_offset_[v + 1] - out_offset_[v]; }
  std::size_t in_degree(NodeId v) const {
    return directed_ ? in_offset_[v + 1] - in_offset_[v] : out_degree(v);
  }
  std::size_t degree(NodeId v) const { return out_degree(v); }

  Graph with_uniform_prob(double p) const;
  /// Each undirected edge becomes two opposite directed edges with the same
  /// probability. Directed graphs are returned unchanged.
  Graph as_directed() const;

  /// Checks the adjacency index against the edge sequence.
  bool adjacency_consistent() const;

 private:
  void build_index();

  std::size_t n_ = 0;
  bool directed_ = false;
  std::vector<Edge> edges_;
  std::vector<double> probs_;
  double uniform_prob_ = 1.0;

  std::vector<std::size_t> out_offset_{0};
  std::vector<Arc> out_arcs_;
  std::vector<std::size_t> in_offset_;
  std::vector<Arc> in_arcs_;
};

/// Directed graph with linear-threshold weights b_uv on every edge u->v.
/// Incoming weights of every node sum to at most 1.
class WeightedLTGraph {
 public:
  WeightedLTGraph(Graph graph, std::vector<double> weights);

  /// b_uv = 1 / in_degree(v).
  static WeightedLTGraph uniform_in_degree(Graph graph);

  const Graph& graph() const noexcept { return graph_; }
  double weight(EdgeId e) const { return weights_[e]; }
  std::span<const double> weights() const noexcept { return weights_; }
  std::size_t num_nodes() const noexcept { return graph_.num_nodes(); }
  double in_weight(NodeId v) const;

 private:
  Graph graph_;
  std::vector<double> weights_;
};

}  // namespace seedq
