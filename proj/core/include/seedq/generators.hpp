#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "seedq/graph.hpp"
#include "seedq/rng.hpp"

namespace seedq {

// All generators are deterministic in (parameters, seed). The returned graphs
// carry the uniform cascade probability `cascade_prob`.

/// G(n, q): every unordered pair is an edge independently with probability q.
Graph gen_erdos_renyi(std::size_t n, double edge_prob, std::uint64_t seed,
                      double cascade_prob = 1.0);

/// Barabasi-Albert preferential attachment with m edges per arriving node.
/// Node labels are randomly permuted so ids carry no age information.
Graph gen_preferential_attachment(std::size_t n, std::size_t m, std::uint64_t seed,
                                  double cascade_prob = 1.0);

/// Lower-bound instance for edge queries: 9/mu^2 disjoint cliques of size
/// mu^2 n / 9, of which 3/mu are rewired into a circle. Clique c occupies ids
/// [c * clique_size, (c + 1) * clique_size).
struct CliqueCircle {
  Graph graph;
  std::size_t num_cliques = 0;
  std::size_t clique_size = 0;
  /// Connected cliques in circle order.
  std::vector<std::size_t> circle;
  /// (v_i, u_i) removed from circle[i]; (u_i, v_{i+1}) added in its place.
  std::vector<Edge> removed;
  std::vector<Edge> added;

  std::size_t clique_of(NodeId v) const { return v / clique_size; }
  bool on_circle(NodeId v) const;
  /// (mu^3 / 27) * C(clique_size, 2): below this many edge queries no
  /// algorithm detects the circle with probability above mu / 3.
  double query_threshold(double mu) const;
};

/// Throws ParameterError unless 3/mu, 9/mu^2 and mu^2 n / 9 are integers.
CliqueCircle gen_clique_circle(std::size_t n, double mu, std::uint64_t seed,
                               double cascade_prob = 1.0);

/// Lower-bound instance for spread queries: a clique on clique_size uniformly
/// chosen nodes, everything else isolated.
Graph gen_clique_plus_isolated(std::size_t n, std::size_t clique_size, std::uint64_t seed,
                               double cascade_prob = 1.0);

/// Star with center 0. With directed_out every edge points away from the center.
Graph gen_star(std::size_t n, bool directed_out, double cascade_prob = 1.0);

/// Random LT weights: node v gets a total incoming weight s_v ~ U(0, 1]
/// split among its in-neighbors in random proportions.
WeightedLTGraph random_lt_weights(const Graph& graph, Rng& rng);

/// k distinct nodes drawn uniformly from 0..n-1, in draw order.
std::vector<NodeId> sample_without_replacement(std::size_t n, std::size_t k, Rng& rng);

}  // namespace seedq
