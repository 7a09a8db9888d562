#include "seedq/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <unordered_set>

#include "seedq/errors.hpp"

namespace seedq {

namespace {

bool near_integer(double x) {
  return std::abs(x - std::round(x)) <= 1e-9 * std::max(1.0, std::abs(x));
}

}  // namespace

std::vector<NodeId> sample_without_replacement(std::size_t n, std::size_t k, Rng& rng) {
  if (k > n) throw ParameterError("cannot draw " + std::to_string(k) + " of " + std::to_string(n));
  std::vector<NodeId> out;
  out.reserve(k);
  if (k * 4 < n) {
    std::unordered_set<NodeId> taken;
    taken.reserve(k * 2);
    while (out.size() < k) {
      auto v = static_cast<NodeId>(rng.below(n));
      if (taken.insert(v).second) out.push_back(v);
    }
    return out;
  }
  std::vector<NodeId> pool(n);
  std::iota(pool.begin(), pool.end(), NodeId{0});
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t j = i + rng.below(n - i);
    std::swap(pool[i], pool[j]);
    out.push_back(pool[i]);
  }
  return out;
}

Graph gen_erdos_renyi(std::size_t n, double edge_prob, std::uint64_t seed, double cascade_prob) {
  if (n < 1) throw ParameterError("gen_erdos_renyi needs n >= 1");
  if (!(edge_prob >= 0.0 && edge_prob <= 1.0)) throw ParameterError("edge_prob outside [0, 1]");
  Rng rng(seed);
  std::vector<EdgeSpec> edges;
  if (edge_prob >= 1.0) {
    for (NodeId v = 1; v < n; ++v) {
      for (NodeId w = 0; w < v; ++w) edges.push_back({w, v, std::nullopt});
    }
  } else if (edge_prob > 0.0) {
    // Geometric skipping over the pairs (w, v), w < v, in lexicographic order.
    const double log_q = std::log1p(-edge_prob);
    std::int64_t v = 1;
    std::int64_t w = -1;
    const auto nn = static_cast<std::int64_t>(n);
    while (v < nn) {
      const double r = rng.uniform();
      w += 1 + static_cast<std::int64_t>(std::floor(std::log1p(-r) / log_q));
      while (w >= v && v < nn) {
        w -= v;
        ++v;
      }
      if (v < nn) {
        edges.push_back({static_cast<NodeId>(w), static_cast<NodeId>(v), std::nullopt});
      }
    }
  }
  return Graph::from_edges(n, edges, false, cascade_prob);
}

Graph gen_preferential_attachment(std::size_t n, std::size_t m, std::uint64_t seed,
                                  double cascade_prob) {
  if (m < 1 || n <= m) throw ParameterError("preferential attachment needs 1 <= m < n");
  Rng rng(seed);
  std::vector<EdgeSpec> edges;
  edges.reserve(n * m);
  // Every edge endpoint is appended once, so a uniform draw from `ends` is a
  // degree-proportional draw.
  std::vector<NodeId> ends;
  ends.reserve(2 * n * m);
  std::vector<NodeId> targets;
  for (NodeId t = static_cast<NodeId>(m); t < n; ++t) {
    targets.clear();
    if (t == m) {
      for (NodeId u = 0; u < m; ++u) targets.push_back(u);
    } else {
      while (targets.size() < m) {
        NodeId u = ends[rng.below(ends.size())];
        if (std::find(targets.begin(), targets.end(), u) == targets.end()) targets.push_back(u);
      }
    }
    for (NodeId u : targets) {
      edges.push_back({u, t, std::nullopt});
      ends.push_back(u);
      ends.push_back(t);
    }
  }
  std::vector<NodeId> label(n);
  std::iota(label.begin(), label.end(), NodeId{0});
  for (std::size_t i = n - 1; i > 0; --i) std::swap(label[i], label[rng.below(i + 1)]);
  for (EdgeSpec& e : edges) {
    e.u = label[e.u];
    e.v = label[e.v];
  }
  return Graph::from_edges(n, edges, false, cascade_prob);
}

bool CliqueCircle::on_circle(NodeId v) const {
  return std::find(circle.begin(), circle.end(), clique_of(v)) != circle.end();
}

double CliqueCircle::query_threshold(double mu) const {
  const double s = static_cast<double>(clique_size);
  return mu * mu * mu / 27.0 * (s * (s - 1.0) / 2.0);
}

CliqueCircle gen_clique_circle(std::size_t n, double mu, std::uint64_t seed, double cascade_prob) {
  if (!(mu > 0.0 && mu <= 1.0)) throw ParameterError("mu must lie in (0, 1]");
  const double ring = 3.0 / mu;
  const double count = 9.0 / (mu * mu);
  const double size = mu * mu * static_cast<double>(n) / 9.0;
  if (!near_integer(ring) || !near_integer(count) || !near_integer(size)) {
    throw ParameterError("clique circle needs integral 3/mu, 9/mu^2 and mu^2 n/9 (got " +
                         std::to_string(ring) + ", " + std::to_string(count) + ", " +
                         std::to_string(size) + ")");
  }
  CliqueCircle out;
  out.num_cliques = static_cast<std::size_t>(std::llround(count));
  out.clique_size = static_cast<std::size_t>(std::llround(size));
  const auto ring_len = static_cast<std::size_t>(std::llround(ring));
  if (out.clique_size < 2) throw ParameterError("clique circle needs cliques of size >= 2");
  if (out.num_cliques * out.clique_size != n) {
    throw ParameterError("clique circle sizes do not cover n nodes");
  }

  Rng rng(seed);
  for (NodeId c : sample_without_replacement(out.num_cliques, ring_len, rng)) {
    out.circle.push_back(c);
  }
  const std::size_t s = out.clique_size;
  for (std::size_t c : out.circle) {
    const auto base = static_cast<NodeId>(c * s);
    const auto a = static_cast<NodeId>(rng.below(s));
    auto b = static_cast<NodeId>(rng.below(s - 1));
    if (b >= a) ++b;
    out.removed.push_back({base + a, base + b});  // (v_i, u_i)
  }
  for (std::size_t i = 0; i < ring_len; ++i) {
    const NodeId u = out.removed[i].v;
    const NodeId v_next = out.removed[(i + 1) % ring_len].u;
    out.added.push_back({u, v_next});
  }

  auto is_removed = [&](NodeId x, NodeId y) {
    for (const Edge& e : out.removed) {
      if ((e.u == x && e.v == y) || (e.u == y && e.v == x)) return true;
    }
    return false;
  };
  std::vector<bool> in_circle(out.num_cliques, false);
  for (std::size_t c : out.circle) in_circle[c] = true;

  std::vector<EdgeSpec> edges;
  edges.reserve(out.num_cliques * s * (s - 1) / 2);
  for (std::size_t c = 0; c < out.num_cliques; ++c) {
    const auto base = static_cast<NodeId>(c * s);
    for (NodeId i = 0; i < s; ++i) {
      for (NodeId j = i + 1; j < s; ++j) {
        if (in_circle[c] && is_removed(base + i, base + j)) continue;
        edges.push_back({base + i, base + j, std::nullopt});
      }
    }
  }
  for (const Edge& e : out.added) edges.push_back({e.u, e.v, std::nullopt});
  out.graph = Graph::from_edges(n, edges, false, cascade_prob);
  return out;
}

Graph gen_clique_plus_isolated(std::size_t n, std::size_t clique_size, std::uint64_t seed,
                               double cascade_prob) {
  if (clique_size > n) throw ParameterError("clique_size exceeds n");
  Rng rng(seed);
  std::vector<NodeId> members = sample_without_replacement(n, clique_size, rng);
  std::sort(members.begin(), members.end());
  std::vector<EdgeSpec> edges;
  edges.reserve(clique_size * (clique_size - (clique_size > 0)) / 2);
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      edges.push_back({members[i], members[j], std::nullopt});
    }
  }
  return Graph::from_edges(n, edges, false, cascade_prob);
}

Graph gen_star(std::size_t n, bool directed_out, double cascade_prob) {
  if (n < 2) throw ParameterError("a star needs at least 2 nodes");
  std::vector<EdgeSpec> edges;
  edges.reserve(n - 1);
  for (NodeId leaf = 1; leaf < n; ++leaf) edges.push_back({0, leaf, std::nullopt});
  return Graph::from_edges(n, edges, directed_out, cascade_prob);
}

WeightedLTGraph random_lt_weights(const Graph& graph, Rng& rng) {
  Graph g = graph.directed() ? graph : graph.as_directed();
  std::vector<double> weights(g.num_edges(), 0.0);
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    auto arcs = g.in_arcs(v);
    if (arcs.empty()) continue;
    const double total = 1.0 - rng.uniform();  // (0, 1]
    double raw_sum = 0.0;
    std::vector<double> raw(arcs.size());
    for (double& r : raw) {
      r = 1.0 - rng.uniform();
      raw_sum += r;
    }
    for (std::size_t i = 0; i < arcs.size(); ++i) {
      weights[arcs[i].edge] = total * raw[i] / raw_sum;
    }
  }
  return WeightedLTGraph(std::move(g), std::move(weights));
}

}  // namespace seedq
