#include "seedq/graph.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <unordered_set>

#include "seedq/errors.hpp"

namespace seedq {

namespace {

constexpr double kWeightSlack = 1e-9;

std::uint64_t edge_key(NodeId u, NodeId v, bool directed) {
  if (!directed && u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

void check_prob(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw RangeError("edge probability " + std::to_string(p) + " outside [0, 1]");
  }
}

}  // namespace

Graph Graph::from_edges(std::size_t n, std::span<const EdgeSpec> edges, bool directed,
                        double default_prob) {
  check_prob(default_prob);
  if (n > std::numeric_limits<NodeId>::max()) throw ParameterError("too many nodes");

  Graph g;
  g.n_ = n;
  g.directed_ = directed;
  g.uniform_prob_ = default_prob;

  std::unordered_set<std::uint64_t> seen;
  seen.reserve(edges.size() * 2);
  std::vector<double> probs;
  probs.reserve(edges.size());
  for (const EdgeSpec& spec : edges) {
    if (spec.u >= n || spec.v >= n) {
      throw ParameterError("edge (" + std::to_string(spec.u) + ", " + std::to_string(spec.v) +
                           ") references a node outside 0.." + std::to_string(n) + "-1");
    }
    if (spec.u == spec.v) throw ParameterError("self-loop at node " + std::to_string(spec.u));
    const double p = spec.prob.value_or(default_prob);
    check_prob(p);
    if (!seen.insert(edge_key(spec.u, spec.v, directed)).second) continue;
    g.edges_.push_back({spec.u, spec.v});
    probs.push_back(p);
  }

  const bool uniform = std::all_of(probs.begin(), probs.end(),
                                   [&](double p) { return p == (probs.empty() ? 0 : probs[0]); });
  if (!uniform) {
    g.probs_ = std::move(probs);
  } else if (!probs.empty()) {
    g.uniform_prob_ = probs[0];
  }
  g.build_index();
  return g;
}

void Graph::build_index() {
  std::vector<std::size_t> out_count(n_ + 1, 0), in_count(n_ + 1, 0);
  for (const Edge& e : edges_) {
    ++out_count[e.u + 1];
    if (directed_) {
      ++in_count[e.v + 1];
    } else {
      ++out_count[e.v + 1];
    }
  }
  for (std::size_t i = 0; i < n_; ++i) out_count[i + 1] += out_count[i];
  out_offset_ = out_count;
  out_arcs_.assign(out_offset_.back(), Arc{});
  std::vector<std::size_t> cursor(out_offset_.begin(), out_offset_.end() - 1);

  if (directed_) {
    for (std::size_t i = 0; i < n_; ++i) in_count[i + 1] += in_count[i];
    in_offset_ = in_count;
    in_arcs_.assign(in_offset_.back(), Arc{});
  } else {
    in_offset_.clear();
    in_arcs_.clear();
  }
  std::vector<std::size_t> in_cursor;
  if (directed_) in_cursor.assign(in_offset_.begin(), in_offset_.end() - 1);

  for (EdgeId id = 0; id < edges_.size(); ++id) {
    const Edge& e = edges_[id];
    out_arcs_[cursor[e.u]++] = {e.v, id};
    if (directed_) {
      in_arcs_[in_cursor[e.v]++] = {e.u, id};
    } else {
      out_arcs_[cursor[e.v]++] = {e.u, id};
    }
  }
}

double Graph::max_prob() const {
  if (probs_.empty()) return edges_.empty() ? 0.0 : uniform_prob_;
  return *std::max_element(probs_.begin(), probs_.end());
}

Graph Graph::with_uniform_prob(double p) const {
  check_prob(p);
  Graph g = *this;
  g.probs_.clear();
  g.uniform_prob_ = p;
  return g;
}

Graph Graph::as_directed() const {
  if (directed_) return *this;
  std::vector<EdgeSpec> specs;
  specs.reserve(edges_.size() * 2);
  for (EdgeId id = 0; id < edges_.size(); ++id) {
    const Edge& e = edges_[id];
    specs.push_back({e.u, e.v, prob(id)});
    specs.push_back({e.v, e.u, prob(id)});
  }
  return from_edges(n_, specs, true, uniform_prob_);
}

bool Graph::adjacency_consistent() const {
  std::size_t expected = directed_ ? edges_.size() : 2 * edges_.size();
  if (out_arcs_.size() != expected) return false;
  for (NodeId v = 0; v < n_; ++v) {
    for (const Arc& a : out_arcs(v)) {
      if (a.edge >= edges_.size()) return false;
      const Edge& e = edges_[a.edge];
      const bool ok = (e.u == v && e.v == a.node) || (!directed_ && e.v == v && e.u == a.node);
      if (!ok) return false;
    }
    if (directed_) {
      for (const Arc& a : in_arcs(v)) {
        if (a.edge >= edges_.size()) return false;
        const Edge& e = edges_[a.edge];
        if (e.v != v || e.u != a.node) return false;
      }
    }
  }
  return true;
}

WeightedLTGraph::WeightedLTGraph(Graph graph, std::vector<double> weights)
    : graph_(std::move(graph)), weights_(std::move(weights)) {
  if (!graph_.directed()) throw ModelError("linear threshold weights need a directed graph");
  if (weights_.size() != graph_.num_edges()) {
    throw ModelError("expected one weight per edge (" + std::to_string(graph_.num_edges()) +
                     "), got " + std::to_string(weights_.size()));
  }
  for (double w : weights_) {
    if (!(w >= 0.0)) throw ModelError("negative linear threshold weight");
  }
  for (NodeId v = 0; v < graph_.num_nodes(); ++v) {
    const double total = in_weight(v);
    if (total > 1.0 + kWeightSlack) {
      throw ModelError("incoming weights of node " + std::to_string(v) + " sum to " +
                       std::to_string(total) + " > 1");
    }
  }
}

WeightedLTGraph WeightedLTGraph::uniform_in_degree(Graph graph) {
  if (!graph.directed()) graph = graph.as_directed();
  std::vector<double> w(graph.num_edges());
  for (EdgeId e = 0; e < graph.num_edges(); ++e) {
    w[e] = 1.0 / static_cast<double>(graph.in_degree(graph.edge(e).v));
  }
  return WeightedLTGraph(std::move(graph), std::move(w));
}

double WeightedLTGraph::in_weight(NodeId v) const {
  double total = 0.0;
  for (const Arc& a : graph_.in_arcs(v)) total += weights_[a.edge];
  return total;
}

}  // namespace seedq
