#include "seedq/oracles.hpp"

#include <algorithm>
#include <string>

#include "seedq/errors.hpp"

namespace seedq {

LedgerCounts QueryLedger::snapshot() const {
  LedgerCounts c;
  c.kept_edges = kept_.load(std::memory_order_relaxed);
  c.discarded_edges = discarded_.load(std::memory_order_relaxed);
  c.spread_queries = spread_.load(std::memory_order_relaxed);
  c.reverse_queries = reverse_.load(std::memory_order_relaxed);
  c.nominations = nominations_.load(std::memory_order_relaxed);
  return c;
}

EdgeQueryOracle::EdgeQueryOracle(const Graph& graph, Options options)
    : graph_(graph), options_(options) {
  if (options_.reveal_prob && !(*options_.reveal_prob >= 0.0 && *options_.reveal_prob <= 1.0)) {
    throw ParameterError("reveal probability outside [0, 1]");
  }
}

ProbeSession EdgeQueryOracle::open_session() { return ProbeSession(*this); }

bool EdgeQueryOracle::budget_exhausted() const {
  return options_.edge_budget && ledger_.edge_reveals() >= *options_.edge_budget;
}

ProbeSession::ProbeSession(EdgeQueryOracle& oracle)
    : oracle_(&oracle), probed_(oracle.num_nodes(), 0) {}

void ProbeSession::edge_probe(NodeId v, Rng& rng, std::vector<RevealedEdge>& out) {
  const Graph& g = oracle_->graph_;
  if (v >= g.num_nodes()) throw ParameterError("probe of unknown node " + std::to_string(v));
  if (probed_[v]) throw SessionError("node " + std::to_string(v) + " probed twice in a session");
  probed_[v] = 1;
  ++probed_count_;

  const auto& opts = oracle_->options_;
  QueryLedger& ledger = oracle_->ledger_;
  for (const Arc& a : g.in_arcs(v)) {
    const double p = opts.reveal_prob.value_or(g.prob(a.edge));
    if (!rng.bernoulli(p)) continue;
    if (oracle_->budget_exhausted()) break;
    // Directed edges get their only chance at their head; undirected edges
    // to an already-probed endpoint had theirs when that endpoint was probed.
    const bool discard = !g.directed() && probed_[a.node] != 0;
    out.push_back({a.node, a.edge, discard});
    if (discard) {
      ++discarded_;
      ledger.add_discarded();
    } else {
      ++kept_;
      ledger.add_kept();
    }
  }
}

std::vector<RevealedEdge> ProbeSession::edge_probe(NodeId v, Rng& rng) {
  std::vector<RevealedEdge> out;
  edge_probe(v, rng, out);
  return out;
}

SpreadQueryOracle::SpreadQueryOracle(const Graph& graph) : graph_(graph), sim_(graph) {}

std::span<const NodeId> SpreadQueryOracle::spread_query(NodeId u, Rng& rng) {
  if (u >= graph_.num_nodes()) throw ParameterError("spread query from unknown node");
  ledger_.add_spread_query();
  const NodeId seed[] = {u};
  return sim_.run(seed, rng);
}

ReverseCascadeOracle::ReverseCascadeOracle(const Graph& graph)
    : graph_(&graph), model_(ReverseModel::kDirectedIc), stamp_(graph.num_nodes(), 0) {
  if (!graph.directed()) throw ModelError("reverse IC cascades need a directed graph");
}

ReverseCascadeOracle::ReverseCascadeOracle(const WeightedLTGraph& graph)
    : graph_(&graph.graph()),
      lt_(&graph),
      model_(ReverseModel::kLinearThreshold),
      stamp_(graph.num_nodes(), 0) {}

ReverseTrace ReverseCascadeOracle::query(NodeId u, Rng& rng) {
  if (u >= graph_->num_nodes()) throw ParameterError("reverse query from unknown node");
  if (++epoch_ == 0) {
    std::fill(stamp_.begin(), stamp_.end(), 0);
    epoch_ = 1;
  }
  ReverseTrace trace;
  trace.nodes.push_back(u);
  stamp_[u] = epoch_;

  if (model_ == ReverseModel::kLinearThreshold) {
    NodeId current = u;
    while (auto arc = draw_lt_trigger(*lt_, current, rng)) {
      ++trace.revealed_edges;
      if (stamp_[arc->node] == epoch_) break;
      stamp_[arc->node] = epoch_;
      trace.nodes.push_back(arc->node);
      current = arc->node;
    }
  } else {
    for (std::size_t head = 0; head < trace.nodes.size(); ++head) {
      for (const Arc& a : graph_->in_arcs(trace.nodes[head])) {
        if (!rng.bernoulli(graph_->prob(a.edge))) continue;
        ++trace.revealed_edges;
        if (stamp_[a.node] == epoch_) continue;
        stamp_[a.node] = epoch_;
        trace.nodes.push_back(a.node);
      }
    }
  }
  ledger_.add_reverse_query();
  ledger_.add_kept(trace.revealed_edges);
  return trace;
}

NominationOracle::NominationOracle(const Graph& graph) : graph_(graph) {
  if (graph.directed()) throw ModelError("one-hop nomination needs an undirected graph");
}

NodeId NominationOracle::nominate(NodeId v, Rng& rng) {
  if (v >= graph_.num_nodes()) throw ParameterError("nomination from unknown node");
  ledger_.add_nomination();
  auto arcs = graph_.neighbors(v);
  if (arcs.empty()) return v;
  return arcs[rng.below(arcs.size())].node;
}

}  // namespace seedq
