#include "seedq/cascade.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "seedq/errors.hpp"

namespace seedq {

namespace {

void check_seeds(std::size_t n, std::span<const NodeId> seeds) {
  for (NodeId s : seeds) {
    if (s >= n) throw ParameterError("seed " + std::to_string(s) + " is not a node");
  }
}

class Welford {
 public:
  void add(double x) {
    ++count_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(count_);
    m2_ += delta * (x - mean_);
  }
  InfluenceEstimate estimate() const {
    InfluenceEstimate e;
    e.mean = mean_;
    e.n_sims = count_;
    if (count_ > 1) {
      const double var = m2_ / static_cast<double>(count_ - 1);
      e.std_error = std::sqrt(var / static_cast<double>(count_));
    }
    return e;
  }

 private:
  std::size_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

}  // namespace

IcSimulator::IcSimulator(const Graph& graph) : graph_(graph), stamp_(graph.num_nodes(), 0) {
  order_.reserve(graph.num_nodes());
}

std::span<const NodeId> IcSimulator::run(std::span<const NodeId> seeds, Rng& rng,
                                         std::vector<EdgeId>* realized) {
  check_seeds(graph_.num_nodes(), seeds);
  if (++epoch_ == 0) {
    std::fill(stamp_.begin(), stamp_.end(), 0);
    epoch_ = 1;
  }
  order_.clear();
  for (NodeId s : seeds) {
    if (stamp_[s] == epoch_) continue;
    stamp_[s] = epoch_;
    order_.push_back(s);
  }
  for (std::size_t head = 0; head < order_.size(); ++head) {
    const NodeId u = order_[head];
    for (const Arc& a : graph_.out_arcs(u)) {
      if (stamp_[a.node] == epoch_) continue;
      if (!rng.bernoulli(graph_.prob(a.edge))) continue;
      stamp_[a.node] = epoch_;
      order_.push_back(a.node);
      if (realized != nullptr) realized->push_back(a.edge);
    }
  }
  return order_;
}

CascadeTrace simulate_ic(const Graph& graph, std::span<const NodeId> seeds, Rng& rng,
                         bool record_edges) {
  IcSimulator sim(graph);
  CascadeTrace trace;
  std::vector<EdgeId> realized;
  auto adopters = sim.run(seeds, rng, record_edges ? &realized : nullptr);
  trace.adopters.assign(adopters.begin(), adopters.end());
  for (NodeId s : seeds) {
    if (std::find(trace.seed_set.begin(), trace.seed_set.end(), s) == trace.seed_set.end()) {
      trace.seed_set.push_back(s);
    }
  }
  if (record_edges) trace.realized_edges = std::move(realized);
  return trace;
}

InfluenceEstimate influence_mc(const Graph& graph, std::span<const NodeId> seeds,
                               std::size_t n_sims, Rng& rng) {
  if (n_sims < 1) throw ParameterError("influence_mc needs n_sims >= 1");
  IcSimulator sim(graph);
  Welford acc;
  for (std::size_t i = 0; i < n_sims; ++i) {
    acc.add(static_cast<double>(sim.run(seeds, rng).size()));
  }
  return acc.estimate();
}

ExactInfluence::ExactInfluence(const Graph& graph) : n_(graph.num_nodes()) {
  const std::size_t m = graph.num_edges();
  if (m > kMaxEdges) {
    throw CapacityError("exact influence enumerates 2^|E| realizations; |E| = " +
                        std::to_string(m) + " exceeds " + std::to_string(kMaxEdges));
  }
  slot_.assign(n_, -1);
  std::vector<std::pair<int, int>> ends(m);
  for (EdgeId e = 0; e < m; ++e) {
    const Edge& edge = graph.edge(e);
    for (NodeId x : {edge.u, edge.v}) {
      if (slot_[x] < 0) slot_[x] = static_cast<int>(slots_++);
    }
    ends[e] = {slot_[edge.u], slot_[edge.v]};
  }

  std::map<std::string, double> patterns;
  std::vector<std::uint64_t> reach(slots_);
  std::vector<std::uint64_t> out(slots_);
  std::vector<int> parent(slots_);
  const std::uint64_t total = std::uint64_t{1} << m;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    double p = 1.0;
    for (EdgeId e = 0; e < m && p > 0.0; ++e) {
      p *= (mask >> e & 1U) ? graph.prob(e) : 1.0 - graph.prob(e);
    }
    if (p <= 0.0) continue;

    if (!graph.directed()) {
      for (std::size_t s = 0; s < slots_; ++s) parent[s] = static_cast<int>(s);
      auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
      };
      for (EdgeId e = 0; e < m; ++e) {
        if (mask >> e & 1U) parent[find(ends[e].first)] = find(ends[e].second);
      }
      std::fill(out.begin(), out.end(), 0);
      for (std::size_t s = 0; s < slots_; ++s) out[find(static_cast<int>(s))] |= 1ULL << s;
      for (std::size_t s = 0; s < slots_; ++s) reach[s] = out[find(static_cast<int>(s))];
    } else {
      std::fill(out.begin(), out.end(), 0);
      for (EdgeId e = 0; e < m; ++e) {
        if (mask >> e & 1U) out[ends[e].first] |= 1ULL << ends[e].second;
      }
      for (std::size_t s = 0; s < slots_; ++s) {
        std::uint64_t seen = 1ULL << s;
        std::uint64_t frontier = seen;
        while (frontier != 0) {
          std::uint64_t next = 0;
          for (std::uint64_t f = frontier; f != 0; f &= f - 1) next |= out[std::countr_zero(f)];
          frontier = next & ~seen;
          seen |= next;
        }
        reach[s] = seen;
      }
    }
    std::string key(reinterpret_cast<const char*>(reach.data()), slots_ * sizeof(std::uint64_t));
    patterns[key] += p;
  }

  probs_.reserve(patterns.size());
  reach_.reserve(patterns.size() * slots_);
  for (const auto& [key, p] : patterns) {
    probs_.push_back(p);
    const auto* masks = reinterpret_cast<const std::uint64_t*>(key.data());
    reach_.insert(reach_.end(), masks, masks + slots_);
  }
}

double ExactInfluence::operator()(std::span<const NodeId> seeds) const {
  check_seeds(n_, seeds);
  std::vector<NodeId> unique(seeds.begin(), seeds.end());
  std::sort(unique.begin(), unique.end());
  unique.erase(std::unique(unique.begin(), unique.end()), unique.end());

  double isolated = 0.0;
  std::vector<std::size_t> active;
  for (NodeId s : unique) {
    if (slot_[s] < 0) {
      isolated += 1.0;
    } else {
      active.push_back(static_cast<std::size_t>(slot_[s]));
    }
  }
  if (active.empty()) return isolated;
  double value = 0.0;
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    const std::uint64_t* r = reach_.data() + i * slots_;
    std::uint64_t covered = 0;
    for (std::size_t s : active) covered |= r[s];
    value += probs_[i] * std::popcount(covered);
  }
  return value + isolated;
}

double influence_exact(const Graph& graph, std::span<const NodeId> seeds) {
  return ExactInfluence(graph)(seeds);
}

std::optional<Arc> draw_lt_trigger(const WeightedLTGraph& graph, NodeId v, Rng& rng) {
  const double r = rng.uniform();
  double cumulative = 0.0;
  for (const Arc& a : graph.graph().in_arcs(v)) {
    cumulative += graph.weight(a.edge);
    if (r < cumulative) return a;
  }
  return std::nullopt;
}

CascadeTrace simulate_lt(const WeightedLTGraph& lt, std::span<const NodeId> seeds, Rng& rng,
                         LtMode mode) {
  const Graph& g = lt.graph();
  const std::size_t n = g.num_nodes();
  check_seeds(n, seeds);
  CascadeTrace trace;
  if (seeds.empty()) return trace;

  std::vector<char> active(n, 0);
  for (NodeId s : seeds) {
    if (active[s]) continue;
    active[s] = 1;
    trace.seed_set.push_back(s);
    trace.adopters.push_back(s);
  }

  if (mode == LtMode::kThresholds) {
    std::vector<double> theta(n);
    for (double& t : theta) t = 1.0 - rng.uniform();
    std::vector<double> weight_in(n, 0.0);
    for (std::size_t head = 0; head < trace.adopters.size(); ++head) {
      const NodeId u = trace.adopters[head];
      for (const Arc& a : g.out_arcs(u)) {
        if (active[a.node]) continue;
        weight_in[a.node] += lt.weight(a.edge);
        if (weight_in[a.node] >= theta[a.node]) {
          active[a.node] = 1;
          trace.adopters.push_back(a.node);
        }
      }
    }
  } else {
    constexpr EdgeId kNone = std::numeric_limits<EdgeId>::max();
    std::vector<EdgeId> trigger(n, kNone);
    for (NodeId v = 0; v < n; ++v) {
      if (auto arc = draw_lt_trigger(lt, v, rng)) trigger[v] = arc->edge;
    }
    for (std::size_t head = 0; head < trace.adopters.size(); ++head) {
      const NodeId u = trace.adopters[head];
      for (const Arc& a : g.out_arcs(u)) {
        if (active[a.node] || trigger[a.node] != a.edge) continue;
        active[a.node] = 1;
        trace.adopters.push_back(a.node);
      }
    }
  }
  return trace;
}

InfluenceEstimate influence_mc_lt(const WeightedLTGraph& graph, std::span<const NodeId> seeds,
                                  std::size_t n_sims, Rng& rng, LtMode mode) {
  if (n_sims < 1) throw ParameterError("influence_mc_lt needs n_sims >= 1");
  Welford acc;
  for (std::size_t i = 0; i < n_sims; ++i) {
    acc.add(static_cast<double>(simulate_lt(graph, seeds, rng, mode).size()));
  }
  return acc.estimate();
}

}  // namespace seedq
