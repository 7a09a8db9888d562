#include "seedq/probe.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "seedq/errors.hpp"
#include "seedq/generators.hpp"

namespace seedq {

namespace {

void check_common(std::size_t n, std::size_t k, double epsilon) {
  if (n < 2) throw ParameterError("parameter formulas need n >= 2");
  if (k < 1) throw ParameterError("parameter formulas need k >= 1");
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw ParameterError("epsilon must lie in (0, 1]");
}

void check_delta(double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta)) throw ParameterError("delta must be positive");
}

// Union-find over the nodes touched by one copy; reset in O(touched).
class Components {
 public:
  explicit Components(std::size_t n) : parent_(n), size_(n, 0), initial_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), NodeId{0});
  }

  void add(NodeId v, bool initial) {
    if (size_[v] != 0) return;
    parent_[v] = v;
    size_[v] = 1;
    initial_[v] = initial ? 1 : 0;
    touched_.push_back(v);
  }

  NodeId find(NodeId v) {
    while (parent_[v] != v) v = parent_[v] = parent_[parent_[v]];
    return v;
  }

  void unite(NodeId a, NodeId b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    initial_[a] += initial_[b];
  }

  std::size_t size_of(NodeId v) { return size_[find(v)]; }
  std::uint32_t initial_of(NodeId v) { return initial_[find(v)]; }
  const std::vector<NodeId>& touched_nodes() const { return touched_; }

  void reset() {
    for (NodeId v : touched_) {
      parent_[v] = v;
      size_[v] = 0;
      initial_[v] = 0;
    }
    touched_.clear();
  }

 private:
  std::vector<NodeId> parent_;
  std::vector<std::size_t> size_;
  std::vector<std::uint32_t> initial_;
  std::vector<NodeId> touched_;
};

void probe_undirected(EdgeQueryOracle& oracle, const ProbeParams& params,
                      const std::vector<NodeId>& initial, Rng& rng, Sketch& sketch,
                      ProbeLog* log) {
  const std::size_t n = oracle.num_nodes();
  Components comps(n);
  std::vector<NodeId> sorted(initial);
  std::sort(sorted.begin(), sorted.end());
  std::vector<char> queued(n, 0);
  std::vector<NodeId> queue;
  std::vector<RevealedEdge> batch;
  bool stopped = false;

  for (std::size_t c = 0; c < params.copies; ++c) {
    Rng copy_rng = rng.substream(c + 1);
    ProbeSession session = oracle.open_session();
    comps.reset();
    queue.assign(sorted.begin(), sorted.end());
    for (NodeId v : sorted) {
      comps.add(v, true);
      queued[v] = 1;
    }

    for (std::size_t head = 0; head < queue.size() && !stopped; ++head) {
      const NodeId v = queue[head];
      const std::size_t size = comps.size_of(v);
      if (size > params.tau) {
        if (log != nullptr) ++log->skipped;
        continue;
      }
      if (oracle.budget_exhausted()) {
        stopped = true;
        break;
      }
      if (log != nullptr) log->probes.push_back({static_cast<std::uint32_t>(c), v, size});
      batch.clear();
      session.edge_probe(v, copy_rng, batch);
      for (const RevealedEdge& r : batch) {
        if (r.discard) continue;
        comps.add(r.node, false);
        comps.unite(v, r.node);
        if (!queued[r.node]) {
          queued[r.node] = 1;
          queue.push_back(r.node);
        }
      }
    }
    for (NodeId v : queue) queued[v] = 0;

    // Groups in order of their smallest member id.
    std::vector<NodeId> nodes = comps.touched_nodes();
    std::sort(nodes.begin(), nodes.end());
    std::vector<std::vector<NodeId>> groups;
    std::vector<std::uint32_t> weights;
    std::vector<std::int64_t> slot(n, -1);
    for (NodeId v : nodes) {
      const NodeId root = comps.find(v);
      if (slot[root] < 0) {
        slot[root] = static_cast<std::int64_t>(groups.size());
        groups.emplace_back();
        weights.push_back(comps.initial_of(root));
      }
      groups[static_cast<std::size_t>(slot[root])].push_back(v);
    }
    for (std::size_t g = 0; g < groups.size(); ++g) sketch.add_group(c, groups[g], weights[g]);

    Sketch::CopyStats stats;
    stats.kept_edges = session.kept_edges();
    stats.discarded_edges = session.discarded_edges();
    stats.probed_nodes = session.probed_count();
    stats.revealed_nodes = nodes.size();
    sketch.set_copy_stats(c, stats);
    if (stopped && log != nullptr) log->budget_stopped = true;
  }
}

void probe_directed(EdgeQueryOracle& oracle, const ProbeParams& params,
                    const std::vector<NodeId>& initial, Rng& rng, Sketch& sketch,
                    ProbeLog* log) {
  const std::size_t n = oracle.num_nodes();
  std::vector<NodeId> sorted(initial);
  std::sort(sorted.begin(), sorted.end());

  // Revealed sources of each probed node, stored contiguously per copy.
  std::vector<std::size_t> begin(n, 0);
  std::vector<std::size_t> end(n, 0);
  std::vector<NodeId> sources;
  std::vector<std::uint32_t> visit(n, 0);
  std::uint32_t epoch = 0;
  std::vector<char> revealed(n, 0);
  std::vector<NodeId> revealed_list;
  std::vector<NodeId> reach;
  std::vector<RevealedEdge> batch;
  bool stopped = false;

  for (std::size_t c = 0; c < params.copies; ++c) {
    Rng copy_rng = rng.substream(c + 1);
    ProbeSession session = oracle.open_session();
    sources.clear();

    for (NodeId x : sorted) {
      ++epoch;
      reach.assign(1, x);
      visit[x] = epoch;
      for (std::size_t head = 0; head < reach.size(); ++head) {
        const NodeId w = reach[head];
        if (!session.probed(w)) {
          if (reach.size() > params.tau) {
            if (log != nullptr) ++log->skipped;
            continue;
          }
          if (stopped || oracle.budget_exhausted()) {
            stopped = true;
            continue;
          }
          if (log != nullptr) {
            log->probes.push_back({static_cast<std::uint32_t>(c), w, reach.size()});
          }
          batch.clear();
          session.edge_probe(w, copy_rng, batch);
          begin[w] = sources.size();
          for (const RevealedEdge& r : batch) sources.push_back(r.node);
          end[w] = sources.size();
        } else if (reach.size() > params.tau) {
          continue;
        }
        for (std::size_t i = begin[w]; i < end[w]; ++i) {
          const NodeId s = sources[i];
          if (visit[s] == epoch) continue;
          visit[s] = epoch;
          reach.push_back(s);
        }
      }
      sketch.add_group(c, reach, 1);
      for (NodeId v : reach) {
        if (!revealed[v]) {
          revealed[v] = 1;
          revealed_list.push_back(v);
        }
      }
    }

    Sketch::CopyStats stats;
    stats.kept_edges = session.kept_edges();
    stats.discarded_edges = session.discarded_edges();
    stats.probed_nodes = session.probed_count();
    stats.revealed_nodes = revealed_list.size();
    sketch.set_copy_stats(c, stats);
    for (NodeId v : revealed_list) revealed[v] = 0;
    revealed_list.clear();
    if (stopped && log != nullptr) log->budget_stopped = true;
  }
}

}  // namespace

std::size_t ceil_count(double x) {
  if (!(x > 0.0)) return 0;
  return static_cast<std::size_t>(std::ceil(x - 1e-9 * std::max(1.0, x)));
}

double param_rho_raw(std::size_t n, std::size_t k, double epsilon, double delta) {
  check_common(n, k, epsilon);
  check_delta(delta);
  const double ln_n = std::log(static_cast<double>(n));
  return (2.0 + epsilon) * (static_cast<double>(k) * delta * ln_n + std::log(2.0)) /
         (2.0 * epsilon * epsilon * static_cast<double>(n));
}

double param_rho(std::size_t n, std::size_t k, double epsilon, double delta) {
  return std::min(1.0, param_rho_raw(n, k, epsilon, delta));
}

double param_T_raw(std::size_t n, std::size_t k, double epsilon, double delta) {
  check_common(n, k, epsilon);
  check_delta(delta);
  return 3.0 * (delta + std::log(2.0)) * static_cast<double>(k + 1) *
         std::log(static_cast<double>(n)) / (epsilon * epsilon);
}

std::size_t param_T(std::size_t n, std::size_t k, double epsilon, double delta) {
  return std::max<std::size_t>(1, ceil_count(param_T_raw(n, k, epsilon, delta)));
}

double param_tau_raw(std::size_t n, std::size_t k, double epsilon) {
  if (n < 2) throw ParameterError("parameter formulas need n >= 2");
  if (k < 1) throw ParameterError("parameter formulas need k >= 1");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw ParameterError("epsilon must be positive");
  }
  return static_cast<double>(n) * std::log(1.0 / epsilon) / (epsilon * static_cast<double>(k));
}

std::size_t param_tau(std::size_t n, std::size_t k, double epsilon,
                      std::vector<std::string>* warnings) {
  const double raw = param_tau_raw(n, k, epsilon);
  if (epsilon >= 1.0) {
    if (warnings != nullptr) {
      warnings->push_back("tau formula is not positive for epsilon >= 1; using tau = 1");
    }
    return 1;
  }
  return std::clamp<std::size_t>(ceil_count(raw), 1, n);
}

ProbeParams probe_params_for(std::size_t n, std::size_t k, double epsilon, double delta) {
  ProbeParams p;
  p.rho = param_rho(n, k, epsilon, delta);
  p.copies = param_T(n, k, epsilon, delta);
  p.tau = param_tau(n, k, epsilon);
  p.epsilon = epsilon;
  p.delta = delta;
  p.k = k;
  return p;
}

Sketch probe(EdgeQueryOracle& oracle, const ProbeParams& params, Rng& rng, ProbeLog* log) {
  params.validate();
  const std::size_t n = oracle.num_nodes();
  if (n == 0) throw ParameterError("cannot probe an empty graph");
  Rng sample_rng = rng.substream(0);
  std::vector<NodeId> initial = sample_without_replacement(n, params.initial_count(n), sample_rng);
  std::sort(initial.begin(), initial.end());

  Sketch sketch(n, oracle.directed(), initial, params.copies);
  sketch.params = params;
  if (oracle.directed()) {
    probe_directed(oracle, params, initial, rng, sketch, log);
  } else {
    probe_undirected(oracle, params, initial, rng, sketch, log);
  }
  sketch.finalize();
  return sketch;
}

}  // namespace seedq
