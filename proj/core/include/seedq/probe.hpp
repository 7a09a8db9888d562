#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "seedq/oracles.hpp"
#include "seedq/rng.hpp"
#include "seedq/sketch.hpp"

namespace seedq {

// Parameter formulas. All logarithms are natural logarithms. Preconditions:
// n >= 2, k >= 1, 0 < epsilon <= 1, delta > 0; violations throw ParameterError.

/// (2+e)(k d ln n + ln 2) / (2 e^2 n), clamped to (0, 1].
double param_rho(std::size_t n, std::size_t k, double epsilon, double delta);
/// Unclamped, unrounded value of the rho formula.
double param_rho_raw(std::size_t n, std::size_t k, double epsilon, double delta);

/// ceil(3 (d + ln 2)(k + 1) ln n / e^2).
std::size_t param_T(std::size_t n, std::size_t k, double epsilon, double delta);
double param_T_raw(std::size_t n, std::size_t k, double epsilon, double delta);

/// ceil(n ln(1/e) / (e k)), capped at n. For epsilon >= 1 the formula is not
/// positive; returns 1 and appends a note to `warnings` when given.
std::size_t param_tau(std::size_t n, std::size_t k, double epsilon,
                      std::vector<std::string>* warnings = nullptr);
double param_tau_raw(std::size_t n, std::size_t k, double epsilon);

/// All three parameters for an accuracy target.
ProbeParams probe_params_for(std::size_t n, std::size_t k, double epsilon, double delta);

/// ceil(x) that ignores floating-point noise just above an integer.
std::size_t ceil_count(double x);

struct ProbeEvent {
  std::uint32_t copy = 0;
  NodeId node = 0;
  /// Size of the node's revealed component (or reach set) when it was probed.
  std::size_t component_size = 0;
};

/// Optional trace of probing decisions.
struct ProbeLog {
  std::vector<ProbeEvent> probes;
  /// Nodes left unprobed because their component had grown past tau.
  std::uint64_t skipped = 0;
  bool budget_stopped = false;
};

/// Builds T limitedly probed copies from one shared set of ceil(n rho)
/// initial nodes. Copy i draws from rng.substream(i + 1); the initial nodes
/// from rng.substream(0).
///
/// Undirected: a FIFO queue seeded with the sorted initial nodes; a node is
/// probed only while its revealed component has at most tau nodes, so a
/// component overshoots tau by at most one reveal batch. Directed: for each
/// initial node the set of nodes reaching it is grown backwards the same way;
/// a node's revealed in-edges are reused by later initial nodes of the copy.
///
/// When the oracle's edge budget runs out, probing stops and the sketch keeps
/// what was revealed.
Sketch probe(EdgeQueryOracle& oracle, const ProbeParams& params, Rng& rng,
             ProbeLog* log = nullptr);

}  // namespace seedq
