#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "seedq/graph.hpp"

namespace seedq {

/// Parameters of one probing run. epsilon/delta/k are recorded when the
/// values were derived from an accuracy target.
struct ProbeParams {
  double rho = 1.0;
  std::size_t copies = 1;  // T
  std::size_t tau = 1;
  std::optional<double> epsilon;
  std::optional<double> delta;
  std::optional<std::size_t> k;

  /// ceil(n * rho), at least 1 and at most n.
  std::size_t initial_count(std::size_t n) const;
  /// Throws ParameterError unless 0 < rho <= 1, copies >= 1, tau >= 1.
  void validate() const;
};

/// The output of probing: T copies of the graph, each reduced to groups of
/// nodes with a weight. Undirected copies hold their connected components,
/// weighted by the number of initial nodes inside. Directed copies hold, for
/// every initial node, the set of nodes that reach it (weight 1); such groups
/// may overlap. A seed set covers a group when it contains any member.
class Sketch {
 public:
  struct CopyStats {
    std::uint64_t kept_edges = 0;
    std::uint64_t discarded_edges = 0;
    std::size_t probed_nodes = 0;
    std::size_t revealed_nodes = 0;
  };

  Sketch(std::size_t n, bool directed, std::vector<NodeId> initial_nodes, std::size_t copies);

  /// Adds a group to copy `copy`. Call finalize() once all groups are in.
  void add_group(std::size_t copy, std::span<const NodeId> members, std::uint32_t weight);
  void set_copy_stats(std::size_t copy, const CopyStats& stats);
  void finalize();

  std::size_t num_nodes() const noexcept { return n_; }
  bool directed() const noexcept { return directed_; }
  std::span<const NodeId> initial_nodes() const noexcept { return initial_; }
  std::size_t num_copies() const noexcept { return copies_; }
  /// |V_rho| / n, the realized sampling fraction used for normalization.
  double effective_rho() const;

  std::size_t num_groups() const noexcept { return group_weight_.size(); }
  std::uint32_t group_copy(std::size_t g) const { return group_copy_[g]; }
  std::uint32_t group_weight(std::size_t g) const { return group_weight_[g]; }
  std::span<const NodeId> group_members(std::size_t g) const {
    return {members_.data() + group_offset_[g], members_.data() + group_offset_[g + 1]};
  }
  /// Groups (across all copies) that contain v. Requires finalize().
  std::span<const std::uint32_t> groups_of(NodeId v) const {
    return {node_groups_.data() + node_offset_[v], node_groups_.data() + node_offset_[v + 1]};
  }

  const CopyStats& copy_stats(std::size_t copy) const { return stats_[copy]; }
  std::uint64_t total_kept_edges() const;
  std::uint64_t total_discarded_edges() const;
  /// Sum over copies of revealed node counts.
  std::uint64_t total_revealed_nodes() const;

  std::optional<ProbeParams> params;

 private:
  std::size_t n_;
  bool directed_;
  std::vector<NodeId> initial_;
  std::size_t copies_;

  std::vector<std::uint32_t> group_copy_;
  std::vector<std::uint32_t> group_weight_;
  std::vector<std::size_t> group_offset_{0};
  std::vector<NodeId> members_;
  std::vector<CopyStats> stats_;

  std::vector<std::size_t> node_offset_;
  std::vector<std::uint32_t> node_groups_;
};

/// Versioned JSON artifact: node count, initial nodes, and per copy the group
/// membership, weights and edge counts.
void write_sketch_json(std::ostream& out, const Sketch& sketch);
Sketch read_sketch_json(std::istream& in);

}  // namespace seedq
