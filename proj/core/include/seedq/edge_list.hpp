#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "seedq/graph.hpp"

namespace seedq {

// Edge-list text format: one "u v" or "u v prob" record per line, fields
// separated by whitespace, lines starting with '#' ignored. A comment of the
// form "# seedq nodes=N directed=0|1 p=P" (written by write_edge_list) restores
// trailing isolated nodes, the graph direction and the shared probability.

struct LoadOptions {
  /// Overrides the header; undirected when neither is given.
  std::optional<bool> directed;
  /// Probability for records without a third column; falls back to the
  /// header's p, then to 1.
  std::optional<double> default_prob;
  /// Compact sparse ids to 0..n-1 in order of first appearance.
  bool remap_ids = false;
};

struct LoadedGraph {
  Graph graph;
  /// original_ids[i] is the file id of node i; empty unless remapped.
  std::vector<std::uint64_t> original_ids;
};

LoadedGraph load_edge_list(std::istream& in, const LoadOptions& options = {});
LoadedGraph load_edge_list_file(const std::filesystem::path& path,
                                const LoadOptions& options = {});

void write_edge_list(std::ostream& out, const Graph& graph);
void write_edge_list_file(const std::filesystem::path& path, const Graph& graph);

/// Directed "u v b" records; the third column is the threshold weight b_uv.
/// Missing weights default to 1 / in_degree(v).
WeightedLTGraph load_lt_edge_list(std::istream& in);
void write_lt_edge_list(std::ostream& out, const WeightedLTGraph& graph);

}  // namespace seedq
