#include "seedq/edge_list.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>

#include "seedq/errors.hpp"

namespace seedq {

namespace {

struct Record {
  std::uint64_t u = 0;
  std::uint64_t v = 0;
  std::optional<double> third;
  std::size_t line = 0;
};

struct Parsed {
  std::vector<Record> records;
  std::optional<std::size_t> header_nodes;
  std::optional<bool> header_directed;
  std::optional<double> header_prob;
};

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    std::size_t j = i;
    while (j < line.size() && !is_space(line[j])) ++j;
    if (j > i) fields.push_back(line.substr(i, j - i));
    i = j;
  }
  return fields;
}

std::uint64_t parse_id(std::string_view field, std::size_t line) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw ParseError("expected a non-negative integer node id, got '" + std::string(field) + "'",
                     line);
  }
  return value;
}

double parse_real(std::string_view field, std::size_t line) {
  double value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw ParseError("expected a number, got '" + std::string(field) + "'", line);
  }
  return value;
}

void parse_header(std::string_view body, Parsed& out) {
  // body is the text after "# seedq"
  for (std::string_view field : split_fields(body)) {
    auto eq = field.find('=');
    if (eq == std::string_view::npos) continue;
    std::string_view key = field.substr(0, eq);
    std::string_view value = field.substr(eq + 1);
    if (key == "nodes") {
      std::size_t n = 0;
      auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), n);
      if (ec == std::errc() && ptr == value.data() + value.size()) out.header_nodes = n;
    } else if (key == "directed") {
      out.header_directed = value == "1" || value == "true";
    } else if (key == "p") {
      double p = 0;
      auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), p);
      if (ec == std::errc() && ptr == value.data() + value.size()) out.header_prob = p;
    }
  }
}

Parsed parse_records(std::istream& in) {
  Parsed parsed;
  std::string text;
  std::size_t line_no = 0;
  while (std::getline(in, text)) {
    ++line_no;
    std::string_view line = text;
    auto first = std::find_if_not(line.begin(), line.end(), is_space);
    if (first == line.end()) continue;
    if (*first == '#') {
      std::string_view rest = line.substr(static_cast<std::size_t>(first - line.begin()) + 1);
      auto fields = split_fields(rest);
      if (!fields.empty() && fields[0] == "seedq") {
        parse_header(rest.substr(rest.find("seedq") + 5), parsed);
      }
      continue;
    }
    auto fields = split_fields(line);
    if (fields.size() != 2 && fields.size() != 3) {
      throw ParseError("expected 'u v' or 'u v prob', found " + std::to_string(fields.size()) +
                           " fields",
                       line_no);
    }
    Record r;
    r.line = line_no;
    r.u = parse_id(fields[0], line_no);
    r.v = parse_id(fields[1], line_no);
    if (fields.size() == 3) r.third = parse_real(fields[2], line_no);
    if (r.u == r.v) throw ParseError("self-loop at node " + std::to_string(r.u), line_no);
    parsed.records.push_back(r);
  }
  return parsed;
}

void write_real(std::ostream& out, double value) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  out.write(buf, ptr - buf);
}

}  // namespace

LoadedGraph load_edge_list(std::istream& in, const LoadOptions& options) {
  Parsed parsed = parse_records(in);
  const bool directed = options.directed.value_or(parsed.header_directed.value_or(false));

  LoadedGraph result;
  std::unordered_map<std::uint64_t, NodeId> remap;
  auto map_id = [&](std::uint64_t id, std::size_t line) -> NodeId {
    if (!options.remap_ids) {
      if (id >= std::numeric_limits<NodeId>::max()) {
        throw ParseError("node id " + std::to_string(id) + " too large", line);
      }
      return static_cast<NodeId>(id);
    }
    auto [it, inserted] = remap.try_emplace(id, static_cast<NodeId>(result.original_ids.size()));
    if (inserted) result.original_ids.push_back(id);
    return it->second;
  };

  std::vector<EdgeSpec> specs;
  specs.reserve(parsed.records.size());
  std::size_t n = 0;
  for (const Record& r : parsed.records) {
    if (r.third && !(*r.third >= 0.0 && *r.third <= 1.0)) {
      throw RangeError("line " + std::to_string(r.line) + ": probability " +
                       std::to_string(*r.third) + " outside [0, 1]");
    }
    EdgeSpec spec{map_id(r.u, r.line), map_id(r.v, r.line), r.third};
    n = std::max<std::size_t>(n, std::max(spec.u, spec.v) + 1);
    specs.push_back(spec);
  }
  if (options.remap_ids) {
    n = result.original_ids.size();
  } else if (parsed.header_nodes) {
    n = std::max(n, *parsed.header_nodes);
  }
  const double default_prob = options.default_prob.value_or(parsed.header_prob.value_or(1.0));
  result.graph = Graph::from_edges(n, specs, directed, default_prob);
  return result;
}

LoadedGraph load_edge_list_file(const std::filesystem::path& path, const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open edge list '" + path.string() + "'");
  return load_edge_list(in, options);
}

void write_edge_list(std::ostream& out, const Graph& graph) {
  const bool with_prob = graph.heterogeneous();
  out << "# seedq nodes=" << graph.num_nodes() << " directed=" << (graph.directed() ? 1 : 0);
  if (!with_prob) {
    out << " p=";
    write_real(out, *graph.uniform_prob());
  }
  out << '\n';
  for (EdgeId e = 0; e < graph.num_edges(); ++e) {
    out << graph.edge(e).u << ' ' << graph.edge(e).v;
    if (with_prob) {
      out << ' ';
      write_real(out, graph.prob(e));
    }
    out << '\n';
  }
}

void write_edge_list_file(const std::filesystem::path& path, const Graph& graph) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write edge list '" + path.string() + "'");
  write_edge_list(out, graph);
}

WeightedLTGraph load_lt_edge_list(std::istream& in) {
  Parsed parsed = parse_records(in);
  std::vector<EdgeSpec> specs;
  std::size_t n = parsed.header_nodes.value_or(0);
  bool all_weighted = true;
  for (const Record& r : parsed.records) {
    if (r.u >= std::numeric_limits<NodeId>::max() || r.v >= std::numeric_limits<NodeId>::max()) {
      throw ParseError("node id too large", r.line);
    }
    n = std::max<std::size_t>(n, std::max(r.u, r.v) + 1);
    specs.push_back({static_cast<NodeId>(r.u), static_cast<NodeId>(r.v), std::nullopt});
    all_weighted = all_weighted && r.third.has_value();
  }
  Graph graph = Graph::from_edges(n, specs, true);
  if (!all_weighted) return WeightedLTGraph::uniform_in_degree(std::move(graph));

  // from_edges keeps the first of duplicate records; weights follow the same rule.
  std::unordered_map<std::uint64_t, double> weight_of;
  for (const Record& r : parsed.records) weight_of.try_emplace((r.u << 32) | r.v, *r.third);
  std::vector<double> weights(graph.num_edges());
  for (EdgeId e = 0; e < graph.num_edges(); ++e) {
    const Edge& edge = graph.edge(e);
    weights[e] = weight_of.at((static_cast<std::uint64_t>(edge.u) << 32) | edge.v);
  }
  return WeightedLTGraph(std::move(graph), std::move(weights));
}

void write_lt_edge_list(std::ostream& out, const WeightedLTGraph& lt) {
  out << "# seedq nodes=" << lt.num_nodes() << " directed=1\n";
  for (EdgeId e = 0; e < lt.graph().num_edges(); ++e) {
    out << lt.graph().edge(e).u << ' ' << lt.graph().edge(e).v << ' ';
    write_real(out, lt.weight(e));
    out << '\n';
  }
}

}  // namespace seedq
