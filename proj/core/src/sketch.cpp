#include "seedq/sketch.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <string>

#include <json.hpp>

#include "seedq/errors.hpp"

namespace seedq {

namespace {

constexpr int kSketchVersion = 1;
constexpr const char* kSketchFormat = "seedq.sketch";

}  // namespace

std::size_t ProbeParams::initial_count(std::size_t n) const {
  const double raw = static_cast<double>(n) * rho;
  auto count = static_cast<std::size_t>(std::ceil(raw - 1e-9 * std::max(1.0, raw)));
  return std::clamp<std::size_t>(count, 1, n);
}

void ProbeParams::validate() const {
  if (!(rho > 0.0 && rho <= 1.0)) throw ParameterError("rho must lie in (0, 1]");
  if (copies < 1) throw ParameterError("T must be at least 1");
  if (tau < 1) throw ParameterError("tau must be at least 1");
}

Sketch::Sketch(std::size_t n, bool directed, std::vector<NodeId> initial_nodes, std::size_t copies)
    : n_(n), directed_(directed), initial_(std::move(initial_nodes)), copies_(copies),
      stats_(copies) {
  for (NodeId v : initial_) {
    if (v >= n_) throw ParameterError("initial node outside the graph");
  }
}

void Sketch::add_group(std::size_t copy, std::span<const NodeId> members, std::uint32_t weight) {
  if (copy >= copies_) throw ParameterError("sketch copy index out of range");
  for (NodeId v : members) {
    if (v >= n_) throw ParameterError("sketch group member outside the graph");
  }
  group_copy_.push_back(static_cast<std::uint32_t>(copy));
  group_weight_.push_back(weight);
  members_.insert(members_.end(), members.begin(), members.end());
  group_offset_.push_back(members_.size());
}

void Sketch::set_copy_stats(std::size_t copy, const CopyStats& stats) { stats_.at(copy) = stats; }

void Sketch::finalize() {
  node_offset_.assign(n_ + 1, 0);
  for (NodeId v : members_) ++node_offset_[v + 1];
  for (std::size_t i = 0; i < n_; ++i) node_offset_[i + 1] += node_offset_[i];
  node_groups_.assign(members_.size(), 0);
  std::vector<std::size_t> cursor(node_offset_.begin(), node_offset_.end() - 1);
  for (std::size_t g = 0; g < num_groups(); ++g) {
    for (NodeId v : group_members(g)) node_groups_[cursor[v]++] = static_cast<std::uint32_t>(g);
  }
}

double Sketch::effective_rho() const {
  return n_ == 0 ? 0.0 : static_cast<double>(initial_.size()) / static_cast<double>(n_);
}

std::uint64_t Sketch::total_kept_edges() const {
  std::uint64_t total = 0;
  for (const auto& s : stats_) total += s.kept_edges;
  return total;
}

std::uint64_t Sketch::total_discarded_edges() const {
  std::uint64_t total = 0;
  for (const auto& s : stats_) total += s.discarded_edges;
  return total;
}

std::uint64_t Sketch::total_revealed_nodes() const {
  std::uint64_t total = 0;
  for (const auto& s : stats_) total += s.revealed_nodes;
  return total;
}

void write_sketch_json(std::ostream& out, const Sketch& sketch) {
  using nlohmann::json;
  json doc;
  doc["format"] = kSketchFormat;
  doc["version"] = kSketchVersion;
  doc["n"] = sketch.num_nodes();
  doc["directed"] = sketch.directed();
  doc["initial_nodes"] = std::vector<NodeId>(sketch.initial_nodes().begin(),
                                             sketch.initial_nodes().end());
  if (sketch.params) {
    json p;
    p["rho"] = sketch.params->rho;
    p["T"] = sketch.params->copies;
    p["tau"] = sketch.params->tau;
    if (sketch.params->epsilon) p["epsilon"] = *sketch.params->epsilon;
    if (sketch.params->delta) p["delta"] = *sketch.params->delta;
    if (sketch.params->k) p["k"] = *sketch.params->k;
    doc["params"] = p;
  }
  std::vector<json> copies(sketch.num_copies());
  for (std::size_t c = 0; c < sketch.num_copies(); ++c) {
    const auto& s = sketch.copy_stats(c);
    copies[c] = {{"index", c},
                 {"kept_edges", s.kept_edges},
                 {"discarded_edges", s.discarded_edges},
                 {"probed_nodes", s.probed_nodes},
                 {"revealed_nodes", s.revealed_nodes},
                 {"groups", json::array()}};
  }
  for (std::size_t g = 0; g < sketch.num_groups(); ++g) {
    auto members = sketch.group_members(g);
    copies[sketch.group_copy(g)]["groups"].push_back(
        {{"initial_count", sketch.group_weight(g)},
         {"members", std::vector<NodeId>(members.begin(), members.end())}});
  }
  doc["copies"] = std::move(copies);
  out << doc.dump() << '\n';
}

Sketch read_sketch_json(std::istream& in) {
  using nlohmann::json;
  json doc;
  try {
    in >> doc;
    if (doc.value("format", std::string()) != kSketchFormat) {
      throw ParseError("not a seedq sketch artifact");
    }
    const int version = doc.at("version").get<int>();
    if (version != kSketchVersion) {
      throw ParseError("unsupported sketch version " + std::to_string(version));
    }
    const auto& copies = doc.at("copies");
    Sketch sketch(doc.at("n").get<std::size_t>(), doc.at("directed").get<bool>(),
                  doc.at("initial_nodes").get<std::vector<NodeId>>(), copies.size());
    for (const auto& copy : copies) {
      const auto c = copy.at("index").get<std::size_t>();
      for (const auto& group : copy.at("groups")) {
        auto members = group.at("members").get<std::vector<NodeId>>();
        sketch.add_group(c, members, group.at("initial_count").get<std::uint32_t>());
      }
      Sketch::CopyStats stats;
      stats.kept_edges = copy.value("kept_edges", std::uint64_t{0});
      stats.discarded_edges = copy.value("discarded_edges", std::uint64_t{0});
      stats.probed_nodes = copy.value("probed_nodes", std::size_t{0});
      stats.revealed_nodes = copy.value("revealed_nodes", std::size_t{0});
      sketch.set_copy_stats(c, stats);
    }
    if (doc.contains("params")) {
      const auto& p = doc["params"];
      ProbeParams params;
      params.rho = p.at("rho").get<double>();
      params.copies = p.at("T").get<std::size_t>();
      params.tau = p.at("tau").get<std::size_t>();
      if (p.contains("epsilon")) params.epsilon = p["epsilon"].get<double>();
      if (p.contains("delta")) params.delta = p["delta"].get<double>();
      if (p.contains("k")) params.k = p["k"].get<std::size_t>();
      sketch.params = params;
    }
    sketch.finalize();
    return sketch;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed sketch artifact: ") + e.what());
  }
}

}  // namespace seedq
