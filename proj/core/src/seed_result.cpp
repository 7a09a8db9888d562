#include "seedq/seed_result.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "seedq/errors.hpp"

namespace seedq {

namespace {

nlohmann::json to_json(const SeedResult& r) {
  using nlohmann::json;
  json doc;
  doc["algorithm"] = r.algorithm;
  doc["seeds"] = r.seeds;
  doc["value"] = r.value ? json(*r.value) : json(nullptr);
  doc["rng"] = {{"key", r.rng_token.key}, {"counter", r.rng_token.counter}};
  doc["query_cost"] = {{"kept_edges", r.query_cost.kept_edges},
                       {"discarded_edges", r.query_cost.discarded_edges},
                       {"spread_queries", r.query_cost.spread_queries},
                       {"reverse_queries", r.query_cost.reverse_queries},
                       {"nominations", r.query_cost.nominations}};
  if (!r.rounds.empty()) {
    json rounds = json::array();
    for (const auto& s : r.rounds) {
      json top = json::array();
      for (const auto& [node, count] : s.top) top.push_back({node, count});
      rounds.push_back({{"index", s.index},
                        {"queries", s.queries},
                        {"nulled", s.nulled},
                        {"selected", s.selected},
                        {"random_fallback", s.random_fallback},
                        {"top", std::move(top)}});
    }
    doc["rounds"] = std::move(rounds);
  }
  return doc;
}

}  // namespace

void write_seed_result_json(std::ostream& out, const SeedResult& result) {
  out << to_json(result).dump(2) << '\n';
}

std::string seed_result_json(const SeedResult& result) { return to_json(result).dump(); }

std::vector<NodeId> read_seed_list(std::istream& in) {
  std::vector<NodeId> seeds;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string token;
    while (fields >> token) {
      NodeId v = 0;
      const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
      if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw ParseError("bad node id '" + token + "'", line_no);
      }
      seeds.push_back(v);
    }
  }
  return seeds;
}

}  // namespace seedq
