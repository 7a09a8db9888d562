#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "seedq/edge_list.hpp"
#include "seedq/errors.hpp"
#include "seedq/generators.hpp"
#include "test_util.hpp"

namespace seedq {
namespace {

Graph parse(const std::string& text, const LoadOptions& options = {}) {
  std::istringstream in(text);
  return load_edge_list(in, options).graph;
}

std::set<std::pair<NodeId, NodeId>> edge_set(const Graph& g) {
  std::set<std::pair<NodeId, NodeId>> out;
  for (const Edge& e : g.edges()) {
    out.emplace(g.directed() ? e.u : std::min(e.u, e.v), g.directed() ? e.v : std::max(e.u, e.v));
  }
  return out;
}

TEST(EdgeList, MinimalPath) {
  const Graph g = parse("0 1\n1 2");
  EXPECT_EQ(g.num_nodes(), 3u);
  EXPECT_EQ(g.num_edges(), 2u);
  EXPECT_FALSE(g.directed());
}

TEST(EdgeList, DuplicateLinesCollapse) {
  const Graph g = parse("0 1\n0 1\n1 0\n");
  EXPECT_EQ(g.num_nodes(), 2u);
  EXPECT_EQ(g.num_edges(), 1u);
}

TEST(EdgeList, CommentsBlankLinesAndProbabilities) {
  const Graph g = parse("# a comment\n\n0 1 0.25\n  1 2\t0.75\n");
  ASSERT_EQ(g.num_edges(), 2u);
  EXPECT_DOUBLE_EQ(g.prob(0), 0.25);
  EXPECT_DOUBLE_EQ(g.prob(1), 0.75);
}

TEST(EdgeList, MalformedLineReportsLineNumber) {
  try {
    parse("0 1\n1 x\n");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(parse("0\n"), ParseError);
  EXPECT_THROW(parse("0 1 0.5 9\n"), ParseError);
  EXPECT_THROW(parse("-1 2\n"), ParseError);
  EXPECT_THROW(parse("3 3\n"), ParseError);
}

TEST(EdgeList, ProbabilityOutsideUnitIntervalIsRangeError) {
  EXPECT_THROW(parse("0 1 1.5\n"), RangeError);
  EXPECT_THROW(parse("0 1 -0.1\n"), RangeError);
}

TEST(EdgeList, RemapsSparseIds) {
  std::istringstream in("100 7\n7 5000000000\n");
  LoadOptions options;
  options.remap_ids = true;
  const LoadedGraph loaded = load_edge_list(in, options);
  EXPECT_EQ(loaded.graph.num_nodes(), 3u);
  ASSERT_EQ(loaded.original_ids.size(), 3u);
  EXPECT_EQ(loaded.original_ids[0], 100u);
  EXPECT_EQ(loaded.original_ids[1], 7u);
  EXPECT_EQ(loaded.original_ids[2], 5000000000u);
}

TEST(EdgeList, RoundTripPreservesNodesEdgesAndProbabilities) {
  Rng rng(11);
  for (int i = 0; i < 100; ++i) {
    const bool directed = i % 3 == 0;
    Graph g = testing::random_tiny_graph(rng, 10, 20, 0.37, directed);
    if (i % 4 == 1) {
      std::vector<EdgeSpec> specs;
      for (const Edge& e : g.edges()) specs.push_back({e.u, e.v, rng.uniform()});
      g = Graph::from_edges(g.num_nodes() + 2, specs, directed);
    }
    std::stringstream buf;
    write_edge_list(buf, g);
    const Graph back = load_edge_list(buf).graph;
    ASSERT_EQ(back.num_nodes(), g.num_nodes());
    ASSERT_EQ(back.directed(), g.directed());
    ASSERT_EQ(edge_set(back), edge_set(g));
    for (EdgeId e = 0; e < g.num_edges(); ++e) ASSERT_EQ(back.prob(e), g.prob(e));
  }
}

TEST(EdgeList, LinearThresholdRoundTrip) {
  Rng rng(5);
  const Graph g = gen_erdos_renyi(12, 0.3, 9).as_directed();
  const WeightedLTGraph lt = random_lt_weights(g, rng);
  std::stringstream buf;
  write_lt_edge_list(buf, lt);
  const WeightedLTGraph back = load_lt_edge_list(buf);
  ASSERT_EQ(back.graph().num_edges(), lt.graph().num_edges());
  for (EdgeId e = 0; e < lt.graph().num_edges(); ++e) {
    EXPECT_EQ(back.graph().edge(e), lt.graph().edge(e));
    EXPECT_EQ(back.weight(e), lt.weight(e));
  }
}

TEST(EdgeList, LinearThresholdDefaultsToInverseInDegree) {
  std::istringstream in("0 2\n1 2\n2 3\n");
  const WeightedLTGraph lt = load_lt_edge_list(in);
  EXPECT_DOUBLE_EQ(lt.in_weight(2), 1.0);
  EXPECT_DOUBLE_EQ(lt.in_weight(3), 1.0);
}

}  // namespace
}  // namespace seedq
