#include <gtest/gtest.h>

#include <sstream>

#include "sisnet/generators.hpp"
#include "sisnet/graph.hpp"

using namespace sisnet;

TEST(EdgeList, UndirectedStar) {
  const Graph g = load_edge_list("3 2 0\n0 1\n0 2\n");
  EXPECT_EQ(g.size(), 3u);
  EXPECT_FALSE(g.directed());
  EXPECT_EQ(g.edge_count(), 2u);
  EXPECT_TRUE(g.adjacent(0, 1) && g.adjacent(1, 0));
  EXPECT_TRUE(g.adjacent(0, 2) && g.adjacent(2, 0));
  EXPECT_FALSE(g.adjacent(1, 2));
  EXPECT_EQ(g.in_degree(0), 2u);
}

TEST(EdgeList, DirectedOnlySourceInfectsTarget) {
  const Graph g = load_edge_list("2 1 1\n0 1\n");
  EXPECT_TRUE(g.directed());
  EXPECT_TRUE(g.adjacent(1, 0)); // node 0 infects node 1
  EXPECT_FALSE(g.adjacent(0, 1));
  const Matrix a = g.adjacency();
  EXPECT_EQ(a(1, 0), 1.0);
  EXPECT_EQ(a(0, 1), 0.0);
}

TEST(EdgeList, SelfLoopNamesLine) {
  try {
    load_edge_list("2 1 0\n0 0\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError &e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_NE(std::string(e.what()).find("self-loop"), std::string::npos);
  }
}

TEST(EdgeList, MalformedAndOutOfRange) {
  EXPECT_THROW(load_edge_list("3 1 0\n0 x\n"), ParseError);
  EXPECT_THROW(load_edge_list("3 1 0\n0 3\n"), ParseError);
  EXPECT_THROW(load_edge_list("3 1 2\n0 1\n"), ParseError);
  EXPECT_THROW(load_edge_list("3 2 0\n0 1\n"), ParseError); // too few edges
  EXPECT_THROW(load_edge_list("3 1 0\n0 1\n1 2\n"), ParseError); // trailing edge
  EXPECT_THROW(load_edge_list(""), ParseError);
  EXPECT_THROW(load_edge_list("3 1 0\n0 1 2\n"), ParseError);
}

TEST(EdgeList, DuplicatesCollapse) {
  const Graph g = load_edge_list("3 3 0\n0 1\n1 0\n0 1\n");
  EXPECT_EQ(g.edge_count(), 1u);
}

TEST(EdgeList, CrlfAndBlankLinesTolerated) {
  const Graph g = load_edge_list("3 1 0\r\n\r\n1 2\r\n");
  EXPECT_TRUE(g.adjacent(1, 2));
}

TEST(EdgeList, WriteThenLoadIsIdentityOnGeneratedGraphs) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = seed % 2 ? gen_gilbert(15, 0.3, seed) : gen_gilbert(15, 0.2, seed, true);
    std::stringstream ss;
    write_edge_list(ss, g);
    EXPECT_EQ(load_edge_list(ss), g) << "seed " << seed;
  }
}

TEST(Graph, RejectsInvalidConstruction) {
  EXPECT_THROW(Graph::from_edges(0, false, {}), ParameterError);
  EXPECT_THROW(Graph::from_edges(2, false, {{0, 0}}), ParameterError);
  EXPECT_THROW(Graph::from_edges(2, false, {{0, 2}}), ParameterError);
}

TEST(EpidemicParams, RangeChecked) {
  EXPECT_NO_THROW(EpidemicParams(0.0, 1.0));
  EXPECT_THROW(EpidemicParams(-0.1, 0.5), ParameterError);
  EXPECT_THROW(EpidemicParams(0.1, 1.5), ParameterError);
}
