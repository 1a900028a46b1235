#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "pd/graph.hpp"

using namespace pd;

namespace {

Graph complete(int n) {
  std::vector<std::pair<int, int>> es;
  for (int j = 1; j < n; j++)
    for (int i = 0; i < j; i++) es.emplace_back(i, j);
  return Graph::from_edges(n, es);
}

Graph k5_minus() {
  std::vector<std::pair<int, int>> es;
  for (int j = 1; j < 5; j++)
    for (int i = 0; i < j; i++)
      if (!(i == 0 && j == 4)) es.emplace_back(i, j);
  return Graph::from_edges(5, es);
}

}  // namespace

TEST_CASE("edge list parsing") {
  Graph g = parse_graph("0 1\n1 2\n2 0");
  CHECK(g.n() == 3);
  CHECK(g.m() == 3);
  CHECK(g.has_edge(0, 2));

  Graph k5m = parse_graph("0 1\n0 2\n0 3\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n");
  CHECK(k5m.n() == 5);
  CHECK(k5m.m() == 9);

  CHECK_THROWS_AS(parse_graph("0 1\n0 1"), DuplicateEdge);
  CHECK_THROWS_AS(parse_graph("2 2"), Loop);
  CHECK_THROWS_AS(parse_graph("0 1 2"), ParseError);
  CHECK_THROWS_AS(parse_graph("0"), ParseError);

  Graph with_comments = parse_graph("# triangle\n0 1 # first\n1 2\n\n2 0");
  CHECK(with_comments.m() == 3);
}

TEST_CASE("graph6 round trip") {
  for (const Graph& g : {complete(4), k5_minus(), parse_graph("0 1\n1 2\n2 3"), Graph(3)}) {
    std::string enc = to_graph6(g);
    Graph back = parse_graph6(enc);
    CHECK(back == g);
    CHECK(parse_graph(enc) == g);  // auto-detection
  }
  // Known encoding: K4 is "C~".
  CHECK(to_graph6(complete(4)) == "C~");
  CHECK(parse_graph6(">>graph6<<C~") == complete(4));
}

TEST_CASE("edge list round trip") {
  Graph g = k5_minus();
  CHECK(parse_graph(to_edge_list(g)) == g);
}

TEST_CASE("planarity panel") {
  CHECK(is_planar(complete(4)));
  CHECK_FALSE(is_planar(complete(5)));
  CHECK(is_planar(k5_minus()));
  Graph k33 = Graph::from_edges(6, {{0, 3}, {0, 4}, {0, 5}, {1, 3}, {1, 4}, {1, 5},
                                    {2, 3}, {2, 4}, {2, 5}});
  CHECK_FALSE(is_planar(k33));
  Graph tree = parse_graph("0 1\n1 2\n1 3\n3 4\n3 5");
  CHECK(is_planar(tree));
}

TEST_CASE("connected components") {
  Graph k3 = complete(3);
  auto comps = connected_components(k3);
  REQUIRE(comps.size() == 1);
  CHECK(comps[0] == std::vector<int>{0, 1, 2});

  Graph two = Graph::from_edges(4, {{0, 1}, {2, 3}});
  comps = connected_components(two);
  REQUIRE(comps.size() == 2);
  CHECK(comps[0] == std::vector<int>{0, 1});
  CHECK(comps[1] == std::vector<int>{2, 3});

  Graph empty3(3);
  comps = connected_components(empty3);
  REQUIRE(comps.size() == 3);
  CHECK(comps[2] == std::vector<int>{2});
}

TEST_CASE("cut enumeration") {
  Graph p3 = parse_graph("0 1\n1 2");
  auto cuts = enumerate_cuts(p3, 1);
  REQUIRE(cuts.size() == 1);
  CHECK(cuts[0].vertices == std::vector<int>{1});
  CHECK(cuts[0].separated_witness == std::pair<int, int>{0, 2});

  CHECK(enumerate_cuts(complete(4), 3).empty());

  auto k5m_cuts = enumerate_cuts(k5_minus(), 3);
  REQUIRE(k5m_cuts.size() == 1);
  CHECK(k5m_cuts[0].vertices == std::vector<int>{1, 2, 3});
  std::set<int> wit{k5m_cuts[0].separated_witness.first, k5m_cuts[0].separated_witness.second};
  CHECK(wit == std::set<int>{0, 4});
}

TEST_CASE("cut enumeration agrees with removal check on small graphs") {
  // Wheel on 6 vertices: hub 0, rim 1..5.
  Graph wheel = parse_graph("0 1\n0 2\n0 3\n0 4\n0 5\n1 2\n2 3\n3 4\n4 5\n5 1");
  for (auto& cut : enumerate_cuts(wheel, 3)) {
    Graph rest = wheel.remove_vertices(cut.vertices);
    CHECK(connected_components(rest).size() > 1);
  }
}

TEST_CASE("exception classifier") {
  CHECK(classify_exception(complete(3)) == ExceptionalKind::K3);
  CHECK(classify_exception(k5_minus()) == ExceptionalKind::K5minus);
  // K5 minus {1,3} instead of {0,4}: same class.
  Graph other_k5m = complete(5).remove_edge(1, 3);
  CHECK(classify_exception(other_k5m) == ExceptionalKind::K5minus);
  Graph c4 = parse_graph("0 1\n1 2\n2 3\n3 0");
  CHECK(classify_exception(c4) == ExceptionalKind::Other);
  CHECK(classify_exception(complete(4)) == ExceptionalKind::Other);
}

TEST_CASE("induced subgraph relabels densely") {
  Graph g = k5_minus();
  std::vector<int> names;
  Graph sub = g.remove_vertices({0, 4}, &names);
  CHECK(sub.n() == 3);
  CHECK(names == std::vector<int>{1, 2, 3});
  CHECK(sub.m() == 3);  // 1,2,3 form a triangle in K5 minus {0,4}
}
