#include "pd/graph.hpp"

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

namespace pd {

bool is_planar(const Graph& g) {
  if (g.n() <= 4 || g.m() <= 8) return true;  // too small to host a K5/K33 subdivision
  if (g.m() > 3 * g.n() - 6) return false;
  using BG = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
  BG bg(g.n());
  for (auto [u, v] : g.edges()) boost::add_edge(u, v, bg);
  return boost::boyer_myrvold_planarity_test(bg);
}

}  // namespace pd
