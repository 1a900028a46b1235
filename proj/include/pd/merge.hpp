#pragma once

#include <set>
#include <string>
#include <vector>

#include "pd/coloring.hpp"
#include "pd/errors.hpp"
#include "pd/graph.hpp"

namespace pd {

// Replaces one cycle and one edge-disjoint path that meet in 1..5 vertices by
// two paths on the same edge set, or reports the single impossible shape.
struct MergeResult {
  bool exceptional = false;
  std::vector<Edge> first, second;  // edge partition of C ∪ P when !exceptional
};

MergeResult merge_cycle_path(const Graph& g, const std::vector<Edge>& cycle_edges,
                             const std::vector<Edge>& path_edges);

// Iteratively merges every cycle class of a mixed coloring with a companion
// path class. Companion choice: smallest color id whose class shares 1..5
// vertices with the cycle and does not form the exceptional shape.
struct CycleElimination {
  bool ok = true;
  EdgeColoring coloring;
  int stuck_cycle_color = -1;  // when !ok
  std::string failure;
};

CycleElimination eliminate_cycles(const Graph& g, const EdgeColoring& c,
                                  const std::set<int>& protected_colors = {});

}  // namespace pd
