#pragma once

#include <functional>
#include <optional>

#include "pd/coloring.hpp"
#include "pd/graph.hpp"

namespace pd {

struct OracleResult {
  int min_paths = 0;
  EdgeColoring witness;
  long long nodes_explored = 0;
  bool timed_out = false;
};

// Node budget for all backtracking searches; GALLAI_NODE_BUDGET overrides.
long long default_node_budget();

// Exact minimum path decomposition by iterative deepening over the class
// count, with parity/component lower bounds. g connected, m >= 1.
OracleResult min_path_decomposition(const Graph& g, long long budget = -1);

enum class GallaiVerdict { HoldsStrict, HoldsRelaxed, Violated };

struct GallaiResult {
  GallaiVerdict verdict;
  OracleResult oracle;
};

GallaiResult gallai_check(const Graph& g, long long budget = -1);

// Every labeled connected planar graph on n vertices (n <= 7), edge-set
// bitmask ascending. The callback also receives the bitmask. mask_lo/mask_hi
// bound the scanned range (for parallel partitioning); mask_hi = -1 means the
// full range. Returns the number of graphs emitted.
long long enumerate_connected_planar(int n, const std::function<void(const Graph&)>& fn,
                                     long long mask_lo = 0, long long mask_hi = -1);

// Connected planar graph with m <= target_m: random recursive tree plus
// random non-edge additions kept while planarity holds. Deterministic per
// seed.
Graph random_planar_graph(int n, int target_m, unsigned long long seed);

}  // namespace pd
