#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pd/coloring.hpp"
#include "pd/errors.hpp"
#include "pd/graph.hpp"

namespace pd {

// Two vertices of degree <= 4, ordered by degree sum then lexicographically.
std::optional<std::pair<int, int>> find_ci(const Graph& g);

struct AlmostCheck {
  bool ok = true;
  std::vector<int> witness_cut;  // when !ok
  std::string detail;
};

// True iff no vertex cut of size <= 3 separates two members of U, and no such
// cut A separates two neighbors of a member lying inside A.
AlmostCheck is_almost_4_connected(const Graph& g, const std::vector<int>& U);

// An induced subgraph H with one edge allowed to be virtual: the damaged pair
// is joined in H, realized in the host by bridge_path when the edge is absent
// there. Every non-damaged vertex keeps its host degree.
struct Contraction {
  std::vector<int> subgraph;     // host vertex ids, ascending
  std::vector<int> damaged;      // 2 host ids
  std::vector<Edge> edges;       // E(H) in host ids, including the damaged edge
  std::vector<int> bridge_path;  // host vertex walk u1..u2; {u1,u2} when the edge is real
  Graph local;                   // H relabeled densely following `subgraph`
  std::vector<int> to_host;      // local id -> host id
};

Contraction minimal_2_contraction(const Graph& g);

enum class ConfigKind { CI, CII };

struct ConfigurationWitness {
  ConfigKind kind = ConfigKind::CI;
  std::pair<int, int> ci_pair{-1, -1};
  std::vector<int> four_family;
  std::string certificate;
};

// Every connected planar graph on >= 3 vertices yields a witness; a NotFound
// escape marks an implementation bug, not an input condition.
ConfigurationWitness find_configuration(const Graph& g);

}  // namespace pd
