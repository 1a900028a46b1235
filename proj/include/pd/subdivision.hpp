#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pd/coloring.hpp"
#include "pd/errors.hpp"
#include "pd/graph.hpp"

namespace pd {

// Shapes of the path systems used to treat a four-vertex family.
//  - K4: six internally disjoint paths, one per pair of roots.
//  - C4Doubled: a four-cycle of paths with the two "long" sides doubled;
//    two root pairs are joined by one path each, two pairs by two parallel
//    paths, and two pairs are not joined at all.
//  - C4Contact: a C4Doubled in which one path of each doubled pair passes
//    through a single common vertex (the contact).
enum class SubdivisionKind { K4, C4Doubled, C4Contact };

struct Subdivision {
  SubdivisionKind kind = SubdivisionKind::K4;
  std::array<int, 4> roots{-1, -1, -1, -1};
  // Vertex walks; the first and last entry of each walk are roots, internal
  // vertices are not. Paths are internally disjoint, except that for
  // C4Contact the contact vertex appears internally in exactly two paths.
  std::vector<std::vector<int>> paths;
  int contact = -1;

  bool is_root(int v) const;
  int root_index(int v) const;  // -1 when v is not a root
  std::set<int> vertex_set() const;
  bool on_subdivision(int v) const;
  std::vector<Edge> edge_list() const;  // sorted, not deduplicated
  bool has_edge(int u, int v) const;
  // Indices of paths with endpoint v.
  std::vector<int> paths_at(int v) const;
  // Number of paths joining roots()[i] and roots()[j].
  int link(int i, int j) const;
  // Index of a path whose walk is exactly the edge (u, v), or -1.
  int edge_path(int u, int v) const;
  // Neighbors v of u in g with the edge uv outside the subdivision.
  std::vector<int> remaining_neighbors(const Graph& g, int u) const;
};

inline constexpr int kRed = 0;
inline constexpr int kBlue = 1;

// A split of the subdivision into two host paths. path_color runs parallel
// to Subdivision::paths; end_color maps each root to the single color whose
// host path ends at that root.
struct SubdivisionColoring {
  std::vector<int> path_color;
  std::map<int, int> end_color;
};

struct SubdivisionProperties {
  // No root that is unsettled (or whose remaining-neighbor edge lies on a
  // path) has an edge to a non-consecutive vertex of one of its own paths.
  bool incident_chord_free = true;
  // No root has both remaining neighbors on a common non-incident path with
  // an edge between them skipping along that path.
  bool remote_chord_free = true;
  // No rewiring step of redirect() applies.
  bool rewire_stable = true;
  std::string incident_witness;
  std::string remote_witness;
  std::string rewire_witness;
  bool all() const { return incident_chord_free && remote_chord_free && rewire_stable; }
};

struct DistantEntry {
  int root = -1;
  int path_index = -1;
  std::pair<int, int> triangle{-1, -1};  // the two remaining neighbors
};

struct ProblemReport {
  std::vector<DistantEntry> distant;
  // Groups of unsettled roots transitively sharing remaining neighbors.
  std::vector<std::vector<int>> close_groups;
  std::vector<int> settled;  // root vertices, ascending
  // Structural tag per root: "fork" (remaining neighbors not adjacent),
  // "tri" (adjacent), "tri_inline" (adjacent with the edge on a path).
  std::map<int, std::string> patterns;
};

struct SubdivisionCheck {
  bool ok = true;
  std::vector<std::string> violations;
};

// Searches for six internally disjoint paths linking every pair of roots.
// Returns nullopt only when the search space is exhausted.
std::optional<Subdivision> find_rooted_k4(const Graph& g, const std::vector<int>& roots,
                                          long long node_budget = -1);

// K4 search first; on exhaustion, searches for a doubled-four-cycle system
// whose chord-eliminated form passes validate_subdivision (including the
// doubled-cycle sharing restrictions). Throws NotFound when no shape fits.
Subdivision find_k_subdivision(const Graph& g, const std::vector<int>& roots,
                               long long node_budget = -1);

// Exhaustively shortcuts paths along their chords. A chord between two
// roots whose edge already forms a path of the subdivision is kept.
Subdivision eliminate_chords(const Graph& g, Subdivision s);

SubdivisionProperties check_properties(const Graph& g, const Subdivision& s);

// Applies the four local rewirings that move shared or adjacent remaining
// neighbors onto the subdivision until none applies (at most four times).
Subdivision redirect(const Graph& g, Subdivision s);

// Rewires the head of the path starting at u so that u keeps the non-S
// neighbor w plus one former remaining neighbor, chosen non-adjacent to w.
// path_hint selects the path to adjust; -1 picks the first that fits.
Subdivision routing(const Graph& g, Subdivision s, int u, int w, int path_hint = -1);

struct TwoColorConstraints {
  std::map<int, int> require_end_color;              // root -> color
  std::vector<std::pair<int, int>> avoid_path_color; // (root, path index):
  // the color ending at the root must differ from that path's color
};

SubdivisionColoring two_color(const Subdivision& s, const TwoColorConstraints& constraints = {});

ProblemReport classify_problems(const Graph& g, const Subdivision& s);

SubdivisionCheck validate_subdivision(const Graph& g, const Subdivision& s);

std::string subdivision_dot(const Graph& g, const Subdivision& s,
                            const SubdivisionColoring* coloring = nullptr);

}  // namespace pd
