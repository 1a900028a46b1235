#include "pd/merge.hpp"

#include <algorithm>
#include <map>

namespace pd {

namespace {

// DFS over 2-labelings of the edges, pruning any partial labeling where a
// class stops being a linear forest. Edges are visited in an order where
// each edge touches an already-visited one, so degree pruning bites early.
struct TwoSplit {
  std::vector<Edge> edges;            // coherent order
  std::vector<int> label;             // edge -> 0/1
  std::map<int, int> deg[2];          // per class vertex degrees
  std::vector<std::vector<int>> adj0, adj1;

  bool joins_same_component(const std::vector<int>& lab, int cls, int a, int b) const {
    // Walk the class from a; a linear forest is tiny, plain BFS suffices.
    std::vector<int> stack{a};
    std::set<int> seen{a};
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      if (x == b) return true;
      for (size_t e = 0; e < edges.size(); e++) {
        if (lab[e] != cls) continue;
        int y = -1;
        if (edges[e].first == x) y = edges[e].second;
        if (edges[e].second == x) y = edges[e].first;
        if (y >= 0 && !seen.count(y)) {
          seen.insert(y);
          stack.push_back(y);
        }
      }
    }
    return false;
  }

  bool dfs(size_t i) {
    if (i == edges.size()) {
      std::vector<Edge> a, b;
      for (size_t e = 0; e < edges.size(); e++) (label[e] == 0 ? a : b).push_back(edges[e]);
      if (a.empty() || b.empty()) return false;
      return classify_class(a).kind == ClassKind::Path && classify_class(b).kind == ClassKind::Path;
    }
    auto [u, v] = edges[i];
    int first_choice = i == 0 ? 1 : 2;  // symmetry break: first edge in class 0
    for (int cls = 0; cls < first_choice; cls++) {
      if (deg[cls][u] >= 2 || deg[cls][v] >= 2) continue;
      if (deg[cls][u] && deg[cls][v] && joins_same_component(label, cls, u, v)) continue;
      deg[cls][u]++;
      deg[cls][v]++;
      label[i] = cls;
      if (dfs(i + 1)) return true;
      label[i] = -1;
      deg[cls][u]--;
      deg[cls][v]--;
    }
    return false;
  }
};

std::vector<Edge> coherent_order(std::vector<Edge> es) {
  std::sort(es.begin(), es.end());
  std::vector<Edge> out;
  std::vector<char> used(es.size(), 0);
  std::set<int> touched;
  for (size_t round = 0; round < es.size(); round++) {
    int pick = -1;
    for (size_t i = 0; i < es.size(); i++) {
      if (used[i]) continue;
      if (out.empty() || touched.count(es[i].first) || touched.count(es[i].second)) {
        pick = static_cast<int>(i);
        break;
      }
    }
    if (pick < 0)  // disconnected remainder; take the lowest
      for (size_t i = 0; i < es.size() && pick < 0; i++)
        if (!used[i]) pick = static_cast<int>(i);
    used[pick] = 1;
    out.push_back(es[pick]);
    touched.insert(es[pick].first);
    touched.insert(es[pick].second);
  }
  return out;
}

}  // namespace

MergeResult merge_cycle_path(const Graph& g, const std::vector<Edge>& cycle_edges,
                             const std::vector<Edge>& path_edges) {
  auto cyc = classify_class(cycle_edges);
  auto pat = classify_class(path_edges);
  if (cyc.kind != ClassKind::Cycle) throw PreconditionViolated("first class is not a cycle");
  if (pat.kind != ClassKind::Path) throw PreconditionViolated("second class is not a path");
  std::set<Edge> seen;
  for (auto& e : cycle_edges) seen.insert(e);
  for (auto& e : path_edges)
    if (!seen.insert(e).second) throw PreconditionViolated("classes share an edge");
  for (auto& [u, v] : seen)
    if (!g.has_edge(u, v)) throw PreconditionViolated("edge missing from host graph");
  std::set<int> cv(cyc.vertex_sequence.begin(), cyc.vertex_sequence.end());
  int shared = 0;
  for (int v : std::set<int>(pat.vertex_sequence.begin(), pat.vertex_sequence.end()))
    shared += cv.count(v);
  if (shared < 1 || shared > 5)
    throw PreconditionViolated("classes share " + std::to_string(shared) + " vertices");

  MergeResult res;
  if (is_exceptional(cycle_edges, path_edges)) {
    res.exceptional = true;
    return res;
  }

  TwoSplit split;
  std::vector<Edge> all(seen.begin(), seen.end());
  split.edges = coherent_order(all);
  split.label.assign(split.edges.size(), -1);
  if (!split.dfs(0))
    throw std::logic_error("cycle+path merge found no split on a non-exceptional instance");
  for (size_t e = 0; e < split.edges.size(); e++)
    (split.label[e] == 0 ? res.first : res.second).push_back(split.edges[e]);
  std::sort(res.first.begin(), res.first.end());
  std::sort(res.second.begin(), res.second.end());
  return res;
}

CycleElimination eliminate_cycles(const Graph& g, const EdgeColoring& c,
                                  const std::set<int>& protected_colors) {
  auto rep = verify_path_coloring(g, c, true);
  if (!rep.ok) throw PreconditionViolated("mixed coloring is not path-or-cycle valid");

  CycleElimination out;
  out.coloring = c;
  for (;;) {
    auto classes = out.coloring.classes();
    std::vector<ColorClassShape> shapes(classes.size());
    std::vector<int> cycles;
    for (size_t i = 0; i < classes.size(); i++) {
      shapes[i] = classify_class(classes[i]);
      if (shapes[i].kind == ClassKind::Cycle) cycles.push_back(static_cast<int>(i));
    }
    if (cycles.empty()) return out;

    std::set<int> cycle_verts;
    for (int ci : cycles) {
      std::set<int> mine(shapes[ci].vertex_sequence.begin(), shapes[ci].vertex_sequence.end());
      for (int v : mine)
        if (!cycle_verts.insert(v).second)
          throw PreconditionViolated("cycle classes are not vertex-disjoint");
    }

    int cyc = cycles.front();
    if (protected_colors.count(cyc)) {
      out.ok = false;
      out.stuck_cycle_color = cyc;
      out.failure = "cycle class is protected";
      return out;
    }
    std::set<int> cv(shapes[cyc].vertex_sequence.begin(), shapes[cyc].vertex_sequence.end());
    bool merged = false;
    for (size_t p = 0; p < classes.size() && !merged; p++) {
      if (shapes[p].kind != ClassKind::Path || protected_colors.count(static_cast<int>(p)))
        continue;
      int shared = 0;
      for (int v : std::set<int>(shapes[p].vertex_sequence.begin(), shapes[p].vertex_sequence.end()))
        shared += cv.count(v);
      if (shared < 1 || shared > 5) continue;
      MergeResult m = merge_cycle_path(g, classes[cyc], classes[p]);
      if (m.exceptional) continue;
      for (auto& e : classes[cyc]) out.coloring.erase(e);
      for (auto& e : classes[p]) out.coloring.erase(e);
      for (auto& e : m.first) out.coloring.set(e, cyc);
      for (auto& e : m.second) out.coloring.set(e, static_cast<int>(p));
      merged = true;
    }
    if (!merged) {
      out.ok = false;
      out.stuck_cycle_color = cyc;
      out.failure = "no companion path merges with cycle class " + std::to_string(cyc);
      return out;
    }
  }
}

}  // namespace pd
