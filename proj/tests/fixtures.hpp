#pragma once

#include <random>
#include <set>
#include <vector>

#include "pd/coloring.hpp"
#include "pd/graph.hpp"

namespace fixtures {

inline pd::Graph complete(int n) {
  std::vector<std::pair<int, int>> es;
  for (int j = 1; j < n; j++)
    for (int i = 0; i < j; i++) es.emplace_back(i, j);
  return pd::Graph::from_edges(n, es);
}

inline pd::Graph k5_minus() { return complete(5).remove_edge(0, 4); }

inline pd::Graph path_graph(int n) {
  std::vector<std::pair<int, int>> es;
  for (int i = 0; i + 1 < n; i++) es.emplace_back(i, i + 1);
  return pd::Graph::from_edges(n, es);
}

inline pd::Graph cycle_graph(int n) {
  std::vector<std::pair<int, int>> es;
  for (int i = 0; i < n; i++) es.emplace_back(i, (i + 1) % n);
  return pd::Graph::from_edges(n, es);
}

inline pd::Graph star(int leaves) {
  std::vector<std::pair<int, int>> es;
  for (int i = 1; i <= leaves; i++) es.emplace_back(0, i);
  return pd::Graph::from_edges(leaves + 1, es);
}

inline pd::Graph octahedron() {
  std::vector<std::pair<int, int>> es;
  for (int a : {0, 1})
    for (int b : {2, 3}) es.emplace_back(a, b);
  for (int a : {0, 1})
    for (int b : {4, 5}) es.emplace_back(a, b);
  for (int a : {2, 3})
    for (int b : {4, 5}) es.emplace_back(a, b);
  return pd::Graph::from_edges(6, es);
}

// 12 vertices, 30 edges, 5-regular planar: pole 0, upper ring 1..5,
// lower ring 6..10, pole 11.
inline pd::Graph icosahedron() {
  std::vector<std::pair<int, int>> es;
  for (int i = 1; i <= 5; i++) es.emplace_back(0, i);
  for (int i = 6; i <= 10; i++) es.emplace_back(11, i);
  for (int i = 0; i < 5; i++) {
    es.emplace_back(1 + i, 1 + (i + 1) % 5);
    es.emplace_back(6 + i, 6 + (i + 1) % 5);
  }
  for (int i = 0; i < 5; i++) {
    es.emplace_back(1 + i, 6 + i);
    es.emplace_back(1 + i, 6 + (i + 4) % 5);
  }
  return pd::Graph::from_edges(12, es);
}

struct CyclePathPair {
  pd::Graph g;
  std::vector<pd::Edge> cycle, path;
};

// Edge-disjoint cycle + path meeting in 1..5 vertices, inside a planar host.
inline CyclePathPair random_cycle_path_pair(unsigned long long seed) {
  std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ull + 7);
  for (int attempt = 0; attempt < 1000; attempt++) {
    int cl = 3 + static_cast<int>(rng() % 6);
    int pe = 1 + static_cast<int>(rng() % 7);
    int pv = pe + 1;
    int max_shared = std::min({5, cl, pv});
    int shared = 1 + static_cast<int>(rng() % max_shared);

    std::vector<int> slots(pv);
    for (int i = 0; i < pv; i++) slots[i] = i;
    for (int i = pv - 1; i > 0; i--) std::swap(slots[i], slots[rng() % (i + 1)]);
    std::vector<int> cyc_verts(cl);
    for (int i = 0; i < cl; i++) cyc_verts[i] = i;
    for (int i = cl - 1; i > 0; i--) std::swap(cyc_verts[i], cyc_verts[rng() % (i + 1)]);

    std::vector<int> pseq(pv, -1);
    for (int s = 0; s < shared; s++) pseq[slots[s]] = cyc_verts[s];
    int fresh = cl;
    for (int i = 0; i < pv; i++)
      if (pseq[i] < 0) pseq[i] = fresh++;

    std::vector<pd::Edge> cyc, pat;
    std::set<pd::Edge> all;
    for (int i = 0; i < cl; i++) {
      cyc.push_back(pd::mk_edge(i, (i + 1) % cl));
      all.insert(cyc.back());
    }
    bool bad = false;
    for (int i = 0; i + 1 < pv && !bad; i++) {
      pd::Edge e = pd::mk_edge(pseq[i], pseq[i + 1]);
      if (!all.insert(e).second) bad = true;
      pat.push_back(e);
    }
    if (bad) continue;
    std::vector<std::pair<int, int>> es(all.begin(), all.end());
    pd::Graph g = pd::Graph::from_edges(fresh, es);
    if (!pd::is_planar(g)) continue;
    // Pad the host a little; merging must not depend on the host being tight.
    for (int extra = static_cast<int>(rng() % 3); extra > 0; extra--) {
      int a = static_cast<int>(rng() % g.n()), b = static_cast<int>(rng() % g.n());
      if (a == b || g.has_edge(a, b)) continue;
      pd::Graph h = g.add_edge(a, b);
      if (pd::is_planar(h)) g = h;
    }
    return {g, cyc, pat};
  }
  throw std::logic_error("pair generator starved");
}

}  // namespace fixtures
