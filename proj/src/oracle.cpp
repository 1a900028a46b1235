#include "pd/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <random>

namespace pd {

long long default_node_budget() {
  if (const char* env = std::getenv("GALLAI_NODE_BUDGET")) {
    long long v = std::atoll(env);
    if (v > 0) return v;
  }
  return 10'000'000;
}

namespace {

struct OpenClass {
  int end_a, end_b;
  unsigned long long members;  // vertex bitmask
};

struct Searcher {
  const Graph& g;
  int n, m, k = 0;
  long long budget;
  long long nodes = 0;
  bool out_of_budget = false;
  std::vector<int> assign;        // edge id -> class index or -1
  std::vector<OpenClass> open;    // class index -> state
  std::vector<int> merged_into;   // class index -> canonical index (-1 live)

  explicit Searcher(const Graph& g_, long long budget_) : g(g_), budget(budget_) {
    n = g.n();
    m = g.m();
    assign.assign(m, -1);
  }

  int canon(int c) const {
    while (merged_into[c] >= 0) c = merged_into[c];
    return c;
  }

  // Lower bound on the final class count: parity and component count of the
  // multigraph formed by uncovered edges plus one virtual edge per open
  // class (its two growable ends).
  std::vector<int> lb_deg, lb_dsu, lb_odd, lb_any;

  int lb_find(int v) {
    while (lb_dsu[v] != v) v = lb_dsu[v] = lb_dsu[lb_dsu[v]];
    return v;
  }

  int lower_bound(int next_edge) {
    lb_deg.assign(n, 0);
    lb_dsu.resize(n);
    for (int v = 0; v < n; v++) lb_dsu[v] = v;
    auto touch = [&](int a, int b) {
      lb_deg[a]++;
      lb_deg[b]++;
      int ra = lb_find(a), rb = lb_find(b);
      if (ra != rb) lb_dsu[ra] = rb;
    };
    for (int e = next_edge; e < m; e++) {
      if (assign[e] >= 0) continue;
      auto [u, v] = g.edge(e);
      touch(u, v);
    }
    for (size_t c = 0; c < open.size(); c++) {
      if (merged_into[c] >= 0) continue;
      touch(open[c].end_a, open[c].end_b);
    }
    lb_odd.assign(n, 0);
    lb_any.assign(n, 0);
    for (int v = 0; v < n; v++) {
      if (!lb_deg[v]) continue;
      int r = lb_find(v);
      lb_any[r] = 1;
      if (lb_deg[v] & 1) lb_odd[r]++;
    }
    int bound = 0;
    for (int v = 0; v < n; v++)
      if (lb_any[v]) bound += std::max(1, (lb_odd[v] + 1) / 2);
    return bound;
  }

  bool dfs(int next_edge, int live_classes) {
    if (++nodes > budget) {
      out_of_budget = true;
      return false;
    }
    while (next_edge < m && assign[next_edge] >= 0) next_edge++;
    if (next_edge == m) return live_classes <= k;
    if (lower_bound(next_edge) > k) return false;
    auto [u, v] = g.edge(next_edge);

    // Append to an existing class endpoint (possibly gluing two classes)
    // before opening a new color.
    // Recursion below may grow `open`; index access only, no references.
    size_t live_limit = open.size();
    for (size_t ci = 0; ci < live_limit; ci++) {
      if (merged_into[ci] >= 0) continue;
      for (int side = 0; side < 2; side++) {
        OpenClass save_i = open[ci];
        int tip = side == 0 ? save_i.end_a : save_i.end_b;
        int far;
        if (tip == u) {
          far = v;
        } else if (tip == v) {
          far = u;
        } else {
          continue;
        }
        if (save_i.members >> far & 1) continue;  // far already on the class
        // Gluing: far is an endpoint of another live class; each choice of
        // partner is a distinct branch, and plain growth is yet another.
        for (size_t cj = ci + 1; cj < live_limit; cj++) {
          if (merged_into[cj] >= 0) continue;
          if (open[cj].end_a != far && open[cj].end_b != far) continue;
          OpenClass save_j = open[cj];
          if (save_i.members & save_j.members) continue;  // shared vertex: repeat
          int far_end = save_j.end_a == far ? save_j.end_b : save_j.end_a;
          int keep_tip = side == 0 ? save_i.end_b : save_i.end_a;
          open[ci] = {keep_tip, far_end, save_i.members | save_j.members};
          merged_into[cj] = static_cast<int>(ci);
          assign[next_edge] = static_cast<int>(ci);
          if (dfs(next_edge + 1, live_classes - 1)) return true;
          assign[next_edge] = -1;
          merged_into[cj] = -1;
          open[ci] = save_i;
          if (out_of_budget) return false;
        }
        // Plain append.
        open[ci] = save_i;
        if (side == 0) {
          open[ci].end_a = far;
        } else {
          open[ci].end_b = far;
        }
        open[ci].members |= 1ull << far;
        assign[next_edge] = static_cast<int>(ci);
        if (dfs(next_edge + 1, live_classes)) return true;
        assign[next_edge] = -1;
        open[ci] = save_i;
        if (out_of_budget) return false;
      }
    }
    // New color.
    open.push_back({u, v, (1ull << u) | (1ull << v)});
    merged_into.push_back(-1);
    assign[next_edge] = static_cast<int>(open.size() - 1);
    if (dfs(next_edge + 1, live_classes + 1)) return true;
    assign[next_edge] = -1;
    open.pop_back();
    merged_into.pop_back();
    return false;
  }

  std::optional<EdgeColoring> run(int target_k) {
    k = target_k;
    open.clear();
    merged_into.clear();
    std::fill(assign.begin(), assign.end(), -1);
    if (!dfs(0, 0)) return std::nullopt;
    EdgeColoring c;
    for (int e = 0; e < m; e++) {
      auto [u, v] = g.edge(e);
      c.set(u, v, canon(assign[e]));
    }
    return c.normalized();
  }
};

EdgeColoring greedy_cover(const Graph& g) {
  int m = g.m();
  std::vector<char> used(m, 0);
  EdgeColoring c;
  int color = 0;
  for (int e0 = 0; e0 < m; e0++) {
    if (used[e0]) continue;
    auto [u, v] = g.edge(e0);
    std::vector<int> seq{u, v};
    used[e0] = 1;
    std::vector<char> on_path(g.n(), 0);
    on_path[u] = on_path[v] = 1;
    for (int side = 0; side < 2; side++) {
      while (true) {
        int tip = side == 0 ? seq.back() : seq.front();
        int next = -1;
        for (int w : g.neighbors(tip)) {
          int id = g.edge_id(tip, w);
          if (!used[id] && !on_path[w]) {
            next = w;
            break;
          }
        }
        if (next < 0) break;
        used[g.edge_id(tip, next)] = 1;
        on_path[next] = 1;
        if (side == 0) {
          seq.push_back(next);
        } else {
          seq.insert(seq.begin(), next);
        }
      }
    }
    for (size_t i = 0; i + 1 < seq.size(); i++) c.set(seq[i], seq[i + 1], color);
    color++;
  }
  return c;
}

}  // namespace

OracleResult min_path_decomposition(const Graph& g, long long budget) {
  if (budget < 0) budget = default_node_budget();
  if (g.m() < 1) throw std::logic_error("oracle needs at least one edge");
  if (!is_connected(g)) throw std::logic_error("oracle needs a connected graph");
  if (g.n() > 64) throw std::logic_error("oracle limited to n <= 64");

  OracleResult res;
  int odd = 0;
  for (int v = 0; v < g.n(); v++)
    if (g.degree(v) & 1) odd++;
  int lower = std::max(1, (odd + 1) / 2);

  EdgeColoring greedy = greedy_cover(g);
  int upper = greedy.color_count();
  res.witness = greedy;
  res.min_paths = upper;
  if (upper == lower) return res;

  Searcher s(g, budget);
  for (int k = lower; k < upper; k++) {
    auto got = s.run(k);
    res.nodes_explored = s.nodes;
    if (got) {
      res.min_paths = k;
      res.witness = *got;
      return res;
    }
    if (s.out_of_budget) {
      res.timed_out = true;
      return res;
    }
  }
  res.nodes_explored = s.nodes;
  return res;
}

GallaiResult gallai_check(const Graph& g, long long budget) {
  GallaiResult out{GallaiVerdict::Violated, min_path_decomposition(g, budget)};
  int floor_bound = g.n() / 2;
  int ceil_bound = (g.n() + 1) / 2;
  if (out.oracle.min_paths <= floor_bound) {
    out.verdict = GallaiVerdict::HoldsStrict;
  } else if (out.oracle.min_paths == ceil_bound &&
             classify_exception(g) != ExceptionalKind::Other) {
    out.verdict = GallaiVerdict::HoldsRelaxed;
  }
  return out;
}

long long enumerate_connected_planar(int n, const std::function<void(const Graph&)>& fn,
                                     long long mask_lo, long long mask_hi) {
  if (n > 7) throw std::logic_error("census limited to n <= 7");
  std::vector<std::pair<int, int>> all;
  for (int j = 1; j < n; j++)
    for (int i = 0; i < j; i++) all.emplace_back(i, j);
  int bits = static_cast<int>(all.size());
  long long total = 1ll << bits;
  if (mask_hi < 0 || mask_hi > total) mask_hi = total;
  long long count = 0;
  std::vector<int> dsu(n);
  for (long long mask = mask_lo; mask < mask_hi; mask++) {
    // Cheap connectivity test first.
    for (int v = 0; v < n; v++) dsu[v] = v;
    auto find = [&](int v) {
      while (dsu[v] != v) v = dsu[v] = dsu[dsu[v]];
      return v;
    };
    int comps = n;
    for (int b = 0; b < bits; b++)
      if (mask >> b & 1) {
        int ra = find(all[b].first), rb = find(all[b].second);
        if (ra != rb) {
          dsu[ra] = rb;
          comps--;
        }
      }
    if (comps != 1) continue;
    std::vector<std::pair<int, int>> es;
    for (int b = 0; b < bits; b++)
      if (mask >> b & 1) es.push_back(all[b]);
    Graph g = Graph::from_edges(n, std::move(es));
    if (!is_planar(g)) continue;
    fn(g);
    count++;
  }
  return count;
}

Graph random_planar_graph(int n, int target_m, unsigned long long seed) {
  std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ull + 12345);
  if (n <= 1) return Graph(std::max(n, 0));
  std::vector<std::pair<int, int>> es;
  for (int v = 1; v < n; v++) {
    int parent = static_cast<int>(rng() % v);
    es.emplace_back(parent, v);
  }
  Graph g = Graph::from_edges(n, es);
  int want = std::max(target_m, n - 1);
  long long attempts = 0, cap = 60ll * (want - g.m()) + 200;
  while (g.m() < want && attempts < cap) {
    attempts++;
    int a = static_cast<int>(rng() % n);
    int b = static_cast<int>(rng() % n);
    if (a == b || g.has_edge(a, b)) continue;
    Graph h = g.add_edge(a, b);
    if (is_planar(h)) g = std::move(h);
  }
  return g;
}

}  // namespace pd
