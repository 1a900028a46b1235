#include "pd/structure.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace pd {

namespace {

std::vector<int> component_ids(const Graph& g, const std::vector<char>& removed) {
  std::vector<int> comp(g.n(), -1);
  int next = 0;
  for (int s = 0; s < g.n(); s++) {
    if (removed[s] || comp[s] >= 0) continue;
    comp[s] = next;
    std::vector<int> stack{s};
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int y : g.neighbors(x))
        if (!removed[y] && comp[y] < 0) {
          comp[y] = next;
          stack.push_back(y);
        }
    }
    next++;
  }
  return comp;
}

// Calls fn on every vertex subset of size 1..3; stops early on true.
template <typename Fn>
bool for_each_small_cutset(int n, Fn&& fn) {
  std::vector<int> a;
  for (int i = 0; i < n; i++) {
    a = {i};
    if (fn(a)) return true;
  }
  for (int i = 0; i < n; i++)
    for (int j = i + 1; j < n; j++) {
      a = {i, j};
      if (fn(a)) return true;
    }
  for (int i = 0; i < n; i++)
    for (int j = i + 1; j < n; j++)
      for (int k = j + 1; k < n; k++) {
        a = {i, j, k};
        if (fn(a)) return true;
      }
  return false;
}

bool is_k_connected_min4(const Graph& g, int want) {
  // want in {3,4}: no cut of size < want. Complete graphs have no cuts.
  bool found = for_each_small_cutset(g.n(), [&](const std::vector<int>& cut) {
    if (static_cast<int>(cut.size()) >= want) return false;
    std::vector<char> removed(g.n(), 0);
    for (int v : cut) removed[v] = 1;
    auto comp = component_ids(g, removed);
    int mx = *std::max_element(comp.begin(), comp.end());
    return mx > 0;
  });
  return !found;
}

}  // namespace

std::optional<std::pair<int, int>> find_ci(const Graph& g) {
  std::vector<int> low;
  for (int v = 0; v < g.n(); v++)
    if (g.degree(v) <= 4) low.push_back(v);
  if (low.size() < 2) return std::nullopt;
  std::pair<int, int> best{-1, -1};
  int best_sum = 1 << 30;
  for (size_t i = 0; i < low.size(); i++)
    for (size_t j = i + 1; j < low.size(); j++) {
      int sum = g.degree(low[i]) + g.degree(low[j]);
      if (sum < best_sum) {
        best_sum = sum;
        best = {low[i], low[j]};
      }
    }
  return best;
}

AlmostCheck is_almost_4_connected(const Graph& g, const std::vector<int>& U) {
  if (U.size() != 4) throw PreconditionViolated("family must have four vertices");
  AlmostCheck out;
  std::set<int> uset(U.begin(), U.end());
  if (uset.size() != 4) throw PreconditionViolated("family members must be distinct");
  long long cuts_checked = 0;
  for_each_small_cutset(g.n(), [&](const std::vector<int>& cut) {
    cuts_checked++;
    std::vector<char> removed(g.n(), 0);
    for (int v : cut) removed[v] = 1;
    auto comp = component_ids(g, removed);
    int seen = -1;
    for (int u : U) {
      if (removed[u]) continue;
      if (seen < 0) {
        seen = comp[u];
      } else if (comp[u] != seen) {
        out.ok = false;
        out.witness_cut = cut;
        out.detail = "cut separates two family members";
        return true;
      }
    }
    for (int u : cut) {
      if (!uset.count(u)) continue;
      int nseen = -1;
      for (int w : g.neighbors(u)) {
        if (removed[w]) continue;
        if (nseen < 0) {
          nseen = comp[w];
        } else if (comp[w] != nseen) {
          out.ok = false;
          out.witness_cut = cut;
          out.detail = "cut separates two neighbors of family member " + std::to_string(u);
          return true;
        }
      }
    }
    return false;
  });
  if (out.ok)
    out.detail = "no separating cut among " + std::to_string(cuts_checked) + " candidates";
  return out;
}

namespace {

struct HState {
  std::vector<int> verts;       // host ids, ascending
  std::vector<Edge> edges;      // host ids; may include one virtual edge
  std::vector<int> damaged;     // host ids
  std::vector<int> bridge;      // realization of the damaged edge
};

Graph build_local(const HState& h, std::vector<int>* to_host) {
  std::map<int, int> idx;
  for (size_t i = 0; i < h.verts.size(); i++) idx[h.verts[i]] = static_cast<int>(i);
  std::vector<std::pair<int, int>> es;
  for (auto& [u, v] : h.edges) es.emplace_back(idx.at(u), idx.at(v));
  if (to_host) *to_host = h.verts;
  return Graph::from_edges(static_cast<int>(h.verts.size()), es);
}

// Shortest path between a and b in g whose internal vertices avoid `blocked`.
std::optional<std::vector<int>> route_outside(const Graph& g, int a, int b,
                                              const std::set<int>& blocked) {
  std::vector<int> prev(g.n(), -2);
  std::vector<int> queue{a};
  prev[a] = -1;
  for (size_t qi = 0; qi < queue.size(); qi++) {
    int x = queue[qi];
    for (int y : g.neighbors(x)) {
      if (prev[y] != -2) continue;
      if (y != b && blocked.count(y)) continue;
      prev[y] = x;
      queue.push_back(y);
      if (y == b) {
        std::vector<int> path{b};
        while (path.back() != a) path.push_back(prev[path.back()]);
        std::reverse(path.begin(), path.end());
        return path;
      }
    }
  }
  return std::nullopt;
}

}  // namespace

Contraction minimal_2_contraction(const Graph& g) {
  if (g.n() < 3) throw PreconditionViolated("contraction needs at least three vertices");
  if (!is_connected(g)) throw PreconditionViolated("contraction needs a connected graph");

  int u1 = 0;
  std::vector<int> low;
  for (int v = 0; v < g.n(); v++)
    if (g.degree(v) <= 4) low.push_back(v);
  if (low.size() == 1) u1 = low[0];
  int u2 = g.neighbors(u1).front();

  HState h;
  for (int v = 0; v < g.n(); v++) h.verts.push_back(v);
  h.edges = g.edges();
  h.damaged = {std::min(u1, u2), std::max(u1, u2)};
  h.bridge = {h.damaged[0], h.damaged[1]};

  for (;;) {
    Graph local = build_local(h, nullptr);
    std::map<int, int> idx;
    for (size_t i = 0; i < h.verts.size(); i++) idx[h.verts[i]] = static_cast<int>(i);
    std::set<int> dmg_local;
    for (int d : h.damaged) dmg_local.insert(idx.at(d));

    // Claim-style descent: cut vertices first, then 2-cuts. Among qualifying
    // cuts pick the lexicographically smallest, then the smallest component.
    bool descended = false;
    for (int cut_size = 1; cut_size <= 2 && !descended; cut_size++) {
      std::vector<std::vector<int>> cuts;
      if (cut_size == 1) {
        for (int x = 0; x < local.n(); x++) cuts.push_back({x});
      } else {
        for (int x = 0; x < local.n(); x++)
          for (int y = x + 1; y < local.n(); y++) cuts.push_back({x, y});
      }
      for (auto& cut : cuts) {
        std::vector<char> removed(local.n(), 0);
        for (int v : cut) removed[v] = 1;
        auto comp = component_ids(local, removed);
        int ncomp = *std::max_element(comp.begin(), comp.end()) + 1;
        if (ncomp < 2) continue;
        // Smallest component containing no damaged vertex.
        std::vector<int> size(ncomp, 0), has_dmg(ncomp, 0);
        for (int v = 0; v < local.n(); v++) {
          if (removed[v]) continue;
          size[comp[v]]++;
          if (dmg_local.count(v)) has_dmg[comp[v]] = 1;
        }
        int pick = -1;
        for (int c = 0; c < ncomp; c++) {
          if (has_dmg[c] || size[c] == 0) continue;
          if (pick < 0 || size[c] < size[pick]) pick = c;
        }
        if (pick < 0) continue;

        std::vector<int> keep_local;
        for (int v = 0; v < local.n(); v++)
          if (comp[v] == pick && !removed[v]) keep_local.push_back(v);
        for (int v : cut) keep_local.push_back(v);
        std::sort(keep_local.begin(), keep_local.end());

        HState next;
        for (int v : keep_local) next.verts.push_back(h.verts[v]);
        std::set<int> keep_host(next.verts.begin(), next.verts.end());

        if (cut_size == 1) {
          int x = h.verts[cut[0]];
          // New damaged pair: the cut vertex and its smallest kept neighbor.
          int y = -1;
          for (int w : g.neighbors(x))
            if (keep_host.count(w)) {
              y = w;
              break;
            }
          if (y < 0) continue;
          next.damaged = {std::min(x, y), std::max(x, y)};
          next.bridge = {next.damaged[0], next.damaged[1]};
          for (auto& e : h.edges)
            if (keep_host.count(e.first) && keep_host.count(e.second)) {
              if (e == mk_edge(h.damaged[0], h.damaged[1]) && !g.has_edge(e.first, e.second))
                continue;  // stale virtual edge cannot survive a new damage pair
              next.edges.push_back(e);
            }
        } else {
          int x1 = h.verts[cut[0]], x2 = h.verts[cut[1]];
          next.damaged = {std::min(x1, x2), std::max(x1, x2)};
          Edge dedge = mk_edge(x1, x2);
          Edge old_virtual = mk_edge(h.damaged[0], h.damaged[1]);
          bool have_dedge = false;
          for (auto& e : h.edges) {
            if (!keep_host.count(e.first) || !keep_host.count(e.second)) continue;
            if (e == old_virtual && !g.has_edge(e.first, e.second) && e != dedge)
              continue;  // stale virtual edge
            next.edges.push_back(e);
            if (e == dedge) have_dedge = true;
          }
          if (g.has_edge(x1, x2)) {
            next.bridge = {next.damaged[0], next.damaged[1]};
            if (!have_dedge) next.edges.push_back(dedge);
          } else if (dedge == old_virtual) {
            next.bridge = h.bridge;  // previous realization stays outside H'
            if (!have_dedge) next.edges.push_back(dedge);
          } else {
            std::set<int> blocked(keep_host.begin(), keep_host.end());
            blocked.erase(x1);
            auto path = route_outside(g, x1, x2, blocked);
            if (!path) continue;  // no realization; not a 2-contraction
            next.bridge = *path;
            next.edges.push_back(dedge);
          }
        }
        if (next.verts.size() >= 3 && next.verts.size() < h.verts.size()) {
          std::sort(next.edges.begin(), next.edges.end());
          h = std::move(next);
          descended = true;
          break;
        }
      }
    }
    if (!descended) break;
  }

  Contraction out;
  out.subgraph = h.verts;
  out.damaged = h.damaged;
  out.edges = h.edges;
  out.bridge_path = h.bridge;
  out.local = build_local(h, &out.to_host);
  return out;
}

ConfigurationWitness find_configuration(const Graph& g) {
  if (g.n() < 3) throw PreconditionViolated("configuration search needs >= 3 vertices");
  if (!is_connected(g)) throw PreconditionViolated("configuration search needs connectivity");

  ConfigurationWitness w;
  if (auto ci = find_ci(g)) {
    w.kind = ConfigKind::CI;
    w.ci_pair = *ci;
    w.certificate = "degree scan";
    return w;
  }

  Contraction h = minimal_2_contraction(g);
  const Graph& H = h.local;
  std::set<int> dmg(h.damaged.begin(), h.damaged.end());

  // Dichotomy check: a non-damaged low-degree vertex contradicts the absence
  // of a second low-degree vertex in the host, so it is reported as CI there.
  for (int v = 0; v < H.n(); v++) {
    if (dmg.count(h.to_host[v])) continue;
    if (H.degree(v) <= 4) {
      std::vector<int> low;
      for (int x = 0; x < g.n(); x++)
        if (g.degree(x) <= 4) low.push_back(x);
      if (low.size() >= 2) {
        w.kind = ConfigKind::CI;
        w.ci_pair = {low[0], low[1]};
        w.certificate = "low-degree vertex surfaced by contraction";
        return w;
      }
      throw NotFound("contraction exposed a low-degree vertex with no partner in the host");
    }
  }
  if (!is_k_connected_min4(H, 3))
    throw GuardFailure("minimal contraction is neither low-degree-bearing nor 3-connected");

  auto extract_family = [&](const std::vector<int>& pool_local) -> std::vector<int> {
    std::vector<int> fam;
    for (int v : pool_local) {
      if (dmg.count(h.to_host[v]) || H.degree(v) != 5) continue;
      fam.push_back(h.to_host[v]);
      if (fam.size() == 4) return fam;
    }
    return {};
  };

  std::string transcript;
  if (is_k_connected_min4(H, 4)) {
    long long euler = 0;
    for (int v = 0; v < H.n(); v++) euler += H.degree(v) - 6;
    if (euler > -12) throw GuardFailure("degree accounting off on a 4-connected contraction");
    std::vector<int> all;
    for (int v = 0; v < H.n(); v++) all.push_back(v);
    auto fam = extract_family(all);
    if (fam.size() == 4) {
      auto on_h = is_almost_4_connected(H, [&] {
        std::map<int, int> idx;
        for (size_t i = 0; i < h.to_host.size(); i++) idx[h.to_host[i]] = static_cast<int>(i);
        std::vector<int> loc;
        for (int v : fam) loc.push_back(idx.at(v));
        return loc;
      }());
      auto on_g = is_almost_4_connected(g, fam);
      if (on_h.ok && on_g.ok) {
        w.kind = ConfigKind::CII;
        w.four_family = fam;
        w.certificate = "4-connected contraction; " + on_h.detail + "; host: " + on_g.detail;
        return w;
      }
      transcript += "4-connected candidate rejected; ";
    }
  } else {
    // Every 3-cut of a 3-connected planar graph splits it in two; take the
    // damage-free side, smallest first.
    struct Candidate {
      std::vector<int> cut;    // local
      std::vector<int> comp;   // local
    };
    std::vector<Candidate> cands;
    for (int i = 0; i < H.n(); i++)
      for (int j = i + 1; j < H.n(); j++)
        for (int k = j + 1; k < H.n(); k++) {
          std::vector<char> removed(H.n(), 0);
          removed[i] = removed[j] = removed[k] = 1;
          auto comp = component_ids(H, removed);
          int ncomp = *std::max_element(comp.begin(), comp.end()) + 1;
          if (ncomp < 2) continue;
          for (int c = 0; c < ncomp; c++) {
            std::vector<int> members;
            bool damaged_inside = false;
            for (int v = 0; v < H.n(); v++)
              if (!removed[v] && comp[v] == c) {
                members.push_back(v);
                if (dmg.count(h.to_host[v])) damaged_inside = true;
              }
            if (!damaged_inside && !members.empty()) cands.push_back({{i, j, k}, members});
          }
        }
    std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
      if (a.comp.size() != b.comp.size()) return a.comp.size() < b.comp.size();
      if (a.cut != b.cut) return a.cut < b.cut;
      return a.comp < b.comp;
    });
    int tried = 0;
    for (auto& cand : cands) {
      auto fam = extract_family(cand.comp);
      if (fam.size() != 4) continue;
      tried++;
      std::map<int, int> idx;
      for (size_t i = 0; i < h.to_host.size(); i++) idx[h.to_host[i]] = static_cast<int>(i);
      std::vector<int> loc;
      for (int v : fam) loc.push_back(idx.at(v));
      auto on_h = is_almost_4_connected(H, loc);
      if (!on_h.ok) {
        transcript += "candidate cut rejected on contraction; ";
        continue;
      }
      auto on_g = is_almost_4_connected(g, fam);
      if (!on_g.ok) {
        transcript += "candidate cut rejected on host; ";
        continue;
      }
      w.kind = ConfigKind::CII;
      w.four_family = fam;
      w.certificate = "3-cut interior (attempt " + std::to_string(tried) + "); " + on_h.detail +
                      "; host: " + on_g.detail;
      return w;
    }
  }
  throw NotFound("no certified family; transcript: " + transcript);
}

}  // namespace pd
