#include "pd/subdivision.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <sstream>

#include "pd/oracle.hpp"

namespace pd {

namespace {

std::string join_ints(const std::vector<int>& vs) {
  std::ostringstream o;
  for (size_t i = 0; i < vs.size(); ++i) {
    if (i) o << ",";
    o << vs[i];
  }
  return o.str();
}

std::string walk_str(const std::vector<int>& walk) { return "(" + join_ints(walk) + ")"; }

int position_in(const std::vector<int>& walk, int v) {
  for (size_t i = 0; i < walk.size(); ++i)
    if (walk[i] == v) return static_cast<int>(i);
  return -1;
}

std::vector<int> oriented_from(const std::vector<int>& walk, int u) {
  if (!walk.empty() && walk.front() == u) return walk;
  std::vector<int> r(walk.rbegin(), walk.rend());
  return r;
}

}  // namespace

bool Subdivision::is_root(int v) const { return root_index(v) >= 0; }

int Subdivision::root_index(int v) const {
  for (int i = 0; i < 4; ++i)
    if (roots[i] == v) return i;
  return -1;
}

std::set<int> Subdivision::vertex_set() const {
  std::set<int> vs;
  for (const auto& w : paths) vs.insert(w.begin(), w.end());
  return vs;
}

bool Subdivision::on_subdivision(int v) const {
  for (const auto& w : paths)
    if (position_in(w, v) >= 0) return true;
  return false;
}

std::vector<Edge> Subdivision::edge_list() const {
  std::vector<Edge> es;
  for (const auto& w : paths)
    for (size_t i = 0; i + 1 < w.size(); ++i) es.push_back(mk_edge(w[i], w[i + 1]));
  std::sort(es.begin(), es.end());
  return es;
}

bool Subdivision::has_edge(int u, int v) const {
  for (const auto& w : paths)
    for (size_t i = 0; i + 1 < w.size(); ++i)
      if ((w[i] == u && w[i + 1] == v) || (w[i] == v && w[i + 1] == u)) return true;
  return false;
}

std::vector<int> Subdivision::paths_at(int v) const {
  std::vector<int> out;
  for (size_t i = 0; i < paths.size(); ++i)
    if (!paths[i].empty() && (paths[i].front() == v || paths[i].back() == v))
      out.push_back(static_cast<int>(i));
  return out;
}

int Subdivision::link(int i, int j) const {
  int count = 0;
  for (const auto& w : paths) {
    if (w.empty()) continue;
    int a = w.front(), b = w.back();
    if ((a == roots[i] && b == roots[j]) || (a == roots[j] && b == roots[i])) ++count;
  }
  return count;
}

int Subdivision::edge_path(int u, int v) const {
  for (size_t i = 0; i < paths.size(); ++i) {
    const auto& w = paths[i];
    if (w.size() == 2 && ((w[0] == u && w[1] == v) || (w[0] == v && w[1] == u)))
      return static_cast<int>(i);
  }
  return -1;
}

std::vector<int> Subdivision::remaining_neighbors(const Graph& g, int u) const {
  std::vector<int> out;
  for (int nb : g.neighbors(u))
    if (!has_edge(u, nb)) out.push_back(nb);
  return out;
}

// ---------------------------------------------------------------------------
// Search for rooted path systems.

namespace {

// Backtracking enumeration of internally disjoint path systems with fixed
// endpoint pairs. Slots are filled in order; vertices already used internally
// (or as roots) are blocked. When two consecutive slots ask for the same
// endpoint pair, the second walk must be lexicographically larger, which both
// dedups and forces the two parallel walks to differ.
struct SystemSearch {
  const Graph& g;
  std::vector<std::pair<int, int>> want;
  long long* budget;
  std::function<bool(const std::vector<std::vector<int>>&)> accept;

  std::vector<char> blocked;
  std::vector<std::vector<int>> walks;

  SystemSearch(const Graph& g_, std::vector<std::pair<int, int>> want_, long long* budget_)
      : g(g_), want(std::move(want_)), budget(budget_) {
    blocked.assign(g.n(), 0);
    walks.assign(want.size(), {});
  }

  bool run(const std::array<int, 4>& roots) {
    for (int r : roots) blocked[r] = 1;
    return fill(0);
  }

  bool fill(size_t k) {
    if (k == want.size()) return accept(walks);
    std::vector<int> walk{want[k].first};
    return extend(k, walk, want[k].second);
  }

  bool extend(size_t k, std::vector<int>& walk, int target) {
    if (--(*budget) < 0)
      throw SearchBudgetExceeded("path system enumeration for roots stopped after budget ran out");
    int cur = walk.back();
    for (int nb : g.neighbors(cur)) {
      if (nb == target) {
        // The walk's internals are already blocked by the enclosing frames.
        walk.push_back(target);
        bool dominated = k > 0 && want[k] == want[k - 1] && !(walks[k - 1] < walk);
        if (!dominated) {
          walks[k] = walk;
          if (fill(k + 1)) return true;
          walks[k].clear();
        }
        walk.pop_back();
        continue;
      }
      if (blocked[nb]) continue;
      walk.push_back(nb);
      blocked[nb] = 1;
      if (extend(k, walk, target)) return true;
      blocked[nb] = 0;
      walk.pop_back();
    }
    return false;
  }
};

std::array<int, 4> to_root_array(const std::vector<int>& roots) {
  if (roots.size() != 4) throw PreconditionViolated("a four-vertex family is required");
  std::array<int, 4> r{roots[0], roots[1], roots[2], roots[3]};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (r[i] == r[j]) throw PreconditionViolated("family vertices must be distinct");
  return r;
}

std::optional<Subdivision> search_k4(const Graph& g, const std::array<int, 4>& roots,
                                     long long* budget) {
  std::vector<std::pair<int, int>> want;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) want.emplace_back(roots[i], roots[j]);
  SystemSearch search(g, want, budget);
  std::optional<Subdivision> out;
  search.accept = [&](const std::vector<std::vector<int>>& walks) {
    Subdivision s;
    s.kind = SubdivisionKind::K4;
    s.roots = roots;
    s.paths = walks;
    out = s;
    return true;
  };
  search.run(roots);
  return out;
}

}  // namespace

std::optional<Subdivision> find_rooted_k4(const Graph& g, const std::vector<int>& roots,
                                          long long node_budget) {
  auto r = to_root_array(roots);
  for (int v : r)
    if (v < 0 || v >= g.n()) throw PreconditionViolated("family vertex out of range");
  long long counter = node_budget < 0 ? default_node_budget() : node_budget;
  return search_k4(g, r, &counter);
}

Subdivision find_k_subdivision(const Graph& g, const std::vector<int>& roots,
                               long long node_budget) {
  auto r = to_root_array(roots);
  for (int v : r)
    if (v < 0 || v >= g.n()) throw PreconditionViolated("family vertex out of range");
  long long counter = node_budget < 0 ? default_node_budget() : node_budget;

  if (auto k4 = search_k4(g, r, &counter)) {
    Subdivision s = eliminate_chords(g, *k4);
    auto chk = validate_subdivision(g, s);
    if (!chk.ok)
      throw std::logic_error("shortcut cleanup broke the path system: " + chk.violations.front());
    return s;
  }

  // The three perfect matchings on root indices; a doubled four-cycle is a
  // choice of one matching carried by single paths and another carried by
  // parallel pairs, the third staying unlinked.
  static const int kMatchings[3][2][2] = {
      {{0, 1}, {2, 3}}, {{0, 2}, {1, 3}}, {{0, 3}, {1, 2}}};
  for (int solo = 0; solo < 3; ++solo) {
    for (int dbl = 0; dbl < 3; ++dbl) {
      if (dbl == solo) continue;
      std::vector<std::pair<int, int>> want;
      for (int p = 0; p < 2; ++p)
        want.emplace_back(r[kMatchings[solo][p][0]], r[kMatchings[solo][p][1]]);
      for (int p = 0; p < 2; ++p) {
        std::pair<int, int> pr{r[kMatchings[dbl][p][0]], r[kMatchings[dbl][p][1]]};
        want.push_back(pr);
        want.push_back(pr);
      }
      SystemSearch search(g, want, &counter);
      std::optional<Subdivision> out;
      search.accept = [&](const std::vector<std::vector<int>>& walks) {
        Subdivision cand;
        cand.kind = SubdivisionKind::C4Doubled;
        cand.roots = r;
        cand.paths = walks;
        Subdivision trimmed = eliminate_chords(g, cand);
        auto chk = validate_subdivision(g, trimmed);
        if (!chk.ok) return false;
        out = trimmed;
        return true;
      };
      search.run(r);
      if (out) return *out;
    }
  }
  throw NotFound("no rooted path system over family {" +
                 join_ints({r[0], r[1], r[2], r[3]}) + "} in " + to_graph6(g));
}

// ---------------------------------------------------------------------------
// Shortcutting.

Subdivision eliminate_chords(const Graph& g, Subdivision s) {
  if (s.kind == SubdivisionKind::C4Contact)
    throw PreconditionViolated("shortcutting is not defined once a contact vertex exists");
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t pi = 0; pi < s.paths.size() && !changed; ++pi) {
      auto& walk = s.paths[pi];
      for (size_t i = 0; i + 2 < walk.size() && !changed; ++i) {
        for (size_t j = i + 2; j < walk.size(); ++j) {
          if (!g.has_edge(walk[i], walk[j])) continue;
          if (s.is_root(walk[i]) && s.is_root(walk[j]) &&
              s.edge_path(walk[i], walk[j]) >= 0)
            continue;
          std::vector<int> shorter(walk.begin(), walk.begin() + i + 1);
          shorter.insert(shorter.end(), walk.begin() + j, walk.end());
          walk = shorter;
          changed = true;
          break;
        }
      }
    }
  }
  return s;
}

// ---------------------------------------------------------------------------
// Per-root structure shared by the property checks and the classifier.

namespace {

struct RootFacts {
  int v = -1;
  std::vector<int> rn;
  std::string tag;  // fork / tri / tri_inline
  bool lone_settled = false;
  bool settled = false;
};

std::array<RootFacts, 4> root_facts(const Graph& g, const Subdivision& s) {
  std::array<RootFacts, 4> facts;
  for (int i = 0; i < 4; ++i) {
    facts[i].v = s.roots[i];
    facts[i].rn = s.remaining_neighbors(g, s.roots[i]);
    const auto& rn = facts[i].rn;
    if (rn.size() == 2 && g.has_edge(rn[0], rn[1]))
      facts[i].tag = s.has_edge(rn[0], rn[1]) ? "tri_inline" : "tri";
    else
      facts[i].tag = "fork";
  }

  auto shares_with = [&](int i, int j) {
    std::vector<int> common;
    std::set_intersection(facts[i].rn.begin(), facts[i].rn.end(), facts[j].rn.begin(),
                          facts[j].rn.end(), std::back_inserter(common));
    return common;
  };

  for (int i = 0; i < 4; ++i) {
    const auto& rn = facts[i].rn;
    size_t max_share = 0, total_share = 0;
    for (int j = 0; j < 4; ++j) {
      if (j == i) continue;
      size_t c = shares_with(i, j).size();
      max_share = std::max(max_share, c);
      total_share += c;
    }
    if (facts[i].tag == "tri") {
      // An adjacent loose pair whose connecting edge lies outside the system
      // only settles when it stays clear of the system and of all other roots.
      bool off = true;
      for (int x : rn)
        if (s.on_subdivision(x)) off = false;
      facts[i].lone_settled = off && total_share == 0;
    } else {
      // Detour shapes tolerate contact with the system and sharing one loose
      // neighbor per root.
      bool ok = max_share <= 1;
      // The loose pair must not double as the two outer contacts of a detour
      // through two adjacent roots.
      if (ok && rn.size() == 2) {
        for (int a = 0; a < 4 && ok; ++a) {
          if (a == i) continue;
          for (int b = 0; b < 4 && ok; ++b) {
            if (b == i || b == a) continue;
            if (!g.has_edge(facts[a].v, facts[b].v)) continue;
            if (s.has_edge(facts[a].v, facts[b].v)) continue;
            bool left = std::binary_search(facts[a].rn.begin(), facts[a].rn.end(), rn[0]) &&
                        std::binary_search(facts[b].rn.begin(), facts[b].rn.end(), rn[1]);
            bool right = std::binary_search(facts[a].rn.begin(), facts[a].rn.end(), rn[1]) &&
                         std::binary_search(facts[b].rn.begin(), facts[b].rn.end(), rn[0]);
            if (left || right) ok = false;
          }
        }
      }
      facts[i].lone_settled = ok;
    }
    facts[i].settled = facts[i].lone_settled;
  }

  // Two roots with the same non-adjacent loose pair, untouched by the system
  // and by the other roots, settle each other.
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      if (facts[i].rn.size() != 2 || facts[i].rn != facts[j].rn) continue;
      const auto& pair = facts[i].rn;
      if (g.has_edge(pair[0], pair[1])) continue;
      if (s.on_subdivision(pair[0]) || s.on_subdivision(pair[1])) continue;
      bool clean = true;
      for (int k = 0; k < 4 && clean; ++k) {
        if (k == i || k == j) continue;
        for (int x : pair)
          if (std::binary_search(facts[k].rn.begin(), facts[k].rn.end(), x)) clean = false;
      }
      if (clean) {
        facts[i].settled = true;
        facts[j].settled = true;
      }
    }
  }
  return facts;
}

// ---------------------------------------------------------------------------
// Rewiring detection (the four local path replacements).

struct RewireStep {
  std::string tag;
  int path_index = -1;
  std::vector<int> new_walk;
  std::string detail;
};

// Indices of (a,b)-paths in s, each at least one internal vertex long.
std::vector<int> long_paths_between(const Subdivision& s, int a, int b) {
  std::vector<int> out;
  for (size_t i = 0; i < s.paths.size(); ++i) {
    const auto& w = s.paths[i];
    if (w.size() < 3) continue;
    if ((w.front() == a && w.back() == b) || (w.front() == b && w.back() == a))
      out.push_back(static_cast<int>(i));
  }
  return out;
}

bool any_path_between(const Subdivision& s, int a, int b) {
  for (const auto& w : s.paths)
    if (!w.empty() &&
        ((w.front() == a && w.back() == b) || (w.front() == b && w.back() == a)))
      return true;
  return false;
}

// Shared corner setup used by the first three rewirings: u1 and u2 have
// exactly one loose neighbor v in common, their other loose neighbors v1, v2
// are both adjacent to v.
struct CornerSetup {
  int v = -1, v1 = -1, v2 = -1;
};

std::optional<CornerSetup> corner_setup(const Graph& g, const std::array<RootFacts, 4>& facts,
                                        int i, int j) {
  const auto& a = facts[i].rn;
  const auto& b = facts[j].rn;
  if (a.size() != 2 || b.size() != 2) return std::nullopt;
  std::vector<int> common;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
  if (common.size() != 1) return std::nullopt;
  CornerSetup cs;
  cs.v = common[0];
  cs.v1 = a[0] == cs.v ? a[1] : a[0];
  cs.v2 = b[0] == cs.v ? b[1] : b[0];
  if (!g.has_edge(cs.v1, cs.v) || !g.has_edge(cs.v2, cs.v)) return std::nullopt;
  return cs;
}

std::optional<RewireStep> match_rewire(const Graph& g, const Subdivision& s) {
  auto facts = root_facts(g, s);

  // Shared corner, detour through it.
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (j == i) continue;
      auto cs = corner_setup(g, facts, i, j);
      if (!cs) continue;
      if (s.on_subdivision(cs->v) || s.on_subdivision(cs->v1) || s.on_subdivision(cs->v2))
        continue;
      for (int pi : long_paths_between(s, facts[i].v, facts[j].v)) {
        auto walk = oriented_from(s.paths[pi], facts[i].v);
        int w1 = walk[1];
        if (g.has_edge(cs->v1, w1)) continue;
        RewireStep step;
        step.tag = "shared_rn_shortcut";
        step.path_index = pi;
        step.new_walk = {facts[i].v, cs->v, facts[j].v};
        step.detail = "u1=" + std::to_string(facts[i].v) + " u2=" + std::to_string(facts[j].v) +
                      " via " + std::to_string(cs->v);
        return step;
      }
    }
  }

  // Shared corner with both path neighbors tied to the loose side.
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (j == i) continue;
      auto cs = corner_setup(g, facts, i, j);
      if (!cs) continue;
      if (s.on_subdivision(cs->v) || s.on_subdivision(cs->v1) || s.on_subdivision(cs->v2))
        continue;
      for (int pi : long_paths_between(s, facts[i].v, facts[j].v)) {
        auto walk = oriented_from(s.paths[pi], facts[i].v);
        int w1 = walk[1], w2 = walk[walk.size() - 2];
        if (!g.has_edge(cs->v1, w1) || !g.has_edge(cs->v2, w2)) continue;
        if (g.has_edge(cs->v, w1))
          throw InducedK4Violation(
              "vertices " + std::to_string(facts[i].v) + "," + std::to_string(cs->v) + "," +
              std::to_string(cs->v1) + "," + std::to_string(w1) +
              " are pairwise adjacent around a family vertex");
        RewireStep step;
        step.tag = "shared_rn_relay";
        step.path_index = pi;
        step.new_walk = {facts[i].v, cs->v1, cs->v, facts[j].v};
        step.detail = "u1=" + std::to_string(facts[i].v) + " u2=" + std::to_string(facts[j].v) +
                      " via " + std::to_string(cs->v1) + "," + std::to_string(cs->v);
        return step;
      }
    }
  }

  // Shared corner whose far loose neighbor already sits on a path to a third
  // family vertex.
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (j == i) continue;
      auto cs = corner_setup(g, facts, i, j);
      if (!cs) continue;
      if (!any_path_between(s, facts[i].v, facts[j].v)) continue;
      if (s.on_subdivision(cs->v) || s.on_subdivision(cs->v1)) continue;
      for (int k = 0; k < 4; ++k) {
        if (k == i || k == j) continue;
        for (int pi : long_paths_between(s, facts[i].v, facts[k].v)) {
          auto walk = oriented_from(s.paths[pi], facts[i].v);
          int pos = position_in(walk, cs->v2);
          if (pos < 1 || pos > static_cast<int>(walk.size()) - 3) continue;
          int w1 = walk[1];
          if (g.has_edge(w1, cs->v) && g.has_edge(w1, cs->v1))
            throw InducedK4Violation(
                "vertices " + std::to_string(facts[i].v) + "," + std::to_string(cs->v) + "," +
                std::to_string(cs->v1) + "," + std::to_string(w1) +
                " are pairwise adjacent around a family vertex");
          RewireStep step;
          step.tag = "onpath_rn";
          step.path_index = pi;
          if (!g.has_edge(w1, cs->v1)) {
            step.new_walk = {facts[i].v, cs->v};
          } else {
            step.new_walk = {facts[i].v, cs->v1, cs->v};
          }
          step.new_walk.insert(step.new_walk.end(), walk.begin() + pos, walk.end());
          step.detail = "u1=" + std::to_string(facts[i].v) + " u3=" + std::to_string(facts[k].v) +
                        " picking up " + std::to_string(cs->v2);
          return step;
        }
      }
    }
  }

  // Two loose neighbors shared by both ends of a path.
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      const auto& a = facts[i].rn;
      const auto& b = facts[j].rn;
      if (a.size() != 2 || b.size() != 2 || a != b) continue;
      int v = a[0], vp = a[1];
      if (!g.has_edge(v, vp)) continue;
      if (s.on_subdivision(v) || s.on_subdivision(vp)) continue;
      for (int pi : long_paths_between(s, facts[i].v, facts[j].v)) {
        auto walk = oriented_from(s.paths[pi], facts[i].v);
        int w1 = walk[1];
        bool e1 = g.has_edge(v, w1), e2 = g.has_edge(vp, w1);
        if (e1 && e2)
          throw InducedK4Violation("vertices " + std::to_string(facts[i].v) + "," +
                                   std::to_string(v) + "," + std::to_string(vp) + "," +
                                   std::to_string(w1) +
                                   " are pairwise adjacent around a family vertex");
        int keep = e1 ? vp : v;
        int onto = e1 ? v : vp;
        RewireStep step;
        step.tag = "double_shared";
        step.path_index = pi;
        step.new_walk = {facts[i].v, onto, facts[j].v};
        step.detail = "u1=" + std::to_string(facts[i].v) + " u2=" + std::to_string(facts[j].v) +
                      " keeping " + std::to_string(keep);
        return step;
      }
    }
  }
  return std::nullopt;
}

void collect_incident_chords(const Subdivision& s, const std::array<RootFacts, 4>& facts,
                             bool* free_flag, std::string* witness) {
  for (int i = 0; i < 4; ++i) {
    const auto& f = facts[i];
    bool eligible = !f.settled || f.tag == "tri_inline";
    if (!eligible) continue;
    for (int pi : s.paths_at(f.v)) {
      const auto& walk = s.paths[pi];
      for (int x : f.rn) {
        if (position_in(walk, x) < 0) continue;
        if (s.is_root(x) && s.edge_path(f.v, x) >= 0) continue;
        *free_flag = false;
        if (witness->empty())
          *witness = "edge " + std::to_string(f.v) + "-" + std::to_string(x) +
                     " lands back on its own path " + walk_str(walk);
      }
    }
  }
}

void collect_remote_chords(const Graph& g, const Subdivision& s,
                           const std::array<RootFacts, 4>& facts, bool* free_flag,
                           std::string* witness) {
  for (int i = 0; i < 4; ++i) {
    const auto& f = facts[i];
    for (size_t a = 0; a < f.rn.size(); ++a) {
      for (size_t b = a + 1; b < f.rn.size(); ++b) {
        int x = f.rn[a], y = f.rn[b];
        if (!g.has_edge(x, y)) continue;
        for (size_t pi = 0; pi < s.paths.size(); ++pi) {
          const auto& walk = s.paths[pi];
          if (walk.front() == f.v || walk.back() == f.v) continue;
          int px = position_in(walk, x), py = position_in(walk, y);
          if (px < 0 || py < 0) continue;
          if (std::abs(px - py) < 2) continue;
          *free_flag = false;
          if (witness->empty())
            *witness = "edge " + std::to_string(x) + "-" + std::to_string(y) +
                       " spans the far path " + walk_str(walk) + " seen from " +
                       std::to_string(f.v);
        }
      }
    }
  }
}

}  // namespace

SubdivisionProperties check_properties(const Graph& g, const Subdivision& s) {
  SubdivisionProperties props;
  auto facts = root_facts(g, s);
  collect_incident_chords(s, facts, &props.incident_chord_free, &props.incident_witness);
  collect_remote_chords(g, s, facts, &props.remote_chord_free, &props.remote_witness);
  if (s.kind != SubdivisionKind::C4Contact) {
    if (auto step = match_rewire(g, s)) {
      props.rewire_stable = false;
      props.rewire_witness = step->tag + " " + step->detail;
    }
  }
  return props;
}

Subdivision redirect(const Graph& g, Subdivision s) {
  if (s.kind == SubdivisionKind::C4Contact)
    throw PreconditionViolated("rewiring is not defined once a contact vertex exists");
  {
    auto props = check_properties(g, s);
    if (!props.incident_chord_free || !props.remote_chord_free)
      throw PreconditionViolated("rewiring needs a shortcut-free system: " +
                                 (props.incident_witness.empty() ? props.remote_witness
                                                                 : props.incident_witness));
  }
  int applications = 0;
  while (auto step = match_rewire(g, s)) {
    s.paths[step->path_index] = step->new_walk;
    ++applications;
    if (applications > 4)
      throw std::logic_error("path rewiring failed to terminate: last step " + step->tag + " " +
                             step->detail);
    auto chk = validate_subdivision(g, s);
    if (!chk.ok)
      throw std::logic_error("path rewiring broke the system (" + step->tag +
                             "): " + chk.violations.front());
  }
  auto props = check_properties(g, s);
  if (!props.all())
    throw GuardFailure("rewired system is not stable: " +
                       (props.incident_witness + props.remote_witness + props.rewire_witness));
  return s;
}

Subdivision routing(const Graph& g, Subdivision s, int u, int w, int path_hint) {
  if (!s.is_root(u)) throw PreconditionViolated("routing pivot must be a family vertex");
  if (w < 0 || w >= g.n() || !g.has_edge(u, w))
    throw PreconditionViolated("the dropped neighbor must be adjacent to the pivot");
  if (s.on_subdivision(w))
    throw PreconditionViolated("the dropped neighbor still lies on the path system");

  auto rn = s.remaining_neighbors(g, u);
  std::vector<int> candidates;
  if (path_hint >= 0) {
    if (path_hint >= static_cast<int>(s.paths.size()))
      throw PreconditionViolated("path hint out of range");
    const auto& hinted = s.paths[path_hint];
    if (hinted.front() != u && hinted.back() != u)
      throw PreconditionViolated("hinted path does not start at the pivot");
    candidates.push_back(path_hint);
  } else {
    candidates = s.paths_at(u);
  }

  bool guarded = false;
  std::string guard_note;
  for (int pi : candidates) {
    auto walk = oriented_from(s.paths[pi], u);
    if (walk.size() < 2) continue;
    int v1 = walk[1];
    for (int v2 : rn) {
      if (v2 == w || v2 == v1) continue;
      if (!g.has_edge(v1, v2)) continue;
      if (!g.has_edge(v2, w)) return s;  // the loose pair already avoids w
      if (!g.has_edge(v1, w)) {
        if (s.on_subdivision(v2)) {
          guarded = true;
          guard_note = "replacement corner " + std::to_string(v2) + " already lies on the system";
          continue;
        }
        std::vector<int> rebuilt{u, v2};
        rebuilt.insert(rebuilt.end(), walk.begin() + 1, walk.end());
        s.paths[pi] = rebuilt;
        auto chk = validate_subdivision(g, s);
        if (!chk.ok)
          throw std::logic_error("routing broke the system: " + chk.violations.front());
        return s;
      }
      guarded = true;
      guard_note = "both corners " + std::to_string(v1) + "," + std::to_string(v2) +
                   " are adjacent to " + std::to_string(w);
    }
  }
  if (guarded) throw GuardFailure("routing at " + std::to_string(u) + ": " + guard_note);
  throw PreconditionViolated("routing at " + std::to_string(u) +
                             ": no adjacent loose pair meets a path of the system");
}

// ---------------------------------------------------------------------------
// Two-coloring.

namespace {

struct SplitOutcome {
  bool ok = false;
  std::map<int, int> end_color;
};

SplitOutcome eval_split(const Subdivision& s, const std::set<int>& red) {
  SplitOutcome out;
  for (int color = 0; color < 2; ++color) {
    std::vector<Edge> es;
    for (size_t pi = 0; pi < s.paths.size(); ++pi) {
      bool is_red = red.count(static_cast<int>(pi)) > 0;
      if ((color == kRed) != is_red) continue;
      const auto& w = s.paths[pi];
      for (size_t i = 0; i + 1 < w.size(); ++i) es.push_back(mk_edge(w[i], w[i + 1]));
    }
    if (es.empty()) return out;
    if (classify_class(es).kind != ClassKind::Path) return out;
    for (int r : s.roots) {
      int deg = 0;
      for (const auto& e : es)
        if (e.first == r || e.second == r) ++deg;
      if (deg == 1) {
        if (out.end_color.count(r)) return out;  // ends both colors
        out.end_color[r] = color;
      }
    }
  }
  if (out.end_color.size() != 4) return out;
  out.ok = true;
  return out;
}

}  // namespace

SubdivisionColoring two_color(const Subdivision& s, const TwoColorConstraints& constraints) {
  if (s.paths.size() != 6)
    throw PreconditionViolated("two-coloring expects the full six-path system");
  for (const auto& [root, color] : constraints.require_end_color) {
    if (!s.is_root(root)) throw PreconditionViolated("end-color constraint names a non-family vertex");
    if (color != kRed && color != kBlue) throw PreconditionViolated("unknown color id");
  }
  for (const auto& [root, pi] : constraints.avoid_path_color) {
    if (!s.is_root(root)) throw PreconditionViolated("avoidance constraint names a non-family vertex");
    if (pi < 0 || pi >= 6) throw PreconditionViolated("avoidance constraint path out of range");
  }

  std::vector<std::set<int>> candidates;
  std::set<std::set<int>> seen;
  auto add_candidate = [&](std::set<int> c) {
    if (c.size() == 3 && seen.insert(c).second) candidates.push_back(std::move(c));
  };

  // For one or two far-side conflicts on a fully linked system there is a
  // known pair of end rotations that dodges them; try those splits first.
  if (s.kind == SubdivisionKind::K4 && !constraints.avoid_path_color.empty() &&
      constraints.avoid_path_color.size() <= 2) {
    auto pidx = [&](int a, int b) {
      for (size_t i = 0; i < s.paths.size(); ++i) {
        const auto& w = s.paths[i];
        if ((w.front() == a && w.back() == b) || (w.front() == b && w.back() == a))
          return static_cast<int>(i);
      }
      return -1;
    };
    for (const auto& [u1, pi] : constraints.avoid_path_color) {
      const auto& w = s.paths[pi];
      int x = w.front(), y = w.back();
      if (u1 == x || u1 == y) continue;
      int u4 = -1;
      for (int r : s.roots)
        if (r != u1 && r != x && r != y) u4 = r;
      for (auto [u2, u3] : {std::pair<int, int>{x, y}, std::pair<int, int>{y, x}}) {
        int a = pidx(u3, u2), b = pidx(u2, u1), c = pidx(u1, u4);
        if (a >= 0 && b >= 0 && c >= 0) add_candidate({a, b, c});
        int d = pidx(u4, u1), e = pidx(u1, u3), f = pidx(u3, u2);
        if (d >= 0 && e >= 0 && f >= 0) add_candidate({d, e, f});
      }
    }
  }

  for (int a = 0; a < 6; ++a)
    for (int b = a + 1; b < 6; ++b)
      for (int c = b + 1; c < 6; ++c) add_candidate({a, b, c});

  int tried = 0;
  for (const auto& red : candidates) {
    ++tried;
    auto outcome = eval_split(s, red);
    if (!outcome.ok) continue;
    bool fits = true;
    for (const auto& [root, color] : constraints.require_end_color)
      if (outcome.end_color.at(root) != color) fits = false;
    for (const auto& [root, pi] : constraints.avoid_path_color) {
      int path_color = red.count(pi) ? kRed : kBlue;
      if (outcome.end_color.at(root) == path_color) fits = false;
    }
    if (!fits) continue;
    SubdivisionColoring result;
    result.path_color.assign(6, kBlue);
    for (int pi : red) result.path_color[pi] = kRed;
    result.end_color = outcome.end_color;
    return result;
  }
  std::ostringstream why;
  why << "no half-and-half split fits (" << tried << " tried, "
      << constraints.require_end_color.size() << " end pins, "
      << constraints.avoid_path_color.size() << " avoidances)";
  throw Unsatisfiable(why.str());
}

// ---------------------------------------------------------------------------
// Problem classification.

ProblemReport classify_problems(const Graph& g, const Subdivision& s) {
  {
    auto chk = validate_subdivision(g, s);
    if (!chk.ok) throw PreconditionViolated("classification needs a valid system: " +
                                            chk.violations.front());
    auto props = check_properties(g, s);
    if (!props.all())
      throw PreconditionViolated("classification needs a stable system: " +
                                 props.incident_witness + props.remote_witness +
                                 props.rewire_witness);
  }
  auto facts = root_facts(g, s);
  ProblemReport report;
  for (int i = 0; i < 4; ++i) report.patterns[facts[i].v] = facts[i].tag;
  for (int i = 0; i < 4; ++i)
    if (facts[i].settled) report.settled.push_back(facts[i].v);
  std::sort(report.settled.begin(), report.settled.end());

  for (int i = 0; i < 4; ++i) {
    const auto& f = facts[i];
    if (f.rn.size() != 2) continue;
    int v = f.rn[0], vp = f.rn[1];
    if (!g.has_edge(v, vp)) continue;
    if (s.is_root(v) || s.is_root(vp)) continue;
    for (size_t pi = 0; pi < s.paths.size(); ++pi) {
      const auto& walk = s.paths[pi];
      if (walk.front() == f.v || walk.back() == f.v) continue;
      int hits = (position_in(walk, v) >= 0 ? 1 : 0) + (position_in(walk, vp) >= 0 ? 1 : 0);
      if (hits != 1) continue;
      bool third = true;
      for (int j = 0; j < 4 && third; ++j) {
        if (j == i) continue;
        bool touches = std::binary_search(facts[j].rn.begin(), facts[j].rn.end(), v) ||
                       std::binary_search(facts[j].rn.begin(), facts[j].rn.end(), vp);
        if (touches && !facts[j].settled) third = false;
      }
      if (!third) continue;
      DistantEntry entry;
      entry.root = f.v;
      entry.path_index = static_cast<int>(pi);
      entry.triangle = {std::min(v, vp), std::max(v, vp)};
      report.distant.push_back(entry);
    }
  }

  {
    // Components of the shares-a-loose-neighbor relation over unsettled roots.
    std::array<int, 4> comp{0, 1, 2, 3};
    std::function<int(int)> find = [&](int x) {
      while (comp[x] != x) x = comp[x] = comp[comp[x]];
      return x;
    };
    for (int i = 0; i < 4; ++i) {
      for (int j = i + 1; j < 4; ++j) {
        if (facts[i].settled || facts[j].settled) continue;
        std::vector<int> common;
        std::set_intersection(facts[i].rn.begin(), facts[i].rn.end(), facts[j].rn.begin(),
                              facts[j].rn.end(), std::back_inserter(common));
        if (!common.empty()) comp[find(i)] = find(j);
      }
    }
    std::map<int, std::vector<int>> groups;
    for (int i = 0; i < 4; ++i)
      if (!facts[i].settled) groups[find(i)].push_back(facts[i].v);
    for (auto& [rep, members] : groups) {
      if (members.size() < 2) continue;
      std::sort(members.begin(), members.end());
      report.close_groups.push_back(members);
    }
    std::sort(report.close_groups.begin(), report.close_groups.end());
  }

  bool all_deg5 = true;
  for (int r : s.roots)
    if (g.degree(r) != 5) all_deg5 = false;

  if (all_deg5) {
    // A root sharing no loose neighbor with the others must either reach a
    // far path or be settled on its own.
    for (int i = 0; i < 4; ++i) {
      bool isolated = true;
      for (int j = 0; j < 4 && isolated; ++j) {
        if (j == i) continue;
        std::vector<int> common;
        std::set_intersection(facts[i].rn.begin(), facts[i].rn.end(), facts[j].rn.begin(),
                              facts[j].rn.end(), std::back_inserter(common));
        if (!common.empty()) isolated = false;
      }
      if (!isolated) continue;
      bool causes_distant = false;
      for (const auto& d : report.distant)
        if (d.root == facts[i].v) causes_distant = true;
      if (!causes_distant && !facts[i].lone_settled)
        throw GuardFailure("vertex " + std::to_string(facts[i].v) +
                           " shares no loose neighbor yet is neither far-reaching nor settled");
    }

    if (s.kind == SubdivisionKind::C4Doubled) {
      // On a doubled four-cycle that admits no fully linked system, a singly
      // linked pair can have at most one end touching the system, and at most
      // two roots can reach far paths.
      for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) {
          if (s.link(i, j) != 1) continue;
          int touching = 0;
          for (int idx : {i, j}) {
            bool touches = false;
            for (int x : facts[idx].rn)
              if (s.on_subdivision(x)) touches = true;
            if (touches) ++touching;
          }
          if (touching > 1)
            throw GuardFailure("both ends of the single path " + std::to_string(facts[i].v) +
                               "-" + std::to_string(facts[j].v) +
                               " keep loose neighbors on the system");
        }
      }
      std::set<int> distant_roots;
      for (const auto& d : report.distant) distant_roots.insert(d.root);
      if (distant_roots.size() >= 3)
        throw GuardFailure("three far-reaching family vertices on a doubled four-cycle");
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Validation.

SubdivisionCheck validate_subdivision(const Graph& g, const Subdivision& s) {
  SubdivisionCheck chk;
  auto fail = [&](const std::string& why) {
    chk.ok = false;
    chk.violations.push_back(why);
  };

  for (int r : s.roots)
    if (r < 0 || r >= g.n()) fail("family vertex " + std::to_string(r) + " out of range");
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (s.roots[i] == s.roots[j]) fail("family vertices repeat");
  if (!chk.ok) return chk;

  if (s.paths.size() != 6) {
    fail("expected six paths, got " + std::to_string(s.paths.size()));
    return chk;
  }

  for (size_t pi = 0; pi < s.paths.size(); ++pi) {
    const auto& w = s.paths[pi];
    if (w.size() < 2) {
      fail("path " + std::to_string(pi) + " is too short");
      continue;
    }
    if (!s.is_root(w.front()) || !s.is_root(w.back()))
      fail("path " + std::to_string(pi) + " does not run between family vertices");
    std::set<int> seen_vertices;
    for (size_t i = 0; i < w.size(); ++i) {
      if (w[i] < 0 || w[i] >= g.n()) {
        fail("path " + std::to_string(pi) + " leaves the graph");
        break;
      }
      if (!seen_vertices.insert(w[i]).second)
        fail("path " + std::to_string(pi) + " repeats vertex " + std::to_string(w[i]));
      if (i + 1 < w.size() && !g.has_edge(w[i], w[i + 1]))
        fail("path " + std::to_string(pi) + " uses the non-edge " + std::to_string(w[i]) + "-" +
             std::to_string(w[i + 1]));
      if (i > 0 && i + 1 < w.size() && s.is_root(w[i]))
        fail("family vertex " + std::to_string(w[i]) + " is internal to path " +
             std::to_string(pi));
    }
  }
  if (!chk.ok) return chk;

  {
    std::map<Edge, int> edge_use;
    for (const auto& w : s.paths)
      for (size_t i = 0; i + 1 < w.size(); ++i) ++edge_use[mk_edge(w[i], w[i + 1])];
    for (const auto& [e, cnt] : edge_use)
      if (cnt > 1)
        fail("edge " + std::to_string(e.first) + "-" + std::to_string(e.second) +
             " is used by " + std::to_string(cnt) + " paths");
  }

  {
    std::map<int, std::vector<int>> internal_on;
    for (size_t pi = 0; pi < s.paths.size(); ++pi) {
      const auto& w = s.paths[pi];
      for (size_t i = 1; i + 1 < w.size(); ++i)
        internal_on[w[i]].push_back(static_cast<int>(pi));
    }
    std::vector<int> shared;
    for (const auto& [v, pis] : internal_on)
      if (pis.size() > 1) shared.push_back(v);
    if (s.kind == SubdivisionKind::C4Contact) {
      if (shared.size() != 1 || internal_on[shared[0]].size() != 2) {
        fail("a contact system needs exactly one doubly used interior vertex");
      } else if (s.contact != shared[0]) {
        fail("contact vertex mismatch: " + std::to_string(s.contact) + " vs " +
             std::to_string(shared[0]));
      } else {
        // The two crossing paths must come from different doubled pairs.
        const auto& pis = internal_on[shared[0]];
        auto ends = [&](int pi) {
          std::pair<int, int> e{s.root_index(s.paths[pi].front()),
                                s.root_index(s.paths[pi].back())};
          if (e.first > e.second) std::swap(e.first, e.second);
          return e;
        };
        if (ends(pis[0]) == ends(pis[1]))
          fail("contact vertex joins two paths of the same pair");
      }
    } else {
      for (int v : shared)
        fail("interior vertex " + std::to_string(v) + " is shared by paths " +
             join_ints(internal_on[v]));
      if (s.contact != -1) fail("contact vertex set on a contact-free kind");
    }
  }

  {
    std::array<std::array<int, 4>, 4> links{};
    for (auto& row : links) row.fill(0);
    for (const auto& w : s.paths) {
      int a = s.root_index(w.front()), b = s.root_index(w.back());
      if (a < 0 || b < 0 || a == b) {
        fail("path endpoints do not form a family pair");
        return chk;
      }
      ++links[a][b];
      ++links[b][a];
    }
    if (s.kind == SubdivisionKind::K4) {
      for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
          if (links[i][j] != 1)
            fail("pair " + std::to_string(s.roots[i]) + "-" + std::to_string(s.roots[j]) +
                 " is joined by " + std::to_string(links[i][j]) + " paths, wanted 1");
    } else {
      for (int i = 0; i < 4; ++i) {
        int solo = 0, dbl = 0, zero = 0;
        for (int j = 0; j < 4; ++j) {
          if (j == i) continue;
          if (links[i][j] == 1) ++solo;
          else if (links[i][j] == 2) ++dbl;
          else if (links[i][j] == 0) ++zero;
          else fail("pair joined by " + std::to_string(links[i][j]) + " paths");
        }
        if (solo != 1 || dbl != 1 || zero != 1)
          fail("family vertex " + std::to_string(s.roots[i]) +
               " is not on a doubled four-cycle (solo=" + std::to_string(solo) +
               " doubled=" + std::to_string(dbl) + ")");
      }
    }
  }
  if (!chk.ok) return chk;

  if (s.kind == SubdivisionKind::C4Doubled) {
    std::array<std::vector<int>, 4> rn;
    for (int i = 0; i < 4; ++i) rn[i] = s.remaining_neighbors(g, s.roots[i]);
    for (int i = 0; i < 4; ++i) {
      for (int j = i + 1; j < 4; ++j) {
        std::vector<int> common;
        std::set_intersection(rn[i].begin(), rn[i].end(), rn[j].begin(), rn[j].end(),
                              std::back_inserter(common));
        int lk = s.link(i, j);
        if (lk == 0 && !common.empty())
          fail("unlinked pair " + std::to_string(s.roots[i]) + "-" +
               std::to_string(s.roots[j]) + " shares loose neighbor " +
               std::to_string(common[0]));
        if (lk == 2) {
          if (common.size() > 1)
            fail("doubly linked pair " + std::to_string(s.roots[i]) + "-" +
                 std::to_string(s.roots[j]) + " shares " + std::to_string(common.size()) +
                 " loose neighbors");
          if (common.size() == 1) {
            int x = common[0];
            bool good = false;
            for (size_t pi = 0; pi < s.paths.size(); ++pi) {
              const auto& w = s.paths[pi];
              if (w.front() == s.roots[i] || w.back() == s.roots[i] ||
                  w.front() == s.roots[j] || w.back() == s.roots[j])
                continue;
              int a = s.root_index(w.front()), b = s.root_index(w.back());
              if (s.link(a, b) != 2) continue;
              if (position_in(w, x) >= 0) good = true;
            }
            if (!good)
              fail("shared loose neighbor " + std::to_string(x) +
                   " of a doubly linked pair misses the far parallel paths");
          }
        }
        if (lk == 1) {
          for (size_t pi = 0; pi < s.paths.size(); ++pi) {
            const auto& w = s.paths[pi];
            bool between = (w.front() == s.roots[i] && w.back() == s.roots[j]) ||
                           (w.front() == s.roots[j] && w.back() == s.roots[i]);
            if (!between) continue;
            for (size_t t = 1; t + 1 < w.size(); ++t) {
              for (int k = 0; k < 4; ++k) {
                if (k == i || k == j) continue;
                if (std::binary_search(rn[k].begin(), rn[k].end(), w[t]))
                  fail("interior vertex " + std::to_string(w[t]) + " of the single path " +
                       std::to_string(s.roots[i]) + "-" + std::to_string(s.roots[j]) +
                       " is a loose neighbor of " + std::to_string(s.roots[k]));
              }
            }
          }
        }
      }
    }
  }
  return chk;
}

// ---------------------------------------------------------------------------
// Rendering.

std::string subdivision_dot(const Graph& g, const Subdivision& s,
                            const SubdivisionColoring* coloring) {
  static const char* kPalette[] = {"firebrick", "royalblue", "forestgreen",
                                   "darkorange", "purple",    "teal"};
  std::ostringstream o;
  o << "graph path_system {\n";
  o << "  layout=neato;\n  overlap=false;\n  node [shape=circle, fontsize=10];\n";
  auto on_s = s.vertex_set();
  for (int v = 0; v < g.n(); ++v) {
    o << "  " << v << " [";
    if (s.is_root(v))
      o << "shape=doublecircle, style=filled, fillcolor=gold";
    else if (v == s.contact)
      o << "shape=diamond, style=filled, fillcolor=lightblue";
    else if (on_s.count(v))
      o << "style=filled, fillcolor=white";
    else
      o << "color=gray60, fontcolor=gray60";
    o << "];\n";
  }
  std::set<Edge> drawn;
  for (size_t pi = 0; pi < s.paths.size(); ++pi) {
    const char* color = kPalette[pi % 6];
    if (coloring && pi < coloring->path_color.size())
      color = coloring->path_color[pi] == kRed ? "firebrick" : "royalblue";
    const auto& w = s.paths[pi];
    for (size_t i = 0; i + 1 < w.size(); ++i) {
      o << "  " << w[i] << " -- " << w[i + 1] << " [color=" << color << ", penwidth=2.2];\n";
      drawn.insert(mk_edge(w[i], w[i + 1]));
    }
  }
  for (const auto& [u, v] : g.edges())
    if (!drawn.count(mk_edge(u, v)))
      o << "  " << u << " -- " << v << " [color=gray70, style=dashed];\n";
  o << "}\n";
  return o.str();
}

}  // namespace pd
