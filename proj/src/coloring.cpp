#include "pd/coloring.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

namespace pd {

int EdgeColoring::color_count() const {
  std::set<int> ids;
  for (auto& [e, c] : color_of_) ids.insert(c);
  return static_cast<int>(ids.size());
}

std::vector<std::vector<Edge>> EdgeColoring::classes() const {
  int maxc = -1;
  for (auto& [e, c] : color_of_) maxc = std::max(maxc, c);
  std::vector<std::vector<Edge>> out(maxc + 1);
  for (auto& [e, c] : color_of_) out[c].push_back(e);
  return out;
}

std::vector<Edge> EdgeColoring::class_edges(int color) const {
  std::vector<Edge> out;
  for (auto& [e, c] : color_of_)
    if (c == color) out.push_back(e);
  return out;
}

EdgeColoring EdgeColoring::normalized() const {
  std::map<int, int> remap;
  EdgeColoring out;
  for (auto& [e, c] : color_of_) {
    auto [it, fresh] = remap.try_emplace(c, static_cast<int>(remap.size()));
    out.set(e.first, e.second, it->second);
  }
  return out;
}

EdgeColoring EdgeColoring::shifted(int delta) const {
  EdgeColoring out;
  for (auto& [e, c] : color_of_) out.set(e.first, e.second, c + delta);
  return out;
}

ColorClassShape classify_class(const std::vector<Edge>& edges) {
  ColorClassShape shape;
  if (edges.empty()) {
    shape.why = "empty class";
    return shape;
  }
  std::map<int, std::vector<int>> adj;
  std::set<Edge> seen;
  for (auto [u, v] : edges) {
    if (!seen.insert(mk_edge(u, v)).second) {
      shape.why = "repeated edge";
      return shape;
    }
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<int> ends;
  for (auto& [v, nb] : adj) {
    if (nb.size() > 2) {
      shape.why = "branching at vertex " + std::to_string(v);
      return shape;
    }
    if (nb.size() == 1) ends.push_back(v);
  }
  auto walk = [&](int start, int next) {
    std::vector<int> seq{start, next};
    int prev = start, cur = next;
    while (cur != start) {
      auto& nb = adj[cur];
      if (nb.size() != 2) break;
      int fwd = nb[0] == prev ? nb[1] : nb[0];
      seq.push_back(fwd);
      prev = cur;
      cur = fwd;
      if (seq.size() > edges.size() + 1) break;
    }
    return seq;
  };
  if (ends.size() == 2) {
    std::vector<int> seq = walk(ends[0], adj[ends[0]][0]);
    if (seq.size() != edges.size() + 1) {
      shape.why = "disconnected class";
      return shape;
    }
    std::vector<int> rev(seq.rbegin(), seq.rend());
    if (rev < seq) seq = rev;
    shape.kind = ClassKind::Path;
    shape.vertex_sequence = seq;
    shape.endpoints = {std::min(seq.front(), seq.back()), std::max(seq.front(), seq.back())};
    return shape;
  }
  if (ends.empty()) {
    int start = adj.begin()->first;
    int next = std::min(adj[start][0], adj[start][1]);
    std::vector<int> seq = walk(start, next);
    if (seq.size() != edges.size() + 1 || seq.front() != seq.back() ||
        adj.size() != edges.size()) {
      shape.why = "disconnected class with a cycle";
      return shape;
    }
    shape.kind = ClassKind::Cycle;
    shape.vertex_sequence = seq;
    return shape;
  }
  shape.why = "odd endpoint structure";
  return shape;
}

VerifyReport verify_path_coloring(const Graph& g, const EdgeColoring& c, bool allow_cycles) {
  VerifyReport rep;
  if (c.size() != static_cast<size_t>(g.m())) throw ColoringDomainMismatch();
  for (auto& [e, col] : c.entries())
    if (!g.has_edge(e.first, e.second)) throw ColoringDomainMismatch();
  auto classes = c.classes();
  int used = 0;
  for (size_t col = 0; col < classes.size(); col++) {
    if (classes[col].empty()) continue;
    used++;
    auto shape = classify_class(classes[col]);
    if (shape.kind == ClassKind::Path) continue;
    if (shape.kind == ClassKind::Cycle && allow_cycles) continue;
    std::string why = shape.kind == ClassKind::Cycle ? "cycle class" : shape.why;
    rep.fail("color " + std::to_string(col) + ": " + why, {}, classes[col]);
  }
  rep.color_count = used;
  return rep;
}

VerifyReport verify_good_coloring(const Graph& g, const EdgeColoring& c, bool relaxed_budget) {
  VerifyReport rep = verify_path_coloring(g, c, false);
  rep.budget = relaxed_budget ? (g.n() + 1) / 2 : g.n() / 2;
  if (rep.color_count > rep.budget)
    rep.fail("color count " + std::to_string(rep.color_count) + " exceeds budget " +
             std::to_string(rep.budget));
  return rep;
}

EdgeColoring apply_deviation(const EdgeColoring& c, int color, Edge removed_edge,
                             const std::vector<int>& section) {
  auto have = c.get(removed_edge.first, removed_edge.second);
  if (!have || *have != color) throw NotOnClass();
  if (section.size() < 3) throw BadSection();
  if (mk_edge(section.front(), section.back()) != mk_edge(removed_edge.first, removed_edge.second))
    throw BadSection();
  EdgeColoring out = c;
  out.erase(removed_edge.first, removed_edge.second);
  for (size_t i = 0; i + 1 < section.size(); i++) out.set(section[i], section[i + 1], color);
  return out;
}

EdgeColoring apply_extension(const EdgeColoring& c, int color, const std::vector<Edge>& new_edges) {
  auto cls = c.class_edges(color);
  if (cls.empty()) throw NotOnClass();
  auto shape = classify_class(cls);
  if (shape.kind != ClassKind::Path) throw NotAnEndpoint();
  std::set<int> on_class(shape.vertex_sequence.begin(), shape.vertex_sequence.end());
  int tip;
  if (new_edges.empty()) return c;
  auto [a, b] = new_edges.front();
  if (a == shape.endpoints[0] || a == shape.endpoints[1]) {
    tip = a;
  } else if (b == shape.endpoints[0] || b == shape.endpoints[1]) {
    tip = b;
  } else {
    throw NotAnEndpoint();
  }
  EdgeColoring out = c;
  for (auto [u, v] : new_edges) {
    int far;
    if (u == tip) {
      far = v;
    } else if (v == tip) {
      far = u;
    } else {
      throw CreatesBranch();
    }
    if (on_class.count(far)) throw CreatesBranch();
    if (out.get(u, v)) throw CreatesBranch();
    out.set(u, v, color);
    on_class.insert(far);
    tip = far;
  }
  return out;
}

bool is_exceptional(const std::vector<Edge>& cycle_edges, const std::vector<Edge>& path_edges) {
  auto cyc = classify_class(cycle_edges);
  auto pat = classify_class(path_edges);
  if (cyc.kind != ClassKind::Cycle) throw ShapeError("first argument is not a cycle");
  if (pat.kind != ClassKind::Path) throw ShapeError("second argument is not a path");
  if (cycle_edges.size() != 5) return false;
  std::set<int> cv(cyc.vertex_sequence.begin(), cyc.vertex_sequence.end());
  std::set<int> pv(pat.vertex_sequence.begin(), pat.vertex_sequence.end());
  for (int v : cv)
    if (!pv.count(v)) return false;
  std::set<Edge> inside;
  for (auto& e : cycle_edges)
    if (cv.count(e.first) && cv.count(e.second)) inside.insert(mk_edge(e.first, e.second));
  for (auto& e : path_edges)
    if (cv.count(e.first) && cv.count(e.second)) inside.insert(mk_edge(e.first, e.second));
  return inside.size() == 9;  // 5 vertices, 9 edges: the near-complete clique
}

std::string coloring_to_json(const Graph& g, const EdgeColoring& c, bool relaxed_budget) {
  nlohmann::json j;
  j["n"] = g.n();
  auto paths = nlohmann::json::array();
  auto norm = c.normalized();
  for (auto& cls : norm.classes()) {
    if (cls.empty()) continue;
    auto shape = classify_class(cls);
    paths.push_back(shape.vertex_sequence);
  }
  j["paths"] = paths;
  j["relaxed_budget"] = relaxed_budget;
  return j.dump();
}

ParsedDecomposition decomposition_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  ParsedDecomposition d;
  d.n = j.at("n").get<int>();
  for (auto& p : j.at("paths")) d.paths.push_back(p.get<std::vector<int>>());
  if (j.contains("relaxed_budget")) d.relaxed_budget = j["relaxed_budget"].get<bool>();
  return d;
}

EdgeColoring coloring_from_paths(const Graph& g, const std::vector<std::vector<int>>& paths) {
  EdgeColoring c;
  for (size_t col = 0; col < paths.size(); col++) {
    auto& seq = paths[col];
    for (size_t i = 0; i + 1 < seq.size(); i++) {
      int u = seq[i], v = seq[i + 1];
      if (!g.has_edge(u, v)) throw ShapeError("path uses a non-edge");
      if (c.get(u, v)) throw ShapeError("edge colored twice");
      c.set(u, v, static_cast<int>(col));
    }
  }
  return c;
}

}  // namespace pd
