#include "pd/graph.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <optional>
#include <sstream>

namespace pd {

Graph Graph::from_edges(int n, std::vector<std::pair<int, int>> es) {
  Graph g(n);
  for (auto& [u, v] : es) {
    if (u == v) throw Loop(u);
    if (u > v) std::swap(u, v);
    if (u < 0 || v >= n) throw ParseError(0, "vertex id out of range");
  }
  std::sort(es.begin(), es.end());
  for (size_t i = 1; i < es.size(); i++)
    if (es[i] == es[i - 1]) throw DuplicateEdge(es[i].first, es[i].second);
  g.edges_ = std::move(es);
  for (auto [u, v] : g.edges_) {
    g.adj_[u].push_back(v);
    g.adj_[v].push_back(u);
  }
  for (auto& a : g.adj_) std::sort(a.begin(), a.end());
  return g;
}

int Graph::edge_id(int u, int v) const {
  if (u > v) std::swap(u, v);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), std::make_pair(u, v));
  if (it != edges_.end() && *it == std::make_pair(u, v))
    return static_cast<int>(it - edges_.begin());
  return -1;
}

Graph Graph::add_edge(int u, int v) const {
  auto es = edges_;
  es.emplace_back(u, v);
  return from_edges(n_, std::move(es));
}

Graph Graph::remove_edge(int u, int v) const {
  int id = edge_id(u, v);
  if (id < 0) throw std::logic_error("remove_edge: edge absent");
  auto es = edges_;
  es.erase(es.begin() + id);
  return from_edges(n_, std::move(es));
}

Graph Graph::remove_vertices(std::vector<int> vs, std::vector<int>* old_of_new) const {
  std::vector<char> drop(n_, 0);
  for (int v : vs) drop[v] = 1;
  std::vector<int> keep;
  for (int v = 0; v < n_; v++)
    if (!drop[v]) keep.push_back(v);
  return induced(std::move(keep), old_of_new);
}

Graph Graph::induced(std::vector<int> keep, std::vector<int>* old_of_new) const {
  std::sort(keep.begin(), keep.end());
  std::vector<int> new_of_old(n_, -1);
  for (size_t i = 0; i < keep.size(); i++) new_of_old[keep[i]] = static_cast<int>(i);
  std::vector<std::pair<int, int>> es;
  for (auto [u, v] : edges_)
    if (new_of_old[u] >= 0 && new_of_old[v] >= 0)
      es.emplace_back(new_of_old[u], new_of_old[v]);
  if (old_of_new) *old_of_new = keep;
  return from_edges(static_cast<int>(keep.size()), std::move(es));
}

namespace {

bool looks_like_edge_list(const std::string& text) {
  for (size_t i = 0; i < text.size(); i++) {
    char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') i++;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return std::isdigit(static_cast<unsigned char>(c));
  }
  return true;  // blank input: treat as empty edge list
}

}  // namespace

Graph parse_graph(const std::string& text) {
  if (text.rfind(">>graph6<<", 0) == 0 || !looks_like_edge_list(text))
    return parse_graph6(text);
  return parse_edge_list(text);
}

Graph parse_edge_list(const std::string& text) {
  std::vector<std::pair<int, int>> es;
  std::istringstream in(text);
  std::string line;
  int lineno = 0, maxid = -1;
  while (std::getline(in, line)) {
    lineno++;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    long u, v;
    if (!(ls >> u)) continue;  // blank or comment-only line
    if (!(ls >> v)) throw ParseError(lineno, "expected two vertex ids");
    std::string rest;
    if (ls >> rest) throw ParseError(lineno, "trailing tokens");
    if (u < 0 || v < 0) throw ParseError(lineno, "negative vertex id");
    es.emplace_back(static_cast<int>(u), static_cast<int>(v));
    maxid = std::max(maxid, static_cast<int>(std::max(u, v)));
  }
  return Graph::from_edges(maxid + 1, std::move(es));
}

Graph parse_graph6(const std::string& line_in) {
  std::string s = line_in;
  if (auto nl = s.find_first_of("\r\n"); nl != std::string::npos) s.erase(nl);
  if (s.rfind(">>graph6<<", 0) == 0) s.erase(0, 10);
  if (s.empty()) throw ParseError(1, "empty graph6 string");
  size_t pos = 0;
  auto byte = [&](size_t i) -> int {
    if (i >= s.size()) throw ParseError(1, "graph6 string truncated");
    int c = static_cast<unsigned char>(s[i]);
    if (c < 63 || c > 126) throw ParseError(1, "graph6 byte out of range");
    return c - 63;
  };
  long long n;
  if (byte(0) != 63) {
    n = byte(0);
    pos = 1;
  } else if (s.size() > 1 && byte(1) != 63) {
    n = (static_cast<long long>(byte(1)) << 12) | (byte(2) << 6) | byte(3);
    pos = 4;
  } else {
    n = 0;
    for (int i = 0; i < 6; i++) n = (n << 6) | byte(2 + i);
    pos = 8;
  }
  if (n < 0 || n > 100000) throw ParseError(1, "graph6 vertex count out of range");
  std::vector<std::pair<int, int>> es;
  int bit = 0;
  size_t idx = pos;
  int cur = 0;
  for (int j = 1; j < n; j++) {
    for (int i = 0; i < j; i++) {
      if (bit == 0) {
        cur = byte(idx++);
        bit = 6;
      }
      bit--;
      if ((cur >> bit) & 1) es.emplace_back(i, j);
    }
  }
  return Graph::from_edges(static_cast<int>(n), std::move(es));
}

std::string to_graph6(const Graph& g) {
  std::string out;
  long long n = g.n();
  if (n <= 62) {
    out.push_back(static_cast<char>(n + 63));
  } else if (n <= 258047) {
    out.push_back(126);
    out.push_back(static_cast<char>(((n >> 12) & 63) + 63));
    out.push_back(static_cast<char>(((n >> 6) & 63) + 63));
    out.push_back(static_cast<char>((n & 63) + 63));
  } else {
    throw std::logic_error("graph too large for this writer");
  }
  int bit = 5, cur = 0;
  for (int j = 1; j < g.n(); j++) {
    for (int i = 0; i < j; i++) {
      if (g.has_edge(i, j)) cur |= 1 << bit;
      if (bit == 0) {
        out.push_back(static_cast<char>(cur + 63));
        cur = 0;
        bit = 6;
      }
      bit--;
    }
  }
  if (bit != 5) out.push_back(static_cast<char>(cur + 63));
  return out;
}

std::string to_edge_list(const Graph& g) {
  std::ostringstream out;
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
  return out.str();
}

std::string to_dot(const Graph& g) {
  std::ostringstream out;
  out << "graph {\n";
  for (int v = 0; v < g.n(); v++) out << "  " << v << ";\n";
  for (auto [u, v] : g.edges()) out << "  " << u << " -- " << v << ";\n";
  out << "}\n";
  return out.str();
}

std::vector<std::vector<int>> connected_components(const Graph& g) {
  std::vector<std::vector<int>> comps;
  std::vector<char> seen(g.n(), 0);
  for (int s = 0; s < g.n(); s++) {
    if (seen[s]) continue;
    std::vector<int> comp, stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (int w : g.neighbors(v))
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

bool is_connected(const Graph& g) {
  return g.n() <= 1 || connected_components(g).size() == 1;
}

namespace {

// Connectivity of g minus a dropped vertex set; returns a witness pair of
// separated vertices, or nullopt if still connected (or <2 vertices remain).
std::optional<std::pair<int, int>> split_witness(const Graph& g, const std::vector<int>& dropped) {
  std::vector<char> drop(g.n(), 0);
  for (int v : dropped) drop[v] = 1;
  int start = -1, remaining = 0;
  for (int v = 0; v < g.n(); v++)
    if (!drop[v]) {
      remaining++;
      if (start < 0) start = v;
    }
  if (remaining < 2) return std::nullopt;
  std::vector<char> seen(g.n(), 0);
  std::vector<int> stack{start};
  seen[start] = 1;
  int count = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : g.neighbors(v))
      if (!drop[w] && !seen[w]) {
        seen[w] = 1;
        count++;
        stack.push_back(w);
      }
  }
  if (count == remaining) return std::nullopt;
  for (int v = 0; v < g.n(); v++)
    if (!drop[v] && !seen[v]) return std::make_pair(start, v);
  return std::nullopt;
}

}  // namespace

std::vector<VertexCut> enumerate_cuts(const Graph& g, int k) {
  std::vector<VertexCut> cuts;
  int n = g.n();
  std::vector<int> subset;
  auto consider = [&](const std::vector<int>& vs) {
    if (auto w = split_witness(g, vs)) cuts.push_back({vs, *w});
  };
  for (int a = 0; a < n; a++) {
    consider({a});
    if (k < 2) continue;
    for (int b = a + 1; b < n; b++) {
      consider({a, b});
      if (k < 3) continue;
      for (int c = b + 1; c < n; c++) consider({a, b, c});
    }
  }
  return cuts;
}

ExceptionalKind classify_exception(const Graph& g) {
  if (g.n() == 3 && g.m() == 3) return ExceptionalKind::K3;
  // A simple graph on 5 vertices with 9 edges is K5 minus one edge.
  if (g.n() == 5 && g.m() == 9) return ExceptionalKind::K5minus;
  return ExceptionalKind::Other;
}

}  // namespace pd
