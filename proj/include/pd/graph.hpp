#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pd {

struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_, const std::string& reason)
      : std::runtime_error("parse error at line " + std::to_string(line_) + ": " + reason),
        line(line_) {}
};

struct DuplicateEdge : std::runtime_error {
  int u, v;
  DuplicateEdge(int u_, int v_)
      : std::runtime_error("duplicate edge " + std::to_string(u_) + " " + std::to_string(v_)),
        u(u_), v(v_) {}
};

struct Loop : std::runtime_error {
  int v;
  explicit Loop(int v_) : std::runtime_error("loop at vertex " + std::to_string(v_)), v(v_) {}
};

// Simple undirected graph, dense 0-based vertex ids, immutable after
// construction. Edge ids are indices into the sorted edge vector.
class Graph {
public:
  Graph() = default;
  explicit Graph(int n) : n_(n), adj_(n) {}

  // Validates, sorts and indexes the edge set. Throws Loop / DuplicateEdge.
  static Graph from_edges(int n, std::vector<std::pair<int, int>> es);

  int n() const { return n_; }
  int m() const { return static_cast<int>(edges_.size()); }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  std::pair<int, int> edge(int id) const { return edges_[id]; }
  const std::vector<int>& neighbors(int v) const { return adj_[v]; }
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }
  bool has_edge(int u, int v) const { return edge_id(u, v) >= 0; }
  int edge_id(int u, int v) const;  // -1 if absent

  Graph add_edge(int u, int v) const;
  Graph remove_edge(int u, int v) const;
  // Drops the given vertices (and incident edges) and relabels densely,
  // preserving relative order. old_of_new[new_id] = old_id.
  Graph remove_vertices(std::vector<int> vs, std::vector<int>* old_of_new = nullptr) const;
  Graph induced(std::vector<int> keep, std::vector<int>* old_of_new = nullptr) const;

  bool operator==(const Graph& o) const { return n_ == o.n_ && edges_ == o.edges_; }

private:
  int n_ = 0;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> adj_;
};

// Accepts an edge list ("u v" per line, '#' comments) or a graph6 line.
Graph parse_graph(const std::string& text);
Graph parse_edge_list(const std::string& text);
Graph parse_graph6(const std::string& line);
std::string to_graph6(const Graph& g);
std::string to_edge_list(const Graph& g);
std::string to_dot(const Graph& g);

bool is_planar(const Graph& g);
bool is_connected(const Graph& g);
// Partition of 0..n-1 into maximal connected sets, each sorted, ordered by
// smallest member.
std::vector<std::vector<int>> connected_components(const Graph& g);

struct VertexCut {
  std::vector<int> vertices;            // sorted
  std::pair<int, int> separated_witness;
};

// All vertex subsets of size <= k whose removal disconnects g (g connected).
std::vector<VertexCut> enumerate_cuts(const Graph& g, int k);

enum class ExceptionalKind { K3, K5minus, Other };
ExceptionalKind classify_exception(const Graph& g);

}  // namespace pd
