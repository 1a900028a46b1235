#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pd/graph.hpp"

namespace pd {

using Edge = std::pair<int, int>;  // normalized u < v

inline Edge mk_edge(int u, int v) { return u < v ? Edge{u, v} : Edge{v, u}; }

struct ColoringDomainMismatch : std::runtime_error {
  ColoringDomainMismatch() : std::runtime_error("coloring domain differs from edge set") {}
};
struct NotOnClass : std::runtime_error {
  NotOnClass() : std::runtime_error("edge does not carry the selected color") {}
};
struct BadSection : std::runtime_error {
  BadSection() : std::runtime_error("section endpoints do not match the removed edge") {}
};
struct NotAnEndpoint : std::runtime_error {
  NotAnEndpoint() : std::runtime_error("extension does not start at a class endpoint") {}
};
struct CreatesBranch : std::runtime_error {
  CreatesBranch() : std::runtime_error("extension revisits the class or branches") {}
};
struct ShapeError : std::runtime_error {
  explicit ShapeError(const std::string& w) : std::runtime_error("shape error: " + w) {}
};

// Edge coloring represented as a map so it can travel between a graph and
// its reductions. Color ids are small integers, contiguous after normalize().
class EdgeColoring {
public:
  EdgeColoring() = default;

  void set(const Edge& e, int color) { color_of_[e] = color; }
  void set(int u, int v, int color) { set(mk_edge(u, v), color); }
  void erase(const Edge& e) { color_of_.erase(e); }
  void erase(int u, int v) { erase(mk_edge(u, v)); }
  std::optional<int> get(const Edge& e) const {
    auto it = color_of_.find(e);
    if (it == color_of_.end()) return std::nullopt;
    return it->second;
  }
  std::optional<int> get(int u, int v) const { return get(mk_edge(u, v)); }
  const std::map<Edge, int>& entries() const { return color_of_; }
  bool empty() const { return color_of_.empty(); }
  size_t size() const { return color_of_.size(); }

  int color_count() const;
  std::vector<std::vector<Edge>> classes() const;  // indexed by color id
  std::vector<Edge> class_edges(int color) const;

  // Renumbers colors to 0..k-1 in order of first appearance (edge order).
  EdgeColoring normalized() const;
  // Shifts every color id by delta (for disjoint unions).
  EdgeColoring shifted(int delta) const;

  bool operator==(const EdgeColoring& o) const { return color_of_ == o.color_of_; }

private:
  std::map<Edge, int> color_of_;
};

enum class ClassKind { Path, Cycle, Invalid };

struct ColorClassShape {
  ClassKind kind = ClassKind::Invalid;
  std::vector<int> endpoints;        // the two path ends, ascending; empty otherwise
  std::vector<int> vertex_sequence;  // Path or Cycle traversal
  std::string why;                         // when Invalid
};

ColorClassShape classify_class(const std::vector<Edge>& edges);

struct Violation {
  std::string rule;
  std::vector<int> vertices;
  std::vector<Edge> edges;
};

struct VerifyReport {
  bool ok = true;
  std::vector<Violation> violations;
  int color_count = 0;
  int budget = 0;

  void fail(std::string rule, std::vector<int> vs = {}, std::vector<Edge> es = {}) {
    ok = false;
    violations.push_back({std::move(rule), std::move(vs), std::move(es)});
  }
};

VerifyReport verify_path_coloring(const Graph& g, const EdgeColoring& c,
                                  bool allow_cycles = false);
VerifyReport verify_good_coloring(const Graph& g, const EdgeColoring& c,
                                  bool relaxed_budget = false);

// Recoloring primitives. Both return a new coloring and do not revalidate the
// global path property (the caller's verifier does).
EdgeColoring apply_deviation(const EdgeColoring& c, int color, Edge removed_edge,
                             const std::vector<int>& section);
EdgeColoring apply_extension(const EdgeColoring& c, int color, const std::vector<Edge>& new_edges);

bool is_exceptional(const std::vector<Edge>& cycle_edges, const std::vector<Edge>& path_edges);

// Decomposition JSON: {"n": int, "paths": [[v0,v1,...],...], "relaxed_budget": bool}
std::string coloring_to_json(const Graph& g, const EdgeColoring& c, bool relaxed_budget);
struct ParsedDecomposition {
  int n = 0;
  std::vector<std::vector<int>> paths;
  bool relaxed_budget = false;
};
ParsedDecomposition decomposition_from_json(const std::string& text);
// Rebuilds an EdgeColoring from path vertex sequences, checking edges exist.
EdgeColoring coloring_from_paths(const Graph& g, const std::vector<std::vector<int>>& paths);

}  // namespace pd
