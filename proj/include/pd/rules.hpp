#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "pd/coloring.hpp"
#include "pd/errors.hpp"
#include "pd/graph.hpp"
#include "pd/subdivision.hpp"

namespace pd {

// Selects an existing color class at program-execution time. Programs are
// built while matching, before the reduced graph's coloring exists, so a
// class is named by a structural role instead of a color id.
struct ColorSel {
  enum class Kind {
    Fresh,   // the index-th color introduced by this program
    EndsAt,  // the skip-th class (by ascending color) with an endpoint at vertex
    OnEdge,  // the class currently covering edge
  };
  Kind kind = Kind::Fresh;
  int index = 0;
  int vertex = -1;
  int skip = 0;
  Edge edge{-1, -1};

  static ColorSel fresh(int index) {
    ColorSel s;
    s.kind = Kind::Fresh;
    s.index = index;
    return s;
  }
  static ColorSel ends_at(int vertex, int skip = 0) {
    ColorSel s;
    s.kind = Kind::EndsAt;
    s.vertex = vertex;
    s.skip = skip;
    return s;
  }
  static ColorSel on_edge(int u, int v) {
    ColorSel s;
    s.kind = Kind::OnEdge;
    s.edge = mk_edge(u, v);
    return s;
  }
  std::string describe() const;
};

// One recoloring primitive. The program interpreter executes steps in order
// on a working coloring that may temporarily cover edges added by the
// reduction; the final coloring must cover exactly the host graph's edges.
struct ProgramStep {
  enum class Kind {
    AssignNewColor,  // fresh color over edges (they must form a path when done)
    Deviate,         // replace edge in sel's class by the section's edges
    Extend,          // grow sel's class endpoint over edges, in order
    SplitColor,      // cut sel's class at an interior vertex; the tail gets a fresh color
    RecolorEdge,     // move edge from its current class into sel's class
  };
  Kind kind = Kind::AssignNewColor;
  ColorSel sel;
  Edge edge{-1, -1};
  int vertex = -1;
  std::vector<int> section;
  std::vector<Edge> edges;

  static ProgramStep assign_new(std::vector<Edge> es);
  static ProgramStep deviate(ColorSel sel, Edge removed, std::vector<int> section);
  static ProgramStep extend(ColorSel sel, std::vector<Edge> es);
  static ProgramStep split(ColorSel sel, int at_vertex);
  static ProgramStep move_edge(Edge e, ColorSel into);
  std::string describe() const;
};

// A recoloring case: one ordered list of steps, tried as a unit.
struct ProgramVariant {
  std::vector<ProgramStep> steps;
  std::string note;
};

// Variants are attempted in order against the actual pre-coloring; the first
// one that executes cleanly and passes verification wins. Rules whose case
// analysis depends on pre-coloring facts (endpoint positions, class shapes)
// list one variant per case.
struct RecoloringProgram {
  std::vector<ProgramVariant> variants;
  // True when the variants come from a bounded search rather than a fixed
  // case list; exhaustion then reports UnmatchedCase instead of a bug.
  bool searched = false;
};

// A matched reduction: which rule fired, the role->vertex binding, the edit
// list, and the recoloring program. budget is the number of new colors the
// recoloring may introduce, always half the vertices removed, rounded down.
struct RuleMatch {
  std::string rule_id;
  std::map<std::string, int> binding;
  std::vector<int> removed;
  std::vector<Edge> add_edges;
  std::vector<Edge> remove_edges;
  int budget = 0;
  RecoloringProgram program;
  std::string transcript;
};

struct Applied {
  Graph reduced;
  std::vector<int> old_of_new;  // reduced vertex id -> host vertex id
};

// Performs the match's edits on g: removes remove_edges, adds add_edges,
// deletes the removed vertices. Asserts the result stays planar.
Applied apply_rule(const Graph& g, const RuleMatch& m);

// Lifts pc (a path coloring of applied.reduced) back to g and runs the
// match's recoloring program. The result colors every edge of g exactly
// once, passes verify_path_coloring (cycles tolerated only when
// allow_cycles), and uses at most pc.color_count() + m.budget colors.
// Throws RecoloringInvalid on a broken fixed program, UnmatchedCase when a
// searched program runs out of variants.
EdgeColoring recolor(const Graph& g, const RuleMatch& m, const Applied& applied,
                     const EdgeColoring& pc, bool allow_cycles = false);

// Colors applied.reduced component by component: triangles get a single
// cycle class, near-complete five-vertex graphs a path plus a cycle, and
// every other component is colored by component_pc. Then recolors g and
// merges each cycle away. The exceptional components are tried under all
// their cycle-containing colorings before giving up (UnmatchedCase).
using ComponentColoring = std::function<EdgeColoring(const Graph&)>;
EdgeColoring safety_recolor(const Graph& g, const RuleMatch& m, const Applied& applied,
                            const ComponentColoring& component_pc);

// Walks the two-vertex case tree: branches on the number of common remaining
// neighbors, degree-2 layout, adjacency and parities, and emits the leaf
// rule's match, or a composite match built from one end tactic per vertex
// joined by a shortest path. Throws UnmatchedCase with the branch transcript
// when no leaf fits.
RuleMatch match_ci_rule(const Graph& g, int u1, int u2);

// Builds the four-vertex composite: assigns each root a pattern compatible
// with the others, solves the two-coloring constraints, and emits the match
// whose program seeds both subdivision colors and resolves every pattern.
RuleMatch select_cii_composite(const Graph& g, const std::array<int, 4>& family,
                               const Subdivision& s, const ProblemReport& report);

}  // namespace pd
