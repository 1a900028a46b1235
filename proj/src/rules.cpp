#include "pd/rules.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <sstream>

#include "pd/merge.hpp"
#include "pd/oracle.hpp"

namespace pd {

namespace {

std::string edge_str(const Edge& e) {
  return std::to_string(e.first) + "-" + std::to_string(e.second);
}

// Internal control-flow: a variant that cannot be executed on the present
// pre-coloring. The caller falls through to the next variant.
struct StepFailure {
  std::string step;
  std::string witness;
};

class Interpreter {
public:
  Interpreter(const Graph& g, EdgeColoring start, int first_fresh)
      : g_(g), work_(std::move(start)), next_color_(first_fresh) {}

  void run(const ProgramVariant& variant) {
    for (const auto& step : variant.steps) exec(step);
  }

  const EdgeColoring& coloring() const { return work_; }
  int fresh_count() const { return static_cast<int>(fresh_.size()); }

private:
  void exec(const ProgramStep& s) {
    switch (s.kind) {
      case ProgramStep::Kind::AssignNewColor: return do_assign(s);
      case ProgramStep::Kind::Deviate: return do_deviate(s);
      case ProgramStep::Kind::Extend: return do_extend(s);
      case ProgramStep::Kind::SplitColor: return do_split(s);
      case ProgramStep::Kind::RecolorEdge: return do_move(s);
    }
  }

  [[noreturn]] void fail(const ProgramStep& s, const std::string& why) {
    throw StepFailure{s.describe(), why};
  }

  void require_host_edge(const ProgramStep& s, const Edge& e) {
    if (!g_.has_edge(e.first, e.second)) fail(s, "no edge " + edge_str(e));
  }

  int resolve(const ProgramStep& s, const ColorSel& sel) {
    switch (sel.kind) {
      case ColorSel::Kind::Fresh:
        if (sel.index < 0 || sel.index >= static_cast<int>(fresh_.size()))
          fail(s, "fresh color " + std::to_string(sel.index) + " not introduced yet");
        return fresh_[sel.index];
      case ColorSel::Kind::OnEdge: {
        auto c = work_.get(sel.edge);
        if (!c) fail(s, "edge " + edge_str(sel.edge) + " is uncolored");
        return *c;
      }
      case ColorSel::Kind::EndsAt: {
        int seen = 0;
        for (const auto& [color, edges] : by_color()) {
          auto shape = classify_class(edges);
          if (shape.kind != ClassKind::Path) continue;
          if (shape.endpoints[0] != sel.vertex && shape.endpoints[1] != sel.vertex) continue;
          if (seen == sel.skip) return color;
          seen++;
        }
        fail(s, "no class #" + std::to_string(sel.skip) + " ending at vertex " +
                    std::to_string(sel.vertex));
      }
    }
    fail(s, "bad selector");
  }

  std::map<int, std::vector<Edge>> by_color() const {
    std::map<int, std::vector<Edge>> out;
    for (const auto& [e, c] : work_.entries()) out[c].push_back(e);
    return out;
  }

  ClassKind shape_of(const ProgramStep& s, int color) {
    auto edges = work_.class_edges(color);
    if (edges.empty()) return ClassKind::Path;  // vacuous
    auto shape = classify_class(edges);
    if (shape.kind == ClassKind::Invalid) fail(s, "class " + std::to_string(color) + " " + shape.why);
    return shape.kind;
  }

  void do_assign(const ProgramStep& s) {
    if (s.edges.empty()) fail(s, "empty edge list");
    int c = next_color_++;
    fresh_.push_back(c);
    for (const auto& e : s.edges) {
      require_host_edge(s, e);
      if (work_.get(e)) fail(s, "edge " + edge_str(e) + " already colored");
      work_.set(e, c);
    }
    if (classify_class(work_.class_edges(c)).kind != ClassKind::Path)
      fail(s, "new color does not induce a path");
  }

  void do_deviate(const ProgramStep& s) {
    int c = resolve(s, s.sel);
    ClassKind before = shape_of(s, c);
    for (size_t i = 0; i + 1 < s.section.size(); i++) {
      Edge e = mk_edge(s.section[i], s.section[i + 1]);
      require_host_edge(s, e);
      if (work_.get(e)) fail(s, "section edge " + edge_str(e) + " already colored");
    }
    try {
      work_ = apply_deviation(work_, c, s.edge, s.section);
    } catch (const std::runtime_error& ex) {
      fail(s, ex.what());
    }
    ClassKind after = shape_of(s, c);
    if (after == ClassKind::Cycle && before != ClassKind::Cycle)
      fail(s, "deviation closed a cycle");
  }

  void do_extend(const ProgramStep& s) {
    int c = resolve(s, s.sel);
    for (const auto& e : s.edges) require_host_edge(s, e);
    try {
      work_ = apply_extension(work_, c, s.edges);
    } catch (const std::runtime_error& ex) {
      fail(s, ex.what());
    }
  }

  void do_split(const ProgramStep& s) {
    int c = resolve(s, s.sel);
    auto edges = work_.class_edges(c);
    auto shape = classify_class(edges);
    if (shape.kind != ClassKind::Path) fail(s, "split target is not a path");
    const auto& seq = shape.vertex_sequence;
    int at = -1;
    for (size_t i = 1; i + 1 < seq.size(); i++) {
      if (seq[i] == s.vertex) {
        at = static_cast<int>(i);
        break;
      }
    }
    if (at < 0) fail(s, "vertex " + std::to_string(s.vertex) + " is not interior to the class");
    int f = next_color_++;
    fresh_.push_back(f);
    for (size_t i = at; i + 1 < seq.size(); i++) work_.set(seq[i], seq[i + 1], f);
  }

  void do_move(const ProgramStep& s) {
    int into = resolve(s, s.sel);
    auto from = work_.get(s.edge);
    if (!from) fail(s, "edge " + edge_str(s.edge) + " is uncolored");
    if (*from == into) fail(s, "edge already carries the target color");
    ClassKind before = shape_of(s, into);
    work_.set(s.edge, into);
    if (shape_of(s, into) == ClassKind::Cycle && before != ClassKind::Cycle)
      fail(s, "move closed a cycle");
    shape_of(s, *from);  // throws via fail() when the donor class is broken
  }

  const Graph& g_;
  EdgeColoring work_;
  int next_color_;
  std::vector<int> fresh_;
};

// Collects per-component colorings of every exceptional component: a lone
// triangle has a single cycle coloring; the five-vertex near-complete graph
// is split into a spanning cycle plus a path in every possible way, so the
// caller can pick the split that survives recoloring.
std::vector<EdgeColoring> exceptional_colorings(const Graph& comp, ExceptionalKind kind) {
  std::vector<EdgeColoring> out;
  if (kind == ExceptionalKind::K3) {
    EdgeColoring c;
    for (auto [u, v] : comp.edges()) c.set(u, v, 0);
    out.push_back(c);
    return out;
  }
  int m = comp.m();
  for (unsigned mask = 1; mask + 1 < (1u << m); ++mask) {
    std::vector<Edge> cyc, path;
    for (int i = 0; i < m; i++) {
      auto [u, v] = comp.edge(i);
      (mask >> i & 1 ? cyc : path).push_back(mk_edge(u, v));
    }
    if (classify_class(cyc).kind != ClassKind::Cycle) continue;
    if (classify_class(path).kind != ClassKind::Path) continue;
    EdgeColoring c;
    for (const auto& e : cyc) c.set(e, 0);
    for (const auto& e : path) c.set(e, 1);
    out.push_back(c);
  }
  return out;
}

bool has_cycle_class(const EdgeColoring& c) {
  for (const auto& edges : c.classes())
    if (!edges.empty() && classify_class(edges).kind == ClassKind::Cycle) return true;
  return false;
}

}  // namespace

std::string ColorSel::describe() const {
  switch (kind) {
    case Kind::Fresh: return "fresh#" + std::to_string(index);
    case Kind::EndsAt:
      return "ends@" + std::to_string(vertex) +
             (skip ? "+" + std::to_string(skip) : std::string());
    case Kind::OnEdge: return "on " + edge_str(edge);
  }
  return "?";
}

ProgramStep ProgramStep::assign_new(std::vector<Edge> es) {
  ProgramStep s;
  s.kind = Kind::AssignNewColor;
  s.edges = std::move(es);
  return s;
}
ProgramStep ProgramStep::deviate(ColorSel sel, Edge removed, std::vector<int> section) {
  ProgramStep s;
  s.kind = Kind::Deviate;
  s.sel = sel;
  s.edge = removed;
  s.section = std::move(section);
  return s;
}
ProgramStep ProgramStep::extend(ColorSel sel, std::vector<Edge> es) {
  ProgramStep s;
  s.kind = Kind::Extend;
  s.sel = sel;
  s.edges = std::move(es);
  return s;
}
ProgramStep ProgramStep::split(ColorSel sel, int at_vertex) {
  ProgramStep s;
  s.kind = Kind::SplitColor;
  s.sel = sel;
  s.vertex = at_vertex;
  return s;
}
ProgramStep ProgramStep::move_edge(Edge e, ColorSel into) {
  ProgramStep s;
  s.kind = Kind::RecolorEdge;
  s.sel = into;
  s.edge = e;
  return s;
}

std::string ProgramStep::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::AssignNewColor:
      os << "new color over";
      for (const auto& e : edges) os << " " << edge_str(e);
      break;
    case Kind::Deviate:
      os << "deviate " << sel.describe() << " off " << edge_str(edge) << " via";
      for (int v : section) os << " " << v;
      break;
    case Kind::Extend:
      os << "extend " << sel.describe() << " over";
      for (const auto& e : edges) os << " " << edge_str(e);
      break;
    case Kind::SplitColor:
      os << "split " << sel.describe() << " at " << vertex;
      break;
    case Kind::RecolorEdge:
      os << "move " << edge_str(edge) << " into " << sel.describe();
      break;
  }
  return os.str();
}

Applied apply_rule(const Graph& g, const RuleMatch& m) {
  if (m.budget != static_cast<int>(m.removed.size()) / 2)
    throw PreconditionViolated(m.rule_id + ": budget " + std::to_string(m.budget) +
                               " does not match " + std::to_string(m.removed.size()) +
                               " removed vertices");
  Graph h = g;
  for (const auto& e : m.remove_edges) {
    if (!h.has_edge(e.first, e.second))
      throw PreconditionViolated(m.rule_id + ": cannot remove absent edge " + edge_str(e));
    h = h.remove_edge(e.first, e.second);
  }
  for (const auto& e : m.add_edges) {
    if (h.has_edge(e.first, e.second))
      throw PreconditionViolated(m.rule_id + ": cannot add existing edge " + edge_str(e));
    h = h.add_edge(e.first, e.second);
  }
  Applied out;
  h = h.remove_vertices(m.removed, &out.old_of_new);
  if (!is_planar(h)) throw PlanarityLost(m.rule_id);
  out.reduced = std::move(h);
  return out;
}

EdgeColoring recolor(const Graph& g, const RuleMatch& m, const Applied& applied,
                     const EdgeColoring& pc, bool allow_cycles) {
  if (!verify_path_coloring(applied.reduced, pc, true).ok)
    throw PreconditionViolated(m.rule_id + ": pre-coloring invalid on the reduced graph");

  EdgeColoring lifted;
  for (const auto& [e, c] : pc.entries())
    lifted.set(applied.old_of_new[e.first], applied.old_of_new[e.second], c);
  const int base = pc.color_count();

  std::string last_step = "(none)", last_witness = "no variants";
  for (const auto& variant : m.program.variants) {
    Interpreter interp(g, lifted, base);
    try {
      interp.run(variant);
    } catch (const StepFailure& f) {
      last_step = (variant.note.empty() ? "" : variant.note + ": ") + f.step;
      last_witness = f.witness;
      continue;
    }
    const EdgeColoring& got = interp.coloring();
    bool clean = true;
    for (const auto& [e, c] : got.entries()) {
      if (!g.has_edge(e.first, e.second)) {
        last_step = variant.note;
        last_witness = "added edge " + edge_str(e) + " still colored";
        clean = false;
        break;
      }
    }
    if (!clean) continue;
    if (static_cast<int>(got.size()) != g.m()) {
      last_step = variant.note;
      last_witness = std::to_string(g.m() - static_cast<int>(got.size())) + " edges left uncolored";
      continue;
    }
    if (got.color_count() > base + m.budget) {
      last_step = variant.note;
      last_witness = "uses " + std::to_string(got.color_count() - base) + " new colors, budget " +
                     std::to_string(m.budget);
      continue;
    }
    auto report = verify_path_coloring(g, got, allow_cycles);
    if (!report.ok) {
      last_step = variant.note;
      last_witness = report.violations.front().rule;
      continue;
    }
    return got.normalized();
  }
  std::string msg = m.rule_id + ": " + last_step + ": " + last_witness;
  if (m.program.searched) throw UnmatchedCase(msg);
  throw RecoloringInvalid(m.rule_id + ": " + last_step, last_witness);
}

EdgeColoring safety_recolor(const Graph& g, const RuleMatch& m, const Applied& applied,
                            const ComponentColoring& component_pc) {
  const Graph& reduced = applied.reduced;

  // A reduction that shrinks the whole graph to an exceptional one cannot be
  // repaired through cycle elimination (there is no spare path to merge
  // with), so those hosts are small enough to color directly.
  if (is_connected(reduced) && reduced.n() > 0 &&
      classify_exception(reduced) != ExceptionalKind::Other && m.rule_id == "suppress2") {
    auto res = min_path_decomposition(g);
    if (res.min_paths <= 0 || res.timed_out)
      throw UnmatchedCase(m.rule_id + ": direct coloring unavailable");
    return res.witness.normalized();
  }

  struct Part {
    Graph graph;
    std::vector<int> old_of_new;
    std::vector<EdgeColoring> options;
  };
  std::vector<Part> parts;
  bool any_exceptional = false;
  for (const auto& comp : connected_components(reduced)) {
    Part p;
    p.graph = reduced.induced(comp, &p.old_of_new);
    auto kind = p.graph.n() >= 3 ? classify_exception(p.graph) : ExceptionalKind::Other;
    if (kind == ExceptionalKind::Other) {
      p.options.push_back(component_pc(p.graph));
    } else {
      any_exceptional = true;
      p.options = exceptional_colorings(p.graph, kind);
    }
    parts.push_back(std::move(p));
  }

  auto combine = [&](const std::vector<size_t>& pick) {
    EdgeColoring combined;
    int offset = 0;
    for (size_t i = 0; i < parts.size(); i++) {
      const EdgeColoring& c = parts[i].options[pick[i]];
      for (const auto& [e, col] : c.entries())
        combined.set(parts[i].old_of_new[e.first], parts[i].old_of_new[e.second], col + offset);
      offset += c.color_count();
    }
    return combined;
  };

  if (!any_exceptional) {
    std::vector<size_t> pick(parts.size(), 0);
    return recolor(g, m, applied, combine(pick), false);
  }

  std::vector<size_t> pick(parts.size(), 0);
  int tried = 0;
  std::string last = "no candidate colorings";
  for (;;) {
    if (++tried > 256) break;
    EdgeColoring combined = combine(pick);
    try {
      EdgeColoring out = recolor(g, m, applied, combined, true);
      if (has_cycle_class(out)) {
        auto fixed = eliminate_cycles(g, out);
        if (!fixed.ok) throw UnmatchedCase(m.rule_id + ": " + fixed.failure);
        out = fixed.coloring;
      }
      auto report = verify_path_coloring(g, out, false);
      if (!report.ok) throw UnmatchedCase(m.rule_id + ": cycle elimination left a violation");
      return out.normalized();
    } catch (const UnmatchedCase& u) {
      last = u.transcript;
    } catch (const RecoloringInvalid& r) {
      last = r.what();
    }
    size_t i = 0;
    while (i < parts.size() && pick[i] + 1 >= parts[i].options.size()) pick[i++] = 0;
    if (i == parts.size()) break;
    pick[i]++;
  }
  throw UnmatchedCase(m.rule_id + ": exceptional components defeated recoloring: " + last);
}

}  // namespace pd
