#include <algorithm>
#include <optional>
#include <queue>
#include <set>
#include <sstream>
#include <vector>

#include "pd/rules.hpp"

namespace pd {

namespace {

using Steps = std::vector<ProgramStep>;

Edge E(int a, int b) { return mk_edge(a, b); }

ProgramVariant variant(std::string note, Steps steps) {
  ProgramVariant v;
  v.note = std::move(note);
  v.steps = std::move(steps);
  return v;
}

std::vector<int> common_neighbors(const Graph& g, int a, int b) {
  std::vector<int> out;
  const auto& na = g.neighbors(a);
  const auto& nb = g.neighbors(b);
  std::set_intersection(na.begin(), na.end(), nb.begin(), nb.end(), std::back_inserter(out));
  out.erase(std::remove_if(out.begin(), out.end(), [&](int v) { return v == a || v == b; }),
            out.end());
  return out;
}

std::vector<int> shortest_path_lex(const Graph& g, int from, int to) {
  std::vector<int> parent(g.n(), -1), dist(g.n(), -1);
  std::queue<int> q;
  dist[from] = 0;
  q.push(from);
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int w : g.neighbors(v)) {
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        parent[w] = v;
        q.push(w);
      } else if (dist[w] == dist[v] + 1 && parent[w] > v) {
        parent[w] = v;
      }
    }
  }
  if (dist[to] < 0) throw PreconditionViolated("vertices in different components");
  std::vector<int> path;
  for (int v = to; v != -1; v = parent[v]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

// Remaining neighbors of special u once w is designated as its path edge.
std::vector<int> remaining_of(const Graph& g, int u, int w, int other_special) {
  std::vector<int> out;
  for (int x : g.neighbors(u))
    if (x != w && x != other_special) out.push_back(x);
  return out;
}

RuleMatch base(std::string id, std::vector<int> removed) {
  RuleMatch m;
  m.rule_id = std::move(id);
  std::sort(removed.begin(), removed.end());
  m.removed = std::move(removed);
  m.budget = static_cast<int>(m.removed.size()) / 2;
  return m;
}

// ---------------------------------------------------------------------------
// Leaf rules around one or two low-degree vertices. Notation throughout: the
// binding names follow the structural roles (specials u1/u2, shared neighbor
// v, path middle w, side neighbors a/b), and every program lists its
// fallback case variants in decreasing order of structural likelihood.
// ---------------------------------------------------------------------------

// Degree-2 vertex with non-adjacent neighbors: splice it out.
RuleMatch build_suppress2(const Graph& g, int u) {
  int a = g.neighbors(u)[0], b = g.neighbors(u)[1];
  RuleMatch m = base("suppress2", {u});
  m.binding = {{"u", u}, {"a", a}, {"b", b}};
  m.add_edges = {E(a, b)};
  m.program.variants = {
      variant("route the bridging color through the removed vertex",
              {ProgramStep::deviate(ColorSel::on_edge(a, b), E(a, b), {a, u, b})}),
  };
  (void)g;
  return m;
}

// Two adjacent degree-2 vertices sharing their outer neighbor v.
RuleMatch build_d2d2_tri(const Graph& g, int u1, int u2, int v) {
  RuleMatch m = base("d2d2_tri", {u1, u2});
  m.binding = {{"u1", u1}, {"u2", u2}, {"v", v}};
  auto& vars = m.program.variants;
  int dv = g.degree(v) - 2;  // degree of v once both specials leave
  auto odd_style = [&](int first, int second) {
    for (int skip = 0; skip < 3; skip++)
      vars.push_back(variant(
          "grow the class ending at the shared neighbor around the pair",
          {ProgramStep::extend(ColorSel::ends_at(v, skip), {E(v, first), E(first, second)}),
           ProgramStep::assign_new({E(second, v)})}));
  };
  auto even_ends_style = [&](int first, int second) {
    vars.push_back(variant(
        "use two classes ending at the shared neighbor",
        {ProgramStep::extend(ColorSel::ends_at(v, 0), {E(v, first), E(first, second)}),
         ProgramStep::extend(ColorSel::ends_at(v, 0), {E(v, second)})}));
  };
  auto even_split_style = [&]() {
    for (int x : g.neighbors(v)) {
      if (x == u1 || x == u2) continue;
      vars.push_back(variant(
          "cut a class passing through the shared neighbor",
          {ProgramStep::split(ColorSel::on_edge(v, x), v),
           ProgramStep::extend(ColorSel::ends_at(v, 0), {E(v, u2)}),
           ProgramStep::extend(ColorSel::ends_at(v, 0), {E(v, u1), E(u1, u2)})}));
      vars.push_back(variant(
          "cut a class passing through the shared neighbor, mirrored",
          {ProgramStep::split(ColorSel::on_edge(v, x), v),
           ProgramStep::extend(ColorSel::ends_at(v, 0), {E(v, u1), E(u1, u2)}),
           ProgramStep::extend(ColorSel::ends_at(v, 0), {E(v, u2)})}));
    }
  };
  if (dv % 2 == 1) {
    odd_style(u1, u2);
    odd_style(u2, u1);
    even_ends_style(u1, u2);
    even_split_style();
  } else {
    even_ends_style(u1, u2);
    even_ends_style(u2, u1);
    even_split_style();
    odd_style(u1, u2);
  }
  m.program.searched = true;
  return m;
}

// Degree-2 u1 adjacent to u2 of degree 3 or 4; every remaining neighbor of
// u2 is adjacent to the shared neighbor v.
RuleMatch build_d2dk_adj(const Graph& g, int u1, int u2, int v) {
  auto others = remaining_of(g, u2, v, u1);  // u2's neighbors besides u1, v
  RuleMatch m = base("d2dk_adj", {u1, u2});
  m.binding = {{"u1", u1}, {"u2", u2}, {"v", v}};
  for (size_t i = 0; i < others.size(); i++)
    m.binding["v" + std::to_string(i + 1)] = others[i];
  auto& vars = m.program.variants;
  for (size_t i = 0; i < others.size(); i++) {
    int v1 = others[i];
    int v2 = others.size() == 2 ? others[1 - i] : -1;
    std::vector<Edge> p;
    if (v2 >= 0) p.push_back(E(v2, u2));
    p.insert(p.end(), {E(u2, u1), E(u1, v), E(v, v1)});
    vars.push_back(variant(
        "bend the outer class through the high-degree vertex",
        {ProgramStep::deviate(ColorSel::on_edge(v, v1), E(v, v1), {v, u2, v1}),
         ProgramStep::assign_new(std::move(p))}));
  }
  (void)g;
  return m;
}

// Degree-2 u1 at distance two from u2 (degree 3 or 4), middle w adjacent to
// the shared neighbor v; u2's other remaining neighbors are adjacent to v.
RuleMatch build_d2dk_mid(const Graph& g, int u1, int u2, int w, int v) {
  auto others = remaining_of(g, u2, w, u1);
  others.erase(std::remove(others.begin(), others.end(), v), others.end());
  RuleMatch m = base("d2dk_mid", {u1, u2});
  m.binding = {{"u1", u1}, {"u2", u2}, {"w", w}, {"v", v}};
  for (size_t i = 0; i < others.size(); i++)
    m.binding["v" + std::to_string(i + 1)] = others[i];
  auto& vars = m.program.variants;
  for (size_t i = 0; i < others.size(); i++) {
    int v1 = others[i];
    int v2 = others.size() == 2 ? others[1 - i] : -1;
    std::vector<Edge> p;
    if (v2 >= 0) p.push_back(E(v2, u2));
    p.insert(p.end(), {E(u2, w), E(w, v), E(v, v1)});
    vars.push_back(variant(
        "bend the middle edge and the outer edge through the specials",
        {ProgramStep::deviate(ColorSel::on_edge(v, w), E(v, w), {v, u1, w}),
         ProgramStep::deviate(ColorSel::on_edge(v, v1), E(v, v1), {v, u2, v1}),
         ProgramStep::assign_new(std::move(p))}));
  }
  return m;
}

// Two degree-2 vertices with the same two neighbors v, w; vw an edge and at
// least one of v, w odd.
RuleMatch build_d2d2_mid_odd(const Graph& g, int u1, int u2, int v, int w) {
  RuleMatch m = base("d2d2_mid_odd", {u1, u2});
  m.binding = {{"u1", u1}, {"u2", u2}, {"v", v}, {"w", w}};
  auto& vars = m.program.variants;
  auto family = [&](int vv, int ww, int s1, int s2) {
    // vv odd: bend vw around s1, seed (s2, vv, ww), extend a class from ww.
    for (int skip = 0; skip < 3; skip++)
      vars.push_back(variant(
          "bend the base edge, seed around one special, extend to the other",
          {ProgramStep::deviate(ColorSel::on_edge(vv, ww), E(vv, ww), {vv, s1, ww}),
           ProgramStep::assign_new({E(s2, vv), E(vv, ww)}),
           ProgramStep::extend(ColorSel::ends_at(ww, skip), {E(ww, s2)})}));
  };
  bool w_odd = g.degree(w) % 2 == 1;
  bool v_odd = g.degree(v) % 2 == 1;
  if (w_odd) {
    family(v, w, u1, u2);
    family(v, w, u2, u1);
  }
  if (v_odd) {
    family(w, v, u1, u2);
    family(w, v, u2, u1);
  }
  m.program.searched = true;
  return m;
}

// Same shape with both v and w even.
RuleMatch build_d2d2_mid_even(const Graph& g, int u1, int u2, int v, int w) {
  RuleMatch m = base("d2d2_mid_even", {u1, u2});
  m.binding = {{"u1", u1}, {"u2", u2}, {"v", v}, {"w", w}};
  auto& vars = m.program.variants;
  auto ends_family = [&](int vv, int ww) {
    vars.push_back(variant(
        "route two classes ending at one base vertex around the pair",
        {ProgramStep::extend(ColorSel::ends_at(vv, 0), {E(vv, u1), E(u1, ww)}),
         ProgramStep::extend(ColorSel::ends_at(vv, 0), {E(vv, u2), E(u2, ww)})}));
  };
  auto split_family = [&](int vv, int ww) {
    for (int x : g.neighbors(vv)) {
      if (x == u1 || x == u2) continue;
      vars.push_back(variant(
          "cut a class through one base vertex, route both halves around",
          {ProgramStep::split(ColorSel::on_edge(vv, x), vv),
           ProgramStep::extend(ColorSel::ends_at(vv, 0), {E(vv, u1), E(u1, ww)}),
           ProgramStep::extend(ColorSel::ends_at(vv, 0), {E(vv, u2), E(u2, ww)})}));
    }
  };
  ends_family(v, w);
  ends_family(w, v);
  split_family(v, w);
  split_family(w, v);
  m.program.searched = true;
  return m;
}

// Adjacent degree-3 specials sharing v; ub's other neighbor vb has even
// degree in the host graph.
RuleMatch build_d3d3_tail_even(const Graph& g, int ua, int ub, int v, int va, int vb) {
  RuleMatch m = base("d3d3_tail_even", {ua, ub});
  m.binding = {{"u1", ua}, {"u2", ub}, {"v", v}, {"v1", va}, {"v2", vb}};
  auto& vars = m.program.variants;
  for (int skip = 0; skip < 3; skip++)
    vars.push_back(variant(
        "extend the class ending at the even neighbor across both specials",
        {ProgramStep::extend(ColorSel::ends_at(vb, skip), {E(vb, ub), E(ub, ua)}),
         ProgramStep::assign_new({E(va, ua), E(ua, v), E(v, ub)})}));
  (void)g;
  m.program.searched = true;
  return m;
}

// Adjacent specials sharing v with a non-edge between side neighbors a, b;
// extras a2/b2 are the degree-4 leftovers (-1 when absent).
RuleMatch build_dkdk_bridge(const Graph& g, int u1, int u2, int v, int a, int b, int a2, int b2) {
  RuleMatch m = base("dkdk_bridge", {u1, u2});
  m.binding = {{"u1", u1}, {"u2", u2}, {"v", v}, {"v1", a}, {"v2", b}};
  if (a2 >= 0) m.binding["v4"] = a2;
  if (b2 >= 0) m.binding["v3"] = b2;
  m.add_edges = {E(a, b)};
  std::vector<Edge> p;
  if (a2 >= 0) p.push_back(E(a2, u1));
  p.insert(p.end(), {E(u1, v), E(v, u2)});
  if (b2 >= 0) p.push_back(E(u2, b2));
  m.program.variants = {
      variant("bridge the side neighbors through both specials",
              {ProgramStep::deviate(ColorSel::on_edge(a, b), E(a, b), {a, u1, u2, b}),
               ProgramStep::assign_new(std::move(p))}),
  };
  (void)g;
  return m;
}

// Adjacent degree-3 specials, odd shared neighbor, odd adjacent side
// neighbors v1 ~ v2.
RuleMatch build_d3d3_odd_adj(const Graph& g, int u1, int u2, int v, int v1, int v2) {
  RuleMatch m = base("d3d3_odd_adj", {u1, u2});
  m.binding = {{"u1", u1}, {"u2", u2}, {"v", v}, {"v1", v1}, {"v2", v2}};
  m.remove_edges = {E(v1, v2)};
  auto& vars = m.program.variants;
  auto family = [&](int s1, int s2, int w1, int w2) {
    for (int skip1 = 0; skip1 < 2; skip1++)
      for (int skip2 = 0; skip2 < 2; skip2++)
        vars.push_back(variant(
            "seed around the pair, extend classes from the odd neighbors",
            {ProgramStep::assign_new({E(v, s1), E(s1, s2), E(s2, w2), E(w2, w1)}),
             ProgramStep::extend(ColorSel::ends_at(w1, skip1), {E(w1, s1)}),
             ProgramStep::extend(ColorSel::ends_at(v, skip2), {E(v, s2)})}));
  };
  family(u1, u2, v1, v2);
  family(u2, u1, v2, v1);
  m.program.searched = true;
  (void)g;
  return m;
}

// Adjacent degree-3 specials, even shared neighbor, odd side neighbors.
RuleMatch build_d3d3_even_common(const Graph& g, int u1, int u2, int v, int v1, int v2) {
  RuleMatch m = base("d3d3_even_common", {u1, u2});
  m.binding = {{"u1", u1}, {"u2", u2}, {"v", v}, {"v1", v1}, {"v2", v2}};
  auto& vars = m.program.variants;
  if (!g.has_edge(v1, v2)) {
    m.add_edges = {E(v1, v2)};
    vars.push_back(variant(
        "bridge the side neighbors, seed through the shared neighbor",
        {ProgramStep::deviate(ColorSel::on_edge(v1, v2), E(v1, v2), {v1, u1, u2, v2}),
         ProgramStep::assign_new({E(u1, v), E(v, u2)})}));
    return m;
  }
  m.remove_edges = {E(v1, v2)};
  // Dropping the side edge keeps both side vertices odd in the reduced
  // graph, so each is a guaranteed class endpoint there.
  auto sweep = [&](int s1, int s2, int w1, int w2) {
    for (int skip = 0; skip < 2; skip++)
      vars.push_back(variant(
          "thread the far side class across the pair, seed through the middle",
          {ProgramStep::extend(ColorSel::ends_at(w2, skip),
                               {E(w2, w1), E(w1, s1), E(s1, s2)}),
           ProgramStep::assign_new({E(w2, s2), E(s2, v), E(v, s1)})}));
  };
  auto pincer = [&](int s1, int s2, int w1, int w2) {
    for (int skip1 = 0; skip1 < 2; skip1++)
      for (int skip2 = 0; skip2 < 2; skip2++)
        vars.push_back(variant(
            "close the side edge from one end, sweep the other across",
            {ProgramStep::extend(ColorSel::ends_at(w1, skip1), {E(w1, w2)}),
             ProgramStep::extend(ColorSel::ends_at(w2, skip2), {E(w2, s2), E(s2, s1)}),
             ProgramStep::assign_new({E(w1, s1), E(s1, v), E(v, s2)})}));
  };
  auto threaded = [&](int s1, int s2, int w1, int w2) {
    for (int skip1 = 0; skip1 < 2; skip1++)
      for (int skip2 = 0; skip2 < 2; skip2++)
        vars.push_back(variant(
            "thread one side class across the pair, close the other side",
            {ProgramStep::extend(ColorSel::ends_at(w1, skip1),
                                 {E(w1, s1), E(s1, s2), E(s2, w2)}),
             ProgramStep::extend(ColorSel::ends_at(w2, skip2), {E(w2, w1)}),
             ProgramStep::assign_new({E(s1, v), E(v, s2)})}));
  };
  sweep(u1, u2, v1, v2);
  sweep(u2, u1, v2, v1);
  pincer(u1, u2, v1, v2);
  pincer(u2, u1, v2, v1);
  threaded(u1, u2, v1, v2);
  threaded(u2, u1, v2, v1);
  m.program.searched = true;
  return m;
}

// Specials at distance two with common neighbors v1, v2 adjacent, forming a
// separating pair; side neighbors v3/v4 (+extras when degree 4).
RuleMatch build_rx_sep(const Graph& g, int u1, int u2, int v1, int v2, int v3, int v4,
                       int v5, int v6) {
  RuleMatch m = base("rx_sep", {u1, u2});
  m.binding = {{"u1", u1}, {"u2", u2}, {"v1", v1}, {"v2", v2}, {"v3", v3}, {"v4", v4}};
  if (v5 >= 0) m.binding["v5"] = v5;
  if (v6 >= 0) m.binding["v6"] = v6;
  m.add_edges = {E(v3, v4)};
  auto& vars = m.program.variants;
  auto seed_edges = [&](int via) {
    std::vector<Edge> p;
    if (v5 >= 0) p.push_back(E(v5, u1));
    p.insert(p.end(), {E(u1, via), E(via, u2)});
    if (v6 >= 0) p.push_back(E(u2, v6));
    return p;
  };
  for (int via : {v1, v2}) {
    int other = via == v1 ? v2 : v1;
    // Straight replacement of the bridging edge by a section through both
    // specials and the common neighbor that stays off the bridged class.
    vars.push_back(variant(
        "reroute the bridged class through the pair",
        {ProgramStep::deviate(ColorSel::on_edge(v3, v4), E(v3, v4), {v3, u1, other, u2, v4}),
         ProgramStep::assign_new(seed_edges(via))}));
    // Near-complete reduced graphs need one edge handed over between the two
    // classes covering them before the reroute goes through.
    for (int skip = 0; skip < 2; skip++) {
      vars.push_back(variant(
          "reroute, then hand the far special's edge to a class ending there",
          {ProgramStep::deviate(ColorSel::on_edge(v3, v4), E(v3, v4), {v3, u1, other, u2, v4}),
           ProgramStep::assign_new(seed_edges(via)),
           ProgramStep::move_edge(E(u2, v4), ColorSel::ends_at(v4, skip))}));
      vars.push_back(variant(
          "reroute, then hand the near special's edge to a class ending there",
          {ProgramStep::deviate(ColorSel::on_edge(v3, v4), E(v3, v4), {v3, u1, other, u2, v4}),
           ProgramStep::assign_new(seed_edges(via)),
           ProgramStep::move_edge(E(u1, v3), ColorSel::ends_at(v3, skip))}));
    }
  }
  // When the off-section common sits on the bridged class, cut that class
  // at a bridgehead first; the cut supplies the one new color and the two
  // specials close onto the other common with extensions.
  for (int via : {v1, v2}) {
    int other = via == v1 ? v2 : v1;
    for (int cut : {v3, v4}) {
      for (int skip1 = 0; skip1 < 2; skip1++)
        for (int skip2 = 0; skip2 < 2; skip2++) {
          Steps steps = {
              ProgramStep::split(ColorSel::on_edge(v3, v4), cut),
              ProgramStep::deviate(ColorSel::on_edge(v3, v4), E(v3, v4), {v3, u1, via, u2, v4}),
              ProgramStep::extend(ColorSel::ends_at(other, skip1), {E(other, u1)}),
              ProgramStep::extend(ColorSel::ends_at(other, skip2), {E(other, u2)}),
          };
          if (v5 >= 0) steps.push_back(ProgramStep::extend(ColorSel::ends_at(v5, 0), {E(v5, u1)}));
          if (v6 >= 0) steps.push_back(ProgramStep::extend(ColorSel::ends_at(v6, 0), {E(v6, u2)}));
          vars.push_back(variant("cut at a bridgehead, reroute, close onto the far common",
                                 std::move(steps)));
        }
    }
  }
  (void)g;
  m.program.searched = true;
  return m;
}

// Distance-two specials whose two common neighbors are non-adjacent; every
// side neighbor is adjacent to both commons.
RuleMatch build_rx_open(const Graph& g, int u1, int u2, int v1, int v2, int v3, int v4,
                        int v5, int v6) {
  RuleMatch m = base("rx_open", {u1, u2});
  m.binding = {{"u1", u1}, {"u2", u2}, {"v1", v1}, {"v2", v2}, {"v3", v3}, {"v4", v4}};
  if (v5 >= 0) m.binding["v5"] = v5;
  if (v6 >= 0) m.binding["v6"] = v6;
  auto& vars = m.program.variants;
  auto side_exts = [&](Steps& steps) {
    if (v5 >= 0) steps.push_back(ProgramStep::extend(ColorSel::ends_at(v5, 0), {E(v5, u1)}));
    if (v6 >= 0) steps.push_back(ProgramStep::extend(ColorSel::ends_at(v6, 0), {E(v6, u2)}));
  };
  // Bend one side in and run the seed all the way around both commons; only
  // the opposite side neighbor is left for an extension.
  for (auto [s1, s2, e1, e2, x1, x2] :
       {std::array{u1, u2, v3, v4, v5, v6}, std::array{u2, u1, v4, v3, v6, v5}}) {
    for (auto [c, d] : {std::pair{v1, v2}, std::pair{v2, v1}}) {
      for (int skip = 0; skip < 2; skip++) {
        Steps steps = {
            ProgramStep::deviate(ColorSel::on_edge(e1, c), E(e1, c), {e1, s1, c}),
            ProgramStep::assign_new({E(e1, c), E(c, s2), E(s2, d), E(d, s1)}),
            ProgramStep::extend(ColorSel::ends_at(e2, skip), {E(e2, s2)}),
        };
        if (x1 >= 0) steps.push_back(ProgramStep::extend(ColorSel::ends_at(x1, 0), {E(x1, s1)}));
        if (x2 >= 0) steps.push_back(ProgramStep::extend(ColorSel::ends_at(x2, 0), {E(x2, s2)}));
        vars.push_back(variant("bend one side in, ring the seed around both commons",
                               std::move(steps)));
      }
    }
  }
  for (auto [c, d] : {std::pair{v1, v2}, std::pair{v2, v1}}) {
    // Bend the side edge v3-c around u1, seed across the base, close the
    // other common neighbor with two of its classes.
    for (int skip = 0; skip < 2; skip++) {
      Steps steps = {
          ProgramStep::deviate(ColorSel::on_edge(v3, c), E(v3, c), {v3, u1, c}),
          ProgramStep::assign_new({E(v3, c), E(c, u2), E(u2, v4)}),
          ProgramStep::extend(ColorSel::ends_at(d, skip), {E(d, u1)}),
          ProgramStep::extend(ColorSel::ends_at(d, skip), {E(d, u2)}),
      };
      side_exts(steps);
      vars.push_back(variant("bend one side in, close the other common with two classes",
                             std::move(steps)));
    }
    // Seed runs onto the other common; only one class needed there.
    for (int skip = 0; skip < 2; skip++) {
      Steps steps = {
          ProgramStep::deviate(ColorSel::on_edge(v3, c), E(v3, c), {v3, u1, c}),
          ProgramStep::assign_new({E(v3, c), E(c, u2), E(u2, d)}),
          ProgramStep::extend(ColorSel::ends_at(d, skip), {E(d, u1)}),
          ProgramStep::extend(ColorSel::ends_at(v4, skip), {E(v4, u2)}),
      };
      side_exts(steps);
      vars.push_back(variant("bend one side in, seed onto the other common", std::move(steps)));
    }
    // Bend both sides onto one common, seed its two side edges back.
    for (int skip = 0; skip < 2; skip++) {
      Steps steps = {
          ProgramStep::deviate(ColorSel::on_edge(v3, c), E(v3, c), {v3, u1, c}),
          ProgramStep::deviate(ColorSel::on_edge(v4, c), E(v4, c), {v4, u2, c}),
          ProgramStep::assign_new({E(v3, c), E(c, v4)}),
          ProgramStep::extend(ColorSel::ends_at(d, skip), {E(d, u1)}),
          ProgramStep::extend(ColorSel::ends_at(d, skip), {E(d, u2)}),
      };
      side_exts(steps);
      vars.push_back(variant("bend both sides onto one common, seed its base edges",
                             std::move(steps)));
    }
  }
  (void)g;
  m.program.searched = true;
  return m;
}

// Same shape with the commons adjacent but not separating.
RuleMatch build_rx_tri(const Graph& g, int u1, int u2, int v1, int v2, int v3, int v4,
                       int v5, int v6) {
  RuleMatch m = base("rx_tri", {u1, u2});
  m.binding = {{"u1", u1}, {"u2", u2}, {"v1", v1}, {"v2", v2}, {"v3", v3}, {"v4", v4}};
  if (v5 >= 0) m.binding["v5"] = v5;
  if (v6 >= 0) m.binding["v6"] = v6;
  auto& vars = m.program.variants;
  for (auto [c, d] : {std::pair{v1, v2}, std::pair{v2, v1}}) {
    for (int s1 : {u1, u2}) {
      int s2 = s1 == u1 ? u2 : u1;
      int e1 = s1 == u1 ? v3 : v4;  // side neighbor of s1
      int e2 = s1 == u1 ? v4 : v3;
      for (int skip = 0; skip < 2; skip++) {
        Steps steps = {
            ProgramStep::deviate(ColorSel::on_edge(c, d), E(c, d), {c, s1, d}),
            ProgramStep::assign_new({E(e2, s2), E(s2, c), E(c, d)}),
            ProgramStep::extend(ColorSel::ends_at(d, skip), {E(d, s2)}),
            ProgramStep::extend(ColorSel::ends_at(e1, 0), {E(e1, s1)}),
        };
        if (v5 >= 0)
          steps.push_back(ProgramStep::extend(ColorSel::ends_at(v5, 0), {E(v5, u1)}));
        if (v6 >= 0)
          steps.push_back(ProgramStep::extend(ColorSel::ends_at(v6, 0), {E(v6, u2)}));
        vars.push_back(variant("bend the base edge in, seed across the far special",
                               std::move(steps)));
      }
    }
  }
  (void)g;
  m.program.searched = true;
  return m;
}

// Two common remaining neighbors c1, c2 that are non-adjacent, at least one
// special of degree 4 whose extra neighbor b misses a common. mid is the
// path middle (-1 when the specials are adjacent).
RuleMatch build_pair4_open(const Graph& g, int u1, int u2, int mid, int c1, int c2, int owner,
                           int b, int other_extra) {
  RuleMatch m = base("pair4_open", {u1, u2});
  m.binding = {{"u1", u1}, {"u2", u2}, {"v", c1}, {"v'", c2}, {"b", b}};
  if (mid >= 0) m.binding["w"] = mid;
  int peer = owner == u1 ? u2 : u1;
  int miss, keep;
  if (!g.has_edge(b, c1) && !g.has_edge(b, c2)) {
    // Free choice: route the bend so the extension lands on an odd vertex.
    miss = g.degree(c2) % 2 == 1 ? c1 : c2;
  } else {
    miss = !g.has_edge(b, c1) ? c1 : c2;
  }
  keep = miss == c1 ? c2 : c1;
  m.add_edges = {E(b, miss)};
  auto& vars = m.program.variants;
  auto dev = ProgramStep::deviate(ColorSel::on_edge(b, miss), E(b, miss), {b, owner, miss});
  std::vector<Edge> spine = {E(keep, owner)};
  if (mid >= 0) {
    spine.push_back(E(owner, mid));
    spine.push_back(E(mid, peer));
  } else {
    spine.push_back(E(owner, peer));
  }
  auto extra_ext = [&](Steps& steps) {
    if (other_extra >= 0)
      steps.push_back(
          ProgramStep::extend(ColorSel::ends_at(other_extra, 0), {E(other_extra, peer)}));
  };
  // With a second extra on the peer both bends pair off and a single seed
  // carries the rest, with no dependence on where the precoloring ends.
  if (other_extra >= 0) {
    int y = other_extra;
    std::vector<Edge> seed;
    if (g.has_edge(y, keep)) {
      seed.push_back(E(y, keep));
    } else {
      m.add_edges.push_back(E(y, keep));
    }
    seed.insert(seed.end(), spine.begin(), spine.end());
    seed.push_back(E(peer, miss));
    vars.push_back(variant(
        "bend both extras in, seed the full spine",
        {dev, ProgramStep::deviate(ColorSel::on_edge(y, keep), E(y, keep), {y, peer, keep}),
         ProgramStep::assign_new(std::move(seed))}));
  }
  // Long seed keep..peer..miss, one class closes the keep side of the peer.
  for (int skip = 0; skip < 3; skip++) {
    std::vector<Edge> seed = spine;
    seed.push_back(E(peer, miss));
    Steps steps = {dev, ProgramStep::assign_new(seed),
                   ProgramStep::extend(ColorSel::ends_at(keep, skip), {E(keep, peer)})};
    extra_ext(steps);
    vars.push_back(variant("bend the missing pair in, seed the long spine", std::move(steps)));
  }
  // Short seed keep..peer, classes close both commons at the peer.
  for (int skip1 = 0; skip1 < 2; skip1++)
    for (int skip2 = 0; skip2 < 2; skip2++) {
      Steps steps = {dev, ProgramStep::assign_new(spine),
                     ProgramStep::extend(ColorSel::ends_at(miss, skip1), {E(miss, peer)}),
                     ProgramStep::extend(ColorSel::ends_at(keep, skip2), {E(keep, peer)})};
      extra_ext(steps);
      vars.push_back(variant("bend the missing pair in, close both commons", std::move(steps)));
    }
  // Seed ending on the peer's extra, classes close both commons.
  if (other_extra >= 0) {
    std::vector<Edge> seed = spine;
    seed.push_back(E(peer, other_extra));
    for (int skip1 = 0; skip1 < 2; skip1++)
      for (int skip2 = 0; skip2 < 2; skip2++)
        vars.push_back(variant(
            "seed onto the far extra, close both commons",
            {dev, ProgramStep::assign_new(seed),
             ProgramStep::extend(ColorSel::ends_at(miss, skip1), {E(miss, peer)}),
             ProgramStep::extend(ColorSel::ends_at(keep, skip2), {E(keep, peer)})}));
  }
  m.program.searched = true;
  return m;
}

// Same but every extra neighbor touches both commons; b ~ c1 and b ~ c2.
RuleMatch build_pair4_open2(const Graph& g, int u1, int u2, int mid, int c1, int c2,
                            int owner, int b, int other_extra) {
  RuleMatch m = base("pair4_open2", {u1, u2});
  m.binding = {{"u1", u1}, {"u2", u2}, {"v", c1}, {"v'", c2}, {"b", b}};
  if (mid >= 0) m.binding["w"] = mid;
  int peer = owner == u1 ? u2 : u1;
  auto& vars = m.program.variants;
  for (auto [c, d] : {std::pair{c1, c2}, std::pair{c2, c1}}) {
    std::vector<Edge> p;
    p.push_back(E(b, c));
    p.push_back(E(c, peer));
    if (mid >= 0) {
      p.push_back(E(peer, mid));
      p.push_back(E(mid, owner));
    } else {
      p.push_back(E(peer, owner));
    }
    p.push_back(E(owner, d));
    for (int skip = 0; skip < 3; skip++) {
      Steps steps = {
          ProgramStep::deviate(ColorSel::on_edge(b, c), E(b, c), {b, owner, c}),
          ProgramStep::assign_new(p),
          ProgramStep::extend(ColorSel::ends_at(d, skip), {E(d, peer)}),
      };
      if (other_extra >= 0)
        steps.push_back(ProgramStep::extend(ColorSel::ends_at(other_extra, 0),
                                            {E(other_extra, peer)}));
      vars.push_back(variant("vacate one clamp edge, thread one long seed through",
                             std::move(steps)));
    }
  }
  (void)g;
  m.program.searched = true;
  return m;
}

// Both specials degree 3, two non-adjacent common neighbors, at least one of
// even degree (c1 even).
RuleMatch build_pair3_even(const Graph& g, int u1, int u2, int mid, int c1, int c2) {
  RuleMatch m = base("pair3_even", {u1, u2});
  m.binding = {{"u1", u1}, {"u2", u2}, {"v", c1}, {"v'", c2}};
  if (mid >= 0) m.binding["w"] = mid;
  auto& vars = m.program.variants;
  // Joining the two commons flips both their parities in the reduced graph,
  // so the even common picks up a guaranteed class endpoint there.
  m.add_edges = {E(c1, c2)};
  auto scheme = [&](int sa, int sb, int va, int vb) {
    // Bend the commons' class around sb, seed the path from vb over sa to
    // sb, close (va, sa) from the end guaranteed at va.
    std::vector<Edge> seed = {E(vb, sa)};
    if (mid < 0) {
      seed.push_back(E(sa, sb));
    } else {
      seed.push_back(E(sa, mid));
      seed.push_back(E(mid, sb));
    }
    for (int skip = 0; skip < 2; skip++)
      vars.push_back(variant(
          "bend the joined commons around one special, close from the flipped end",
          {ProgramStep::deviate(ColorSel::on_edge(c1, c2), E(c1, c2), {va, sb, vb}),
           ProgramStep::assign_new(seed),
           ProgramStep::extend(ColorSel::ends_at(va, skip), {E(va, sa)})}));
  };
  scheme(u1, u2, c1, c2);
  scheme(u2, u1, c1, c2);
  if (g.degree(c2) % 2 == 0) {
    scheme(u1, u2, c2, c1);
    scheme(u2, u1, c2, c1);
  }
  m.program.searched = true;
  return m;
}

// Both specials degree 3, two non-adjacent common neighbors, both odd.
RuleMatch build_pair3_odd(const Graph& g, int u1, int u2, int mid, int c1, int c2) {
  RuleMatch m = base("pair3_odd", {u1, u2});
  m.binding = {{"u1", u1}, {"u2", u2}, {"v", c1}, {"v'", c2}};
  if (mid >= 0) m.binding["w"] = mid;
  auto& vars = m.program.variants;
  std::vector<Edge> bridge = mid < 0 ? std::vector<Edge>{E(u1, u2)}
                                     : std::vector<Edge>{E(u1, mid), E(mid, u2)};
  for (auto [c, d] : {std::pair{c1, c2}, std::pair{c2, c1}}) {
    std::vector<Edge> seed = {E(c, u1)};
    seed.insert(seed.end(), bridge.begin(), bridge.end());
    seed.push_back(E(u2, d));
    for (int skip1 = 0; skip1 < 2; skip1++)
      for (int skip2 = 0; skip2 < 2; skip2++)
        vars.push_back(variant(
            "seed across the pair, close both commons with their classes",
            {ProgramStep::assign_new(seed),
             ProgramStep::extend(ColorSel::ends_at(d, skip1), {E(d, u1)}),
             ProgramStep::extend(ColorSel::ends_at(c, skip2), {E(c, u2)})}));
  }
  (void)g;
  m.program.searched = true;
  return m;
}

// Distance-two degree-3 specials whose two common remaining neighbors are
// adjacent (middle w).
RuleMatch build_k2_tri(const Graph& g, int u1, int u2, int w, int c1, int c2) {
  RuleMatch m = base("k2_tri", {u1, u2});
  m.binding = {{"u1", u1}, {"u2", u2}, {"w", w}, {"v", c1}, {"v'", c2}};
  auto& vars = m.program.variants;
  // Snake seed first: it leaves a single extension, landing on d, so any
  // odd common can serve as d.
  for (auto [c, d] : {std::pair{c1, c2}, std::pair{c2, c1}}) {
    if (g.degree(d) % 2 == 0) continue;
    for (int s1 : {u1, u2}) {
      int s2 = s1 == u1 ? u2 : u1;
      for (int skip = 0; skip < 2; skip++)
        vars.push_back(variant(
            "bend the common edge around one special, snake the seed to the other",
            {ProgramStep::deviate(ColorSel::on_edge(c, d), E(c, d), {c, s1, d}),
             ProgramStep::assign_new({E(s1, w), E(w, s2), E(s2, c), E(c, d)}),
             ProgramStep::extend(ColorSel::ends_at(d, skip), {E(d, s2)})}));
    }
  }
  for (auto [c, d] : {std::pair{c1, c2}, std::pair{c2, c1}}) {
    for (int s1 : {u1, u2}) {
      int s2 = s1 == u1 ? u2 : u1;
      for (int skip1 = 0; skip1 < 2; skip1++)
        for (int skip2 = 0; skip2 < 2; skip2++)
          vars.push_back(variant(
              "bend the common edge around one special, seed through the other",
              {ProgramStep::deviate(ColorSel::on_edge(c, d), E(c, d), {c, s1, d}),
               ProgramStep::assign_new({E(w, s2), E(s2, c), E(c, d)}),
               ProgramStep::extend(ColorSel::ends_at(w, skip1), {E(w, s1)}),
               ProgramStep::extend(ColorSel::ends_at(d, skip2), {E(d, s2)})}));
    }
  }
  m.program.searched = true;
  return m;
}

// Degree-4 variant of the previous shape; extras are the non-common
// remaining neighbors (-1 when a side has none).
RuleMatch build_k2_tri4(const Graph& g, int u1, int u2, int w, int c1, int c2, int a, int b) {
  RuleMatch m = base("k2_tri4", {u1, u2});
  m.binding = {{"u1", u1}, {"u2", u2}, {"w", w}, {"v", c1}, {"v'", c2}};
  if (a >= 0) m.binding["a"] = a;
  if (b >= 0) m.binding["b"] = b;
  auto& vars = m.program.variants;
  // A degree-4 special pairs its extra with one common through a bend, the
  // other special bends the common edge, and one seed strings together
  // whatever those two bends leave over. No step depends on class ends.
  {
    int owner = a >= 0 ? u1 : u2;
    int x = a >= 0 ? a : b;
    int t = owner == u1 ? u2 : u1;
    int y = owner == u1 ? b : a;
    int c = !g.has_edge(x, c1) ? c1 : (!g.has_edge(x, c2) ? c2 : c1);
    int cb = c == c1 ? c2 : c1;
    std::vector<Edge> seed;
    if (g.has_edge(x, c)) {
      seed.push_back(E(x, c));
    } else {
      m.add_edges.push_back(E(x, c));
    }
    seed.insert(seed.end(), {E(c, cb), E(cb, owner), E(owner, w), E(w, t)});
    if (y >= 0) seed.push_back(E(t, y));
    vars.push_back(variant(
        "bend the extra and the common edge in, seed the leftover snake",
        {ProgramStep::deviate(ColorSel::on_edge(x, c), E(x, c), {x, owner, c}),
         ProgramStep::deviate(ColorSel::on_edge(c, cb), E(c, cb), {c, t, cb}),
         ProgramStep::assign_new(std::move(seed))}));
  }
  for (auto [c, d] : {std::pair{c1, c2}, std::pair{c2, c1}}) {
    for (int s1 : {u1, u2}) {
      int s2 = s1 == u1 ? u2 : u1;
      int e1 = s1 == u1 ? a : b;
      int e2 = s1 == u1 ? b : a;
      for (int skip1 = 0; skip1 < 2; skip1++)
        for (int skip2 = 0; skip2 < 2; skip2++) {
          Steps steps = {
              ProgramStep::deviate(ColorSel::on_edge(c, d), E(c, d), {c, s1, d}),
              ProgramStep::assign_new({E(w, s2), E(s2, c), E(c, d)}),
              ProgramStep::extend(ColorSel::ends_at(w, skip1), {E(w, s1)}),
              ProgramStep::extend(ColorSel::ends_at(d, skip2), {E(d, s2)}),
          };
          if (e1 >= 0) steps.push_back(ProgramStep::extend(ColorSel::ends_at(e1, 0), {E(e1, s1)}));
          if (e2 >= 0) steps.push_back(ProgramStep::extend(ColorSel::ends_at(e2, 0), {E(e2, s2)}));
          vars.push_back(variant("bend the common edge, close extras with their classes",
                                 std::move(steps)));
        }
    }
  }
  m.program.searched = true;
  return m;
}

// Adjacent specials with two adjacent common neighbors (extras for degree 4).
RuleMatch build_k2_adj(const Graph& g, int u1, int u2, int c1, int c2, int a, int b) {
  RuleMatch m = base("k2_adj", {u1, u2});
  m.binding = {{"u1", u1}, {"u2", u2}, {"v", c1}, {"v'", c2}};
  if (a >= 0) m.binding["a"] = a;
  if (b >= 0) m.binding["b"] = b;
  auto& vars = m.program.variants;
  for (auto [c, d] : {std::pair{c1, c2}, std::pair{c2, c1}}) {
    for (int s1 : {u1, u2}) {
      int s2 = s1 == u1 ? u2 : u1;
      int e1 = s1 == u1 ? a : b;
      int e2 = s1 == u1 ? b : a;
      std::vector<Edge> p;
      if (e2 >= 0) p.push_back(E(e2, s2));
      p.insert(p.end(), {E(s2, c), E(c, d), E(d, s1)});
      if (e1 >= 0) p.push_back(E(s1, e1));
      vars.push_back(variant(
          "bend the common edge across the pair, seed the long snake",
          {ProgramStep::deviate(ColorSel::on_edge(c, d), E(c, d), {c, s1, s2, d}),
           ProgramStep::assign_new(std::move(p))}));
    }
  }
  (void)g;
  m.program.searched = true;
  return m;
}

// Three pairwise non-adjacent common neighbors (both specials degree 4).
RuleMatch build_k3_open(const Graph& g, int u1, int u2, int mid, int c1, int c2, int c3) {
  RuleMatch m = base("k3_open", {u1, u2});
  m.binding = {{"u1", u1}, {"u2", u2}, {"v", c1}, {"v'", c2}, {"v''", c3}};
  if (mid >= 0) m.binding["w"] = mid;
  m.add_edges = {E(c1, c2), E(c1, c3)};
  auto& vars = m.program.variants;
  for (auto [p1, p2] : {std::pair{c2, c3}, std::pair{c3, c2}}) {
    std::vector<Edge> seed = {E(p2, u1)};
    if (mid >= 0) {
      seed.push_back(E(u1, mid));
      seed.push_back(E(mid, u2));
    } else {
      seed.push_back(E(u1, u2));
    }
    seed.push_back(E(u2, p1));
    vars.push_back(variant(
        "bend both added edges around the hub, seed the diagonal",
        {ProgramStep::deviate(ColorSel::on_edge(c1, p1), E(c1, p1), {c1, u1, p1}),
         ProgramStep::deviate(ColorSel::on_edge(c1, p2), E(c1, p2), {c1, u2, p2}),
         ProgramStep::assign_new(seed)}));
  }
  (void)g;
  m.program.searched = true;
  return m;
}

// Three common neighbors with at least one adjacent pair and at least one
// non-adjacent pair.
RuleMatch build_k3_tri(const Graph& g, int u1, int u2, int mid, int c1, int c2, int c3) {
  RuleMatch m = base("k3_tri", {u1, u2});
  m.binding = {{"u1", u1}, {"u2", u2}, {"v", c1}, {"v'", c2}, {"v''", c3}};
  if (mid >= 0) m.binding["w"] = mid;
  // Find an adjacent pair (p, q) and a vertex r non-adjacent to one of them.
  std::array<int, 3> cs = {c1, c2, c3};
  int p = -1, q = -1, r = -1;
  for (int i = 0; i < 3 && p < 0; i++)
    for (int j = i + 1; j < 3 && p < 0; j++) {
      if (!g.has_edge(cs[i], cs[j])) continue;
      int k = 3 - i - j;
      if (!g.has_edge(cs[k], cs[i])) {
        p = cs[i];
        q = cs[j];
        r = cs[k];
      } else if (!g.has_edge(cs[k], cs[j])) {
        p = cs[j];
        q = cs[i];
        r = cs[k];
      }
    }
  if (p < 0) throw UnmatchedCase("k3_tri: commons form a triangle");
  m.add_edges = {E(r, p)};
  auto& vars = m.program.variants;
  for (int s1 : {u1, u2}) {
    int s2 = s1 == u1 ? u2 : u1;
    std::vector<Edge> seed = {E(r, s1)};
    if (mid >= 0) {
      seed.push_back(E(s1, mid));
      seed.push_back(E(mid, s2));
    } else {
      seed.push_back(E(s1, s2));
    }
    seed.push_back(E(s2, q));
    seed.push_back(E(q, p));
    vars.push_back(variant(
        "bend the triangle edge and the added edge, seed around the rim",
        {ProgramStep::deviate(ColorSel::on_edge(p, q), E(p, q), {p, s1, q}),
         ProgramStep::deviate(ColorSel::on_edge(r, p), E(r, p), {r, s2, p}),
         ProgramStep::assign_new(seed)}));
  }
  m.program.searched = true;
  return m;
}

}  // namespace

// Composite matching is defined in this file below; the tree dispatcher
// needs it for the zero- and one-common cases.
namespace {

// ---------------------------------------------------------------------------
// Composite engine: one tactic per special, joined by a seeded shortest
// path. Tactics: grow the seed over one remaining edge; extend a class
// ending at an odd remaining neighbor; or span two non-adjacent remaining
// neighbors with an added, rerouted edge.
// ---------------------------------------------------------------------------

struct SideTactic {
  // span pair (x, y) or -1; seeds and class-extensions for leftover slots.
  int span_x = -1, span_y = -1;
  std::vector<int> grow;      // remaining neighbors reached by the seed color
  std::vector<int> pull;      // remaining neighbors whose class is pulled in
  std::string describe() const {
    std::ostringstream os;
    if (span_x >= 0) os << "span(" << span_x << "," << span_y << ") ";
    for (int v : grow) os << "grow(" << v << ") ";
    for (int v : pull) os << "pull(" << v << ") ";
    return os.str();
  }
};

// Enumerates the tactic lists for one special with remaining neighbors rn.
std::vector<SideTactic> side_tactics(const Graph& g, const std::vector<int>& rn) {
  std::vector<SideTactic> out;
  auto push = [&](SideTactic t) { out.push_back(std::move(t)); };
  if (rn.empty()) {
    push({});
    return out;
  }
  if (rn.size() == 1) {
    push({-1, -1, {rn[0]}, {}});
    push({-1, -1, {}, {rn[0]}});
    return out;
  }
  if (rn.size() == 2) {
    auto [x, y] = std::pair{rn[0], rn[1]};
    if (!g.has_edge(x, y)) push({x, y, {}, {}});
    push({-1, -1, {x}, {y}});
    push({-1, -1, {y}, {x}});
    push({-1, -1, {}, {x, y}});
    return out;
  }
  // three remaining neighbors (degree-4 special)
  for (int i = 0; i < 3; i++)
    for (int j = i + 1; j < 3; j++) {
      int x = rn[i], y = rn[j], z = rn[3 - i - j];
      if (g.has_edge(x, y)) continue;
      push({x, y, {z}, {}});
      push({x, y, {}, {z}});
    }
  for (int i = 0; i < 3; i++) {
    SideTactic t;
    t.grow = {rn[i]};
    for (int j = 0; j < 3; j++)
      if (j != i) t.pull.push_back(rn[j]);
    push(t);
  }
  push({-1, -1, {}, rn});
  return out;
}

// Degree of x in the reduced graph of a composite reduction.
int reduced_degree(const Graph& g, int x, int u1, int u2, const std::vector<int>& s_path,
                   int span_gain) {
  int d = g.degree(x);
  if (g.has_edge(x, u1)) d--;
  if (g.has_edge(x, u2)) d--;
  for (size_t i = 1; i + 1 < s_path.size(); i++)
    if (s_path[i] == x) d -= 2;  // interior path vertices lose both path edges
  return d + span_gain;
}

RuleMatch build_composite(const Graph& g, int u1, int u2, const std::vector<int>& s_path,
                          int shared_rn, std::string transcript) {
  std::vector<int> rn1 = remaining_of(g, u1, s_path[1], u2);
  std::vector<int> rn2 = remaining_of(g, u2, s_path[s_path.size() - 2], u1);

  auto t1s = side_tactics(g, rn1);
  auto t2s = side_tactics(g, rn2);

  std::vector<Edge> s_edges;
  for (size_t i = 0; i + 1 < s_path.size(); i++) s_edges.push_back(E(s_path[i], s_path[i + 1]));

  // A feasible tactic pair must respect parity for pulls, non-adjacency for
  // spans (already filtered), the shared-neighbor compatibility conditions,
  // and must not grow the seed into one vertex from both ends.
  auto feasible = [&](const SideTactic& a, const SideTactic& b) {
    if (shared_rn >= 0) {
      bool a_has = std::count(rn1.begin(), rn1.end(), shared_rn);
      bool b_has = std::count(rn2.begin(), rn2.end(), shared_rn);
      if (a_has && b_has) {
        bool a_spans = a.span_x == shared_rn || a.span_y == shared_rn;
        bool b_spans = b.span_x == shared_rn || b.span_y == shared_rn;
        if (!a_spans && !b_spans) return false;
      }
    } else {
      // no shared remaining neighbors allowed outside the spanning case
    }
    for (int x : a.grow)
      for (int y : b.grow)
        if (x == y) return false;
    int span_gain_a = 0, span_gain_b = 0;
    auto pull_ok = [&](const SideTactic& t, int gain_self, const SideTactic& o, int gain_other) {
      (void)gain_other;
      for (int x : t.pull) {
        int gain = 0;
        if (t.span_x == x || t.span_y == x) gain += gain_self;
        if (o.span_x == x || o.span_y == x) gain += 1;
        if (reduced_degree(g, x, u1, u2, s_path, gain) % 2 == 0) return false;
      }
      return true;
    };
    if (a.span_x >= 0) span_gain_b = 0, span_gain_a = 1;
    if (b.span_x >= 0) span_gain_b = 1;
    if (!pull_ok(a, span_gain_a, b, span_gain_b)) return false;
    if (!pull_ok(b, span_gain_b, a, span_gain_a)) return false;
    return true;
  };

  for (const auto& ta : t1s) {
    for (const auto& tb : t2s) {
      if (!feasible(ta, tb)) continue;
      RuleMatch m = base("composite_pair", {u1, u2});
      m.binding = {{"u1", u1}, {"u2", u2}};
      for (size_t i = 1; i + 1 < s_path.size(); i++)
        m.binding["s" + std::to_string(i)] = s_path[i];
      if (shared_rn >= 0) m.binding["v"] = shared_rn;
      for (size_t i = 1; i + 2 < s_path.size(); i++)
        m.remove_edges.push_back(E(s_path[i], s_path[i + 1]));
      if (ta.span_x >= 0) m.add_edges.push_back(E(ta.span_x, ta.span_y));
      if (tb.span_x >= 0) m.add_edges.push_back(E(tb.span_x, tb.span_y));
      std::sort(m.add_edges.begin(), m.add_edges.end());
      m.add_edges.erase(std::unique(m.add_edges.begin(), m.add_edges.end()), m.add_edges.end());
      if (m.add_edges.size() == 2 && m.add_edges[0] == m.add_edges[1]) continue;

      // One extension-order and skip choice per variant.
      auto& vars = m.program.variants;
      for (int skip = 0; skip < 2; skip++) {
        Steps steps;
        if (ta.span_x >= 0)
          steps.push_back(ProgramStep::deviate(ColorSel::on_edge(ta.span_x, ta.span_y),
                                               E(ta.span_x, ta.span_y),
                                               {ta.span_x, u1, ta.span_y}));
        if (tb.span_x >= 0)
          steps.push_back(ProgramStep::deviate(ColorSel::on_edge(tb.span_x, tb.span_y),
                                               E(tb.span_x, tb.span_y),
                                               {tb.span_x, u2, tb.span_y}));
        steps.push_back(ProgramStep::assign_new(s_edges));
        for (int x : ta.grow)
          steps.push_back(ProgramStep::extend(ColorSel::fresh(0), {E(u1, x)}));
        for (int x : tb.grow)
          steps.push_back(ProgramStep::extend(ColorSel::fresh(0), {E(u2, x)}));
        int pull_skip = skip;
        for (int x : ta.pull)
          steps.push_back(ProgramStep::extend(ColorSel::ends_at(x, pull_skip), {E(x, u1)}));
        for (int x : tb.pull)
          steps.push_back(ProgramStep::extend(ColorSel::ends_at(x, pull_skip), {E(x, u2)}));
        vars.push_back(variant("seed the joining path, resolve each end: " + ta.describe() +
                                   "/ " + tb.describe(),
                               std::move(steps)));
      }
      m.program.searched = true;
      m.transcript = transcript + " tactics " + ta.describe() + "/ " + tb.describe();
      return m;
    }
  }
  throw UnmatchedCase(transcript + ": no compatible end tactics");
}

// ---------------------------------------------------------------------------
// The case tree. Walks the documented branches for one choice of joining
// path and returns the leaf's match.
// ---------------------------------------------------------------------------

RuleMatch walk_tree(const Graph& g, int u1, int u2, const std::vector<int>& s_path,
                    std::ostringstream& trail) {
  const int dist = static_cast<int>(s_path.size()) - 1;
  const int mid = dist == 2 ? s_path[1] : -1;
  std::vector<int> rn1 = remaining_of(g, u1, s_path[1], u2);
  std::vector<int> rn2 = remaining_of(g, u2, s_path[s_path.size() - 2], u1);
  std::vector<int> commons;
  std::set_intersection(rn1.begin(), rn1.end(), rn2.begin(), rn2.end(),
                        std::back_inserter(commons));
  const int k = static_cast<int>(commons.size());
  trail << "dist=" << dist << " commons=" << k;

  if (k == 0) {
    trail << " -> disjoint ends";
    return build_composite(g, u1, u2, s_path, -1, trail.str());
  }

  if (k == 1) {
    int v = commons[0];
    trail << " v=" << v;
    // A remaining neighbor somewhere that misses v: spanning composite.
    for (int u : {u1, u2}) {
      const auto& rn = u == u1 ? rn1 : rn2;
      for (int x : rn)
        if (x != v && !g.has_edge(x, v)) {
          trail << " -> span side at " << u;
          return build_composite(g, u == u1 ? u1 : u2, u == u1 ? u2 : u1,
                                 u == u1 ? s_path
                                         : std::vector<int>(s_path.rbegin(), s_path.rend()),
                                 v, trail.str());
        }
    }
    // Every remaining neighbor is adjacent to v.
    int d1 = g.degree(u1), d2 = g.degree(u2);
    if (d1 == 2 || d2 == 2) {
      int a = d1 == 2 ? u1 : u2;  // the degree-2 special
      int b = a == u1 ? u2 : u1;
      if (dist == 1) {
        if (g.degree(b) == 2) {
          trail << " -> adjacent degree-2 pair";
          return build_d2d2_tri(g, std::min(u1, u2), std::max(u1, u2), v);
        }
        trail << " -> degree-2 beside a bigger special";
        return build_d2dk_adj(g, a, b, v);
      }
      int w = mid;
      if (!g.has_edge(v, w)) {
        trail << " -> splice the degree-2 vertex";
        return build_suppress2(g, a);
      }
      if (g.degree(b) == 2) {
        if (g.degree(v) % 2 == 1 || g.degree(w) % 2 == 1) {
          trail << " -> base edge with an odd end";
          return build_d2d2_mid_odd(g, u1, u2, v, w);
        }
        trail << " -> base edge with even ends";
        return build_d2d2_mid_even(g, u1, u2, v, w);
      }
      trail << " -> degree-2 across from a bigger special";
      return build_d2dk_mid(g, a, b, w, v);
    }
    // Both specials have degree >= 3.
    if (dist == 2) {
      int w = mid;
      // Both common neighbors (v and the middle) clamp every side neighbor;
      // a side that misses the middle belongs to the walk using the other
      // middle, which lands in the composite branch instead.
      std::vector<int> side1, side2;
      for (int x : rn1)
        if (x != v) side1.push_back(x);
      for (int x : rn2)
        if (x != v) side2.push_back(x);
      for (const auto& side : {side1, side2})
        for (int x : side)
          if (!g.has_edge(x, w))
            throw UnmatchedCase(trail.str() + ": side misses the middle");
      int v3 = side1.empty() ? -1 : side1[0];
      int v4 = side2.empty() ? -1 : side2[0];
      int v5 = side1.size() > 1 ? side1[1] : -1;
      int v6 = side2.size() > 1 ? side2[1] : -1;
      if (v3 < 0 || v4 < 0) throw UnmatchedCase(trail.str() + ": degenerate crossing");
      if (!g.has_edge(v, w)) {
        trail << " -> open crossing";
        return build_rx_open(g, u1, u2, w, v, v3, v4, v5, v6);
      }
      for (const auto& cut : enumerate_cuts(g, 2)) {
        if (cut.vertices == std::vector<int>{std::min(v, w), std::max(v, w)}) {
          trail << " -> separated crossing";
          return build_rx_sep(g, u1, u2, w, v, v3, v4, v5, v6);
        }
      }
      trail << " -> clamped crossing";
      return build_rx_tri(g, u1, u2, w, v, v3, v4, v5, v6);
    }
    // Adjacent specials.
    if (d1 == 3 && d2 == 3) {
      int v1 = rn1[0] == v ? rn1[1] : rn1[0];
      int v2 = rn2[0] == v ? rn2[1] : rn2[0];
      for (auto [owner, other, x, y] :
           {std::tuple{u1, u2, v1, v2}, std::tuple{u2, u1, v2, v1}}) {
        if (g.degree(x) % 2 == 0) {
          trail << " -> even tail at " << x;
          return build_d3d3_tail_even(g, other, owner, v, y, x);
        }
      }
      if (g.degree(v) % 2 == 1) {
        if (!g.has_edge(v1, v2)) {
          trail << " -> odd shared neighbor, open sides";
          return build_dkdk_bridge(g, u1, u2, v, v1, v2, -1, -1);
        }
        trail << " -> odd shared neighbor, closed sides";
        return build_d3d3_odd_adj(g, u1, u2, v, v1, v2);
      }
      trail << " -> even shared neighbor";
      return build_d3d3_even_common(g, u1, u2, v, v1, v2);
    }
    // At least one degree-4 special: planarity leaves some non-edge between
    // the side neighbors.
    std::vector<int> side1, side2;
    for (int x : rn1)
      if (x != v) side1.push_back(x);
    for (int x : rn2)
      if (x != v) side2.push_back(x);
    for (int x : side1)
      for (int y : side2)
        if (x != y && !g.has_edge(x, y)) {
          int a2 = -1, b2 = -1;
          for (int z : side1)
            if (z != x) a2 = z;
          for (int z : side2)
            if (z != y) b2 = z;
          trail << " -> bridged pair " << x << "," << y;
          return build_dkdk_bridge(g, u1, u2, v, x, y, a2, b2);
        }
    throw UnmatchedCase(trail.str() + ": no bridgeable side pair");
  }

  if (k == 2) {
    int v = commons[0], vp = commons[1];
    trail << " v=" << v << " v'=" << vp;
    if (!g.has_edge(v, vp)) {
      int d1 = g.degree(u1), d2 = g.degree(u2);
      if (d1 == 4 || d2 == 4) {
        auto extra_of = [&](int u) {
          const auto& rno = u == u1 ? rn1 : rn2;
          for (int x : rno)
            if (x != v && x != vp) return x;
          return -1;
        };
        // Prefer a degree-4 special whose extra misses one of the commons.
        int owner = -1;
        for (int u : {u1, u2}) {
          int x = g.degree(u) == 4 ? extra_of(u) : -1;
          if (x >= 0 && (!g.has_edge(x, v) || !g.has_edge(x, vp))) {
            owner = u;
            break;
          }
        }
        bool free_extra = owner >= 0;
        if (owner < 0) owner = g.degree(u1) == 4 ? u1 : u2;
        int bvertex = extra_of(owner);
        if (bvertex < 0) throw UnmatchedCase(trail.str() + ": missing extra neighbor");
        int other_extra = extra_of(owner == u1 ? u2 : u1);
        if (free_extra) {
          trail << " -> open pair with a free extra";
          return build_pair4_open(g, u1, u2, mid, v, vp, owner, bvertex, other_extra);
        }
        trail << " -> open pair with a clamped extra";
        return build_pair4_open2(g, u1, u2, mid, v, vp, owner, bvertex, other_extra);
      }
      if (g.degree(v) % 2 == 0 || g.degree(vp) % 2 == 0) {
        int c1 = g.degree(v) % 2 == 0 ? v : vp;
        int c2 = c1 == v ? vp : v;
        trail << " -> open pair, even common";
        return build_pair3_even(g, u1, u2, mid, c1, c2);
      }
      trail << " -> open pair, odd commons";
      return build_pair3_odd(g, u1, u2, mid, v, vp);
    }
    // All common neighbors adjacent.
    if (dist == 1) {
      int a = -1, b = -1;
      for (int x : rn1)
        if (x != v && x != vp) a = x;
      for (int x : rn2)
        if (x != v && x != vp) b = x;
      trail << " -> adjacent specials over a closed pair";
      return build_k2_adj(g, u1, u2, v, vp, a, b);
    }
    if (g.degree(u1) == 3 && g.degree(u2) == 3) {
      trail << " -> distance-2 closed pair";
      return build_k2_tri(g, u1, u2, mid, v, vp);
    }
    int a = -1, b = -1;
    for (int x : rn1)
      if (x != v && x != vp) a = x;
    for (int x : rn2)
      if (x != v && x != vp) b = x;
    trail << " -> distance-2 closed pair, degree 4";
    return build_k2_tri4(g, u1, u2, mid, v, vp, a, b);
  }

  // k == 3
  int c1 = commons[0], c2 = commons[1], c3 = commons[2];
  trail << " triple " << c1 << "," << c2 << "," << c3;
  bool any_edge = g.has_edge(c1, c2) || g.has_edge(c1, c3) || g.has_edge(c2, c3);
  if (!any_edge) {
    trail << " -> open triple";
    return build_k3_open(g, u1, u2, mid, c1, c2, c3);
  }
  trail << " -> mixed triple";
  return build_k3_tri(g, u1, u2, mid, c1, c2, c3);
}

}  // namespace

RuleMatch match_ci_rule(const Graph& g, int u1, int u2) {
  if (u1 == u2 || u1 < 0 || u2 < 0 || u1 >= g.n() || u2 >= g.n())
    throw PreconditionViolated("bad special pair");
  if (g.degree(u1) > 4 || g.degree(u2) > 4)
    throw PreconditionViolated("special vertex degree exceeds 4");
  if (g.n() == 3 && g.m() == 3) throw PreconditionViolated("triangle host");

  auto lex_path = shortest_path_lex(g, u1, u2);
  const int dist = static_cast<int>(lex_path.size()) - 1;

  std::vector<std::vector<int>> candidates;
  if (dist == 2) {
    for (int w : common_neighbors(g, u1, u2)) candidates.push_back({u1, w, u2});
  } else {
    candidates.push_back(lex_path);
  }

  std::string first_failure;
  for (const auto& s_path : candidates) {
    std::ostringstream trail;
    try {
      RuleMatch m = walk_tree(g, u1, u2, s_path, trail);
      if (m.transcript.empty()) m.transcript = trail.str();
      return m;
    } catch (const UnmatchedCase& u) {
      if (first_failure.empty()) first_failure = u.transcript;
    }
  }
  throw UnmatchedCase(first_failure.empty() ? "no joining path candidate" : first_failure);
}

}  // namespace pd
