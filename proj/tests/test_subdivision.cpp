#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "fixtures.hpp"
#include "pd/structure.hpp"
#include "pd/subdivision.hpp"

using namespace pd;

namespace {

// Six direct paths over a complete quadruple plus whatever extra edges a
// scenario needs. Roots are always 0..3.
Subdivision direct_system() {
  Subdivision s;
  s.kind = SubdivisionKind::K4;
  s.roots = {0, 1, 2, 3};
  s.paths = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  return s;
}

std::vector<std::pair<int, int>> frame_edges() {
  return {{0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
}

// Two single rails and two doubled rails, no system joining all four corners
// pairwise: 0-1 and 2-3 direct, 0..2 and 1..3 each through two private
// midpoints, nothing between 0,3 or 1,2.
Graph rail_graph() {
  std::vector<std::pair<int, int>> es = {{0, 1}, {2, 3}, {0, 4}, {4, 2},
                                         {0, 5}, {5, 2}, {1, 6}, {6, 3},
                                         {1, 7}, {7, 3}};
  return Graph::from_edges(8, es);
}

int path_between(const Subdivision& s, int a, int b) {
  for (size_t i = 0; i < s.paths.size(); ++i) {
    const auto& w = s.paths[i];
    if ((w.front() == a && w.back() == b) || (w.front() == b && w.back() == a))
      return static_cast<int>(i);
  }
  return -1;
}

}  // namespace

TEST_CASE("rooted complete quadruple on K4 is the edge set") {
  auto s = find_rooted_k4(fixtures::complete(4), {0, 1, 2, 3});
  REQUIRE(s.has_value());
  CHECK(s->kind == SubdivisionKind::K4);
  REQUIRE(s->paths.size() == 6);
  for (const auto& w : s->paths) CHECK(w.size() == 2);
  CHECK(validate_subdivision(fixtures::complete(4), *s).ok);
}

TEST_CASE("rooted complete quadruple on the octahedron runs through both spare vertices") {
  Graph g = fixtures::octahedron();
  auto s = find_rooted_k4(g, {0, 1, 2, 3});
  REQUIRE(s.has_value());
  CHECK(validate_subdivision(g, *s).ok);
  std::set<int> internals;
  for (const auto& w : s->paths)
    for (size_t i = 1; i + 1 < w.size(); ++i) internals.insert(w[i]);
  CHECK(internals == std::set<int>{4, 5});
}

TEST_CASE("rail graph admits no rooted complete quadruple") {
  CHECK_FALSE(find_rooted_k4(rail_graph(), {0, 1, 2, 3}).has_value());
}

TEST_CASE("tiny budget aborts the search") {
  CHECK_THROWS_AS(find_rooted_k4(fixtures::octahedron(), {0, 1, 2, 3}, 3),
                  SearchBudgetExceeded);
}

TEST_CASE("fallback shape: doubled four-cycle on the rail graph") {
  Graph g = rail_graph();
  Subdivision s = find_k_subdivision(g, {0, 1, 2, 3});
  CHECK(s.kind == SubdivisionKind::C4Doubled);
  CHECK(validate_subdivision(g, s).ok);
  CHECK(s.link(0, 1) == 1);
  CHECK(s.link(2, 3) == 1);
  CHECK(s.link(0, 2) == 2);
  CHECK(s.link(1, 3) == 2);
  CHECK(s.link(0, 3) == 0);
  CHECK(s.link(1, 2) == 0);
}

TEST_CASE("shortcutting a detour") {
  std::vector<std::pair<int, int>> es = {{0, 4}, {4, 5}, {5, 1}, {4, 1}};
  for (auto e : frame_edges()) es.push_back(e);
  Graph g = Graph::from_edges(6, es);
  Subdivision s = direct_system();
  s.paths[0] = {0, 4, 5, 1};
  Subdivision t = eliminate_chords(g, s);
  CHECK(t.paths[0] == std::vector<int>{0, 4, 1});
  CHECK(validate_subdivision(g, t).ok);
}

TEST_CASE("a parallel edge that is itself a path is left alone") {
  std::vector<std::pair<int, int>> es = {{0, 1}, {2, 3}, {0, 2}, {0, 4},
                                         {2, 4}, {1, 3}, {1, 5}, {3, 5}};
  Graph g = Graph::from_edges(6, es);
  Subdivision s;
  s.kind = SubdivisionKind::C4Doubled;
  s.roots = {0, 1, 2, 3};
  s.paths = {{0, 1}, {2, 3}, {0, 2}, {0, 4, 2}, {1, 3}, {1, 5, 3}};
  REQUIRE(validate_subdivision(g, s).ok);
  Subdivision t = eliminate_chords(g, s);
  CHECK(t.paths == s.paths);
}

TEST_CASE("a chordless system is a fixpoint") {
  Graph g = fixtures::octahedron();
  auto s = find_rooted_k4(g, {0, 1, 2, 3});
  REQUIRE(s.has_value());
  Subdivision t = eliminate_chords(g, *s);
  CHECK(t.paths == s->paths);
}

TEST_CASE("shortcutting refuses a contact system") {
  Subdivision s;
  s.kind = SubdivisionKind::C4Contact;
  CHECK_THROWS_AS(eliminate_chords(fixtures::complete(4), s), PreconditionViolated);
}

TEST_CASE("loose neighbor on the own path breaks the first freedom") {
  std::vector<std::pair<int, int>> es = {{0, 4}, {4, 5}, {5, 1}, {0, 5}, {0, 6}, {5, 6}};
  for (auto e : frame_edges()) es.push_back(e);
  Graph g = Graph::from_edges(7, es);
  Subdivision s = direct_system();
  s.paths[0] = {0, 4, 5, 1};
  auto props = check_properties(g, s);
  CHECK_FALSE(props.incident_chord_free);
  CHECK(props.remote_chord_free);
  CHECK(!props.incident_witness.empty());
}

TEST_CASE("adjacent loose pair spanning a far path breaks the second freedom") {
  std::vector<std::pair<int, int>> es = {{0, 4}, {4, 5}, {5, 6}, {6, 1}, {2, 4},
                                         {2, 6}, {4, 6}};
  for (auto e : frame_edges()) es.push_back(e);
  Graph g = Graph::from_edges(7, es);
  Subdivision s = direct_system();
  s.paths[0] = {0, 4, 5, 6, 1};
  auto props = check_properties(g, s);
  CHECK(props.incident_chord_free);
  CHECK_FALSE(props.remote_chord_free);
}

TEST_CASE("rewiring: detour through a shared corner") {
  std::vector<std::pair<int, int>> es = {{0, 6}, {6, 1}, {0, 4}, {1, 4},
                                         {0, 5}, {5, 4}, {1, 7}, {7, 4}};
  for (auto e : frame_edges()) es.push_back(e);
  Graph g = Graph::from_edges(8, es);
  Subdivision s = direct_system();
  s.paths[0] = {0, 6, 1};
  auto props = check_properties(g, s);
  CHECK(props.incident_chord_free);
  CHECK(props.remote_chord_free);
  CHECK_FALSE(props.rewire_stable);

  Subdivision t = redirect(g, s);
  CHECK(t.kind == SubdivisionKind::K4);
  CHECK(t.paths[0] == std::vector<int>{0, 4, 1});
  CHECK(check_properties(g, t).all());
  CHECK(validate_subdivision(g, t).ok);
}

TEST_CASE("rewiring: relay over the loose side when both path ends are tied") {
  std::vector<std::pair<int, int>> es = {{0, 6}, {6, 1}, {0, 4}, {1, 4}, {0, 5},
                                         {5, 4}, {1, 7}, {7, 4}, {5, 6}, {7, 6}};
  for (auto e : frame_edges()) es.push_back(e);
  Graph g = Graph::from_edges(8, es);
  Subdivision s = direct_system();
  s.paths[0] = {0, 6, 1};
  Subdivision t = redirect(g, s);
  CHECK(t.paths[0] == std::vector<int>{0, 5, 4, 1});
  CHECK(check_properties(g, t).all());

  SUBCASE("a fully tied corner is reported, not rewired") {
    Graph h = g.add_edge(4, 6);
    CHECK_THROWS_AS(redirect(h, s), InducedK4Violation);
  }
}

TEST_CASE("rewiring: picking up a loose neighbor sitting on a path to a third corner") {
  std::vector<std::pair<int, int>> es = {{0, 1}, {0, 6},  {6, 7}, {7, 8}, {8, 2},
                                         {0, 3}, {1, 2},  {1, 3}, {2, 3}, {0, 4},
                                         {1, 4}, {0, 5},  {5, 4}, {1, 7}, {7, 4}};
  Graph g = Graph::from_edges(9, es);
  Subdivision s;
  s.kind = SubdivisionKind::K4;
  s.roots = {0, 1, 2, 3};
  s.paths = {{0, 1}, {0, 6, 7, 8, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  REQUIRE(validate_subdivision(g, s).ok);
  Subdivision t = redirect(g, s);
  CHECK(t.paths[1] == std::vector<int>{0, 4, 7, 8, 2});
  CHECK(check_properties(g, t).all());

  SUBCASE("an adjacent first stop detours over the other loose neighbor") {
    Graph h = g.add_edge(5, 6);
    Subdivision u = redirect(h, s);
    CHECK(u.paths[1] == std::vector<int>{0, 5, 4, 7, 8, 2});
    CHECK(check_properties(h, u).all());
  }
}

TEST_CASE("rewiring: two shared loose neighbors") {
  std::vector<std::pair<int, int>> es = {{0, 6}, {6, 1}, {0, 4}, {0, 5},
                                         {1, 4}, {1, 5}, {4, 5}};
  for (auto e : frame_edges()) es.push_back(e);
  Graph g = Graph::from_edges(7, es);
  Subdivision s = direct_system();
  s.paths[0] = {0, 6, 1};
  Subdivision t = redirect(g, s);
  CHECK(t.paths[0] == std::vector<int>{0, 5, 1});
  CHECK(t.kind == SubdivisionKind::K4);
  CHECK(check_properties(g, t).all());
  CHECK(validate_subdivision(g, t).ok);
}

TEST_CASE("pivot routing") {
  std::vector<std::pair<int, int>> es = {{0, 4}, {4, 1}, {0, 5}, {4, 5}, {0, 6}};
  for (auto e : frame_edges()) es.push_back(e);
  Graph base = Graph::from_edges(7, es);
  Subdivision s = direct_system();
  s.paths[0] = {0, 4, 1};

  SUBCASE("the loose corner already avoids the dropped neighbor") {
    Subdivision t = routing(base, s, 0, 6);
    CHECK(t.paths == s.paths);
  }
  SUBCASE("the path corner is swapped in when the loose one is tied") {
    Graph g = base.add_edge(5, 6);
    Subdivision t = routing(g, s, 0, 6);
    CHECK(t.paths[0] == std::vector<int>{0, 5, 4, 1});
    auto rn = t.remaining_neighbors(g, 0);
    CHECK(rn == std::vector<int>{4, 6});
    CHECK_FALSE(g.has_edge(4, 6));
  }
  SUBCASE("both corners tied is a reportable dead end") {
    Graph g = base.add_edge(5, 6).add_edge(4, 6);
    CHECK_THROWS_AS(routing(g, s, 0, 6), GuardFailure);
  }
  SUBCASE("a dropped neighbor on the system is rejected") {
    CHECK_THROWS_AS(routing(base, s, 0, 4), PreconditionViolated);
  }
}

TEST_CASE("half-and-half coloring of the plain quadruple") {
  Graph g = fixtures::complete(4);
  Subdivision s = direct_system();
  auto col = two_color(s);
  REQUIRE(col.path_color.size() == 6);
  CHECK(std::count(col.path_color.begin(), col.path_color.end(), kRed) == 3);
  REQUIRE(col.end_color.size() == 4);
  for (int color : {kRed, kBlue}) {
    std::vector<Edge> es;
    for (int pi = 0; pi < 6; ++pi)
      if (col.path_color[pi] == color)
        es.push_back(mk_edge(s.paths[pi][0], s.paths[pi][1]));
    CHECK(classify_class(es).kind == ClassKind::Path);
  }
}

TEST_CASE("a far path can be steered away from an end") {
  Subdivision s = direct_system();
  int pi = path_between(s, 2, 3);
  TwoColorConstraints want;
  want.avoid_path_color.push_back({0, pi});
  auto col = two_color(s, want);
  CHECK(col.end_color.at(0) != col.path_color[pi]);

  SUBCASE("two far paths at once") {
    want.avoid_path_color.push_back({1, path_between(s, 0, 2)});
    auto col2 = two_color(s, want);
    CHECK(col2.end_color.at(0) != col2.path_color[pi]);
    CHECK(col2.end_color.at(1) != col2.path_color[path_between(s, 0, 2)]);
  }
}

TEST_CASE("end pins can be unsatisfiable") {
  Subdivision s = direct_system();
  TwoColorConstraints want;
  for (int r = 0; r < 4; ++r) want.require_end_color[r] = kRed;
  CHECK_THROWS_AS(two_color(s, want), Unsatisfiable);
}

TEST_CASE("coloring a contact system keeps the crossing paths apart") {
  std::vector<std::pair<int, int>> es = {{0, 1}, {2, 3}, {0, 4}, {4, 2}, {0, 5},
                                         {5, 2}, {1, 4}, {4, 3}, {1, 6}, {6, 3}};
  Graph g = Graph::from_edges(7, es);
  Subdivision s;
  s.kind = SubdivisionKind::C4Contact;
  s.roots = {0, 1, 2, 3};
  s.paths = {{0, 1}, {2, 3}, {0, 4, 2}, {0, 5, 2}, {1, 4, 3}, {1, 6, 3}};
  s.contact = 4;
  REQUIRE(validate_subdivision(g, s).ok);
  auto col = two_color(s);
  CHECK(col.path_color[2] != col.path_color[4]);
}

TEST_CASE("problem survey on the plain quadruple") {
  Graph g = fixtures::complete(4);
  auto rep = classify_problems(g, direct_system());
  CHECK(rep.distant.empty());
  CHECK(rep.close_groups.empty());
  CHECK(rep.settled == std::vector<int>{0, 1, 2, 3});
  CHECK(rep.patterns.at(0) == "fork");
}

TEST_CASE("problem survey: far triangle") {
  std::vector<std::pair<int, int>> es = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3},
                                         {2, 7}, {7, 3}, {0, 7}, {0, 8}, {7, 8}};
  Graph g = Graph::from_edges(9, es);
  Subdivision s = direct_system();
  s.paths[5] = {2, 7, 3};
  REQUIRE(validate_subdivision(g, s).ok);
  auto rep = classify_problems(g, s);
  REQUIRE(rep.distant.size() == 1);
  CHECK(rep.distant[0].root == 0);
  CHECK(rep.distant[0].path_index == 5);
  CHECK(rep.distant[0].triangle == std::pair<int, int>{7, 8});
  CHECK(rep.patterns.at(0) == "tri");
  CHECK(rep.settled == std::vector<int>{1, 2, 3});
}

TEST_CASE("problem survey: entangled pair") {
  std::vector<std::pair<int, int>> es = {{4, 0}, {4, 1}, {5, 0}, {6, 1}, {4, 5}, {4, 6}};
  for (auto e : frame_edges()) es.push_back(e);
  es.push_back({0, 1});
  Graph g = Graph::from_edges(7, es);
  auto rep = classify_problems(g, direct_system());
  CHECK(rep.distant.empty());
  REQUIRE(rep.close_groups.size() == 1);
  CHECK(rep.close_groups[0] == std::vector<int>{0, 1});
  CHECK(rep.settled == std::vector<int>{2, 3});
  CHECK(rep.patterns.at(0) == "tri");
}

TEST_CASE("validation catches broken systems") {
  Graph g = fixtures::complete(4);
  SUBCASE("missing paths") {
    Subdivision s = direct_system();
    s.paths.pop_back();
    CHECK_FALSE(validate_subdivision(g, s).ok);
  }
  SUBCASE("edge used twice") {
    Subdivision s = direct_system();
    s.paths[5] = {2, 0, 3};
    CHECK_FALSE(validate_subdivision(g, s).ok);
  }
  SUBCASE("interior family vertex") {
    Graph h = fixtures::octahedron();
    auto s = find_rooted_k4(h, {0, 1, 2, 3});
    REQUIRE(s.has_value());
    Subdivision bad = *s;
    bad.paths[0] = {0, 2, 1};
    CHECK_FALSE(validate_subdivision(h, bad).ok);
  }
  SUBCASE("shared interior vertex without contact kind") {
    std::vector<std::pair<int, int>> es = {{0, 1}, {2, 3}, {0, 4}, {4, 2}, {0, 5},
                                           {5, 2}, {1, 4}, {4, 3}, {1, 6}, {6, 3}};
    Graph h = Graph::from_edges(7, es);
    Subdivision s;
    s.kind = SubdivisionKind::C4Doubled;
    s.roots = {0, 1, 2, 3};
    s.paths = {{0, 1}, {2, 3}, {0, 4, 2}, {0, 5, 2}, {1, 4, 3}, {1, 6, 3}};
    CHECK_FALSE(validate_subdivision(h, s).ok);
  }
}

TEST_CASE("star rules on the doubled four-cycle") {
  Graph g = rail_graph();
  Subdivision s = find_k_subdivision(g, {0, 1, 2, 3});
  SUBCASE("an unlinked pair must not share a loose neighbor") {
    Graph h = Graph::from_edges(9, [&] {
      auto es = g.edges();
      es.push_back({8, 0});
      es.push_back({8, 3});
      return es;
    }());
    CHECK_FALSE(validate_subdivision(h, s).ok);
  }
  SUBCASE("the finder gives up when every shape is star-dirty") {
    Graph h = Graph::from_edges(9, [&] {
      auto es = g.edges();
      es.push_back({8, 0});
      es.push_back({8, 3});
      return es;
    }());
    CHECK_THROWS_AS(find_k_subdivision(h, {0, 1, 2, 3}), NotFound);
  }
}

TEST_CASE("five-regular host end to end") {
  Graph g = fixtures::icosahedron();
  auto witness = find_configuration(g);
  REQUIRE(witness.kind == ConfigKind::CII);
  Subdivision s = find_k_subdivision(g, witness.four_family);
  CHECK(validate_subdivision(g, s).ok);
  Subdivision t = redirect(g, s);
  CHECK(t.kind == s.kind);
  CHECK(check_properties(g, t).all());
  auto rep = classify_problems(g, t);
  CHECK(rep.patterns.size() == 4);
}

TEST_CASE("drawing contains the system") {
  Graph g = fixtures::octahedron();
  auto s = find_rooted_k4(g, {0, 1, 2, 3});
  REQUIRE(s.has_value());
  auto col = two_color(*s);
  std::string dot = subdivision_dot(g, *s, &col);
  CHECK(dot.find("doublecircle") != std::string::npos);
  CHECK(dot.find("--") != std::string::npos);
  CHECK(dot.find("royalblue") != std::string::npos);
}
