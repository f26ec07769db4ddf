#include <algorithm>

#include "doctest.h"
#include "srlab/colorgraph.hpp"
#include "srlab/schurian.hpp"

using namespace srlab;

namespace {

SRing ring(const Group& g, std::vector<std::vector<int>> classes) {
  SRingPartition p;
  p.group = g;
  p.classes = std::move(classes);
  return validate(p);
}

SRing zg(const Group& g) {
  std::vector<std::vector<int>> cls;
  for (int x = 0; x < g.size; ++x) cls.push_back({x});
  return ring(g, std::move(cls));
}

// number of color automorphisms by scanning all permutations; degree <= 8
int brute_aut_count(const ColorGraph& c) {
  REQUIRE(c.n <= 8);
  Perm p = perm_identity(c.n);
  int count = 0;
  do {
    bool ok = true;
    for (int u = 0; u < c.n && ok; ++u)
      for (int v = 0; v < c.n && ok; ++v)
        if (c.at(u, v) != c.at(p[u], p[v])) ok = false;
    if (ok) ++count;
  } while (std::next_permutation(p.begin(), p.end()));
  return count;
}

}  // namespace

TEST_CASE("color graph layout") {
  Group c22 = make_group({2, 2});
  SRing a = ring(c22, {{0}, {1}, {2, 3}});
  ColorGraph c = color_graph(a);
  for (int v = 0; v < 4; ++v) CHECK(c.at(v, v) == 0);
  CHECK(c.at(0, 1) == a.class_of[1]);
  CHECK(c.at(1, 0) == a.class_of[1]);  // inverse-closed class
  CHECK(c.at(0, 2) == a.class_of[2]);
}

TEST_CASE("automorphism groups over C2^2") {
  Group c22 = make_group({2, 2});
  auto seeds = translation_generators(c22);

  PermGroup aut_zg = automorphisms(color_graph(zg(c22)), seeds);
  CHECK(aut_zg.order() == BigUint(4));

  PermGroup aut_r2 = automorphisms(color_graph(ring(c22, {{0}, {1, 2, 3}})), seeds);
  CHECK(aut_r2.order() == BigUint(24));

  SRing r3 = ring(c22, {{0}, {1}, {2, 3}});
  PermGroup aut_r3 = automorphisms(color_graph(r3), seeds);
  CHECK(aut_r3.order() == BigUint(8));
  CHECK(brute_aut_count(color_graph(r3)) == 8);

  // automorphisms work without the seed as well
  CHECK(automorphisms(color_graph(r3)).order() == BigUint(8));
}

TEST_CASE("automorphism order against brute force over C2^3") {
  Group c23 = make_group({2, 2, 2});
  for (auto classes : std::vector<std::vector<std::vector<int>>>{
           {{0}, {1}, {2, 3}, {4, 5, 6, 7}},
           {{0}, {1}, {2, 3}, {4, 5}, {6, 7}},
           {{0}, {1, 2, 4}, {3, 5, 6}, {7}},
       }) {
    SRing a = ring(c23, classes);
    ColorGraph c = color_graph(a);
    PermGroup aut = automorphisms(c, translation_generators(c23));
    CHECK(aut.order() == BigUint(static_cast<std::uint64_t>(brute_aut_count(c))));
  }
}

TEST_CASE("refinement examples") {
  Group c22 = make_group({2, 2});

  ColorGraph czg = color_graph(zg(c22));
  auto cells = refine(czg, {});
  CHECK(cells.size() == 1);  // vertex-transitive
  CHECK(refine(czg, {0}).size() == 4);  // discrete

  ColorGraph cr2 = color_graph(ring(c22, {{0}, {1, 2, 3}}));
  auto cells2 = refine(cr2, {1});
  CHECK(cells2.size() == 2);
  CHECK(cells2[0] == std::vector<int>{0, 2, 3});
  CHECK(cells2[1] == std::vector<int>{1});

  ColorGraph cr3 = color_graph(ring(c22, {{0}, {1}, {2, 3}}));
  auto cells3 = refine(cr3, {0});
  REQUIRE(cells3.size() == 3);
  CHECK(cells3[0] == std::vector<int>{0});
  CHECK(cells3[1] == std::vector<int>{1});
  CHECK(cells3[2] == std::vector<int>{2, 3});
}

TEST_CASE("sring isomorphism with color matching") {
  Group c22 = make_group({2, 2});
  SRing a = ring(c22, {{0}, {1}, {2, 3}});
  SRing b = ring(c22, {{0}, {2}, {1, 3}});
  SRing c = ring(c22, {{0}, {3}, {1, 2}});

  IsoResult self = sring_isomorphism(a, a);
  CHECK(self.found);

  for (auto [x, y] : std::vector<std::pair<SRing, SRing>>{{a, b}, {a, c}, {b, c}}) {
    IsoResult r = sring_isomorphism(x, y);
    REQUIRE(r.found);
    ColorGraph g1 = color_graph(x), g2 = color_graph(y);
    for (int u = 0; u < g1.n; ++u)
      for (int v = 0; v < g1.n; ++v)
        CHECK(r.color_map[g1.at(u, v)] == g2.at(r.map[u], r.map[v]));
  }

  CHECK_FALSE(sring_isomorphism(zg(c22), ring(c22, {{0}, {1, 2, 3}})).found);
}

TEST_CASE("digraph isomorphism for cayley graphs") {
  Group c23 = make_group({2, 2, 2});
  ColorGraph g1 = cayley_color_graph(c23, {1, 2, 4});
  // relabel by a group automorphism: swap the last two coordinates
  ColorGraph g2 = cayley_color_graph(c23, {2, 1, 4});
  auto f = digraph_isomorphism(g1, g2);
  REQUIRE(f.has_value());
  for (int u = 0; u < 8; ++u)
    for (int v = 0; v < 8; ++v) CHECK(g1.at(u, v) == g2.at((*f)[u], (*f)[v]));

  ColorGraph g3 = cayley_color_graph(c23, {1, 2});
  CHECK_FALSE(digraph_isomorphism(g1, g3).has_value());

  CHECK(digraph_isomorphism(g1, g1).has_value());
}

TEST_CASE("large symmetric automorphism groups stay exact") {
  Group c25 = make_group({2, 2, 2, 2, 2});
  std::vector<int> rest;
  for (int x = 1; x < 32; ++x) rest.push_back(x);
  SRing r2 = ring(c25, {{0}, rest});
  PermGroup aut = automorphisms(color_graph(r2), translation_generators(c25));
  CHECK(aut.order().to_string() == "263130836933693530167218012160000000");  // 32!
}
