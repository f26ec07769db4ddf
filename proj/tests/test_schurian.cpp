#include <algorithm>

#include "doctest.h"
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

}  // namespace

TEST_CASE("right translations are regular") {
  Group c22 = make_group({2, 2});
  PermGroup gr = right_translations(c22);
  CHECK(gr.order() == BigUint(4));
  for (const Perm& t : gr.elements())
    if (!perm_is_identity(t))
      for (int x = 0; x < 4; ++x) CHECK(t[x] != x);

  CHECK(right_translations(make_group({})).order() == BigUint(1));
  CHECK(right_translations(make_group({2, 3})).order() == BigUint(6));
}

TEST_CASE("orbit srings") {
  Group c22 = make_group({2, 2});
  PermGroup gr = right_translations(c22);
  CHECK(orbit_sring(gr, c22).rank == 4);  // ZG

  Perm cyc{1, 2, 3, 0}, swp{1, 0, 2, 3};
  PermGroup sym(4, {cyc, swp});
  CHECK(orbit_sring(sym, c22).rank == 2);

  std::vector<Perm> gens = gr.generators();
  gens.push_back({0, 1, 3, 2});  // transposition (b ab)
  PermGroup k(4, gens);
  SRing a = orbit_sring(k, c22);
  CHECK(a.partition_string() == "[[0],[1],[2,3]]");

  PermGroup no_translations(4, {swp});
  CHECK_THROWS_AS(orbit_sring(no_translations, c22), std::invalid_argument);
}

TEST_CASE("group automorphism orders match the GL formula") {
  CHECK(group_automorphisms(make_group({2, 2})).order == BigUint(6));
  CHECK(group_automorphisms(make_group({2, 2, 2})).order == BigUint(168));
  CHECK(group_automorphisms(make_group({2, 2, 2, 2})).order == BigUint(20160));
  CHECK(group_automorphisms(make_group({2, 2, 2, 2, 2})).order == BigUint(9999360));
  CHECK(group_automorphisms(make_group({3})).order == BigUint(2));
  CHECK(group_automorphisms(make_group({2, 2, 3})).order == BigUint(12));
  CHECK(group_automorphisms(make_group({4})).order == BigUint(2));  // units mod 4
  CHECK(group_automorphisms(make_group({8})).order == BigUint(4));
  CHECK_THROWS_AS(group_automorphisms(make_group({4, 2})), std::invalid_argument);

  // the generators really generate a group of that order
  for (auto orders : std::vector<std::vector<int>>{{2, 2}, {2, 2, 2}, {2, 2, 2, 2}, {2, 2, 2, 2, 2}, {2, 2, 3}}) {
    GroupAutSet aut = group_automorphisms(make_group(orders));
    CHECK(aut.perm_group().order() == aut.order);
  }
}

TEST_CASE("aut_G fixes every basic set") {
  Group c22 = make_group({2, 2});
  CHECK(aut_G(zg(c22)).order() == BigUint(1));
  CHECK(aut_G(ring(c22, {{0}, {1, 2, 3}})).order() == BigUint(6));

  PermGroup ag = aut_G(ring(c22, {{0}, {1}, {2, 3}}));
  CHECK(ag.order() == BigUint(2));
  for (const Perm& s : ag.elements()) {
    CHECK(s[1] == 1);
    CHECK((s[2] == 2 || s[2] == 3));
  }

  // brute-force cross-check over C2^3: count class-fixing automorphisms
  Group c23 = make_group({2, 2, 2});
  SRing a = ring(c23, {{0}, {1}, {2, 3}, {4, 5}, {6, 7}});
  GroupAutSet all = group_automorphisms(c23);
  int expected = 0;
  for (const Perm& s : all.perm_group().elements()) {
    bool fixes = true;
    for (int x = 0; x < 8 && fixes; ++x)
      if (a.class_of[s[x]] != a.class_of[x]) fixes = false;
    if (fixes) ++expected;
  }
  CHECK(aut_G(a).order() == BigUint(static_cast<std::uint64_t>(expected)));
}

TEST_CASE("cyclotomic rings from automorphism subsets") {
  Group c22 = make_group({2, 2});
  CHECK(cyclotomic_ring(c22, {}).rank == 4);  // trivial group of automorphisms

  GroupAutSet gl = group_automorphisms(c22);
  CHECK(cyclotomic_ring(c22, gl.gens).rank == 2);

  Perm swap_coords{0, 2, 1, 3};
  SRing swapped = cyclotomic_ring(c22, {swap_coords});
  CHECK(swapped.partition_string() == "[[0],[1,2],[3]]");

  // cyc(K,G) = V(G_r K, G)
  std::vector<Perm> gens = translation_generators(c22);
  gens.push_back(swap_coords);
  CHECK(orbit_sring(PermGroup(4, gens), c22).same_partition(swapped));

  CHECK_THROWS_AS(cyclotomic_ring(c22, {Perm{1, 0, 2, 3}}), std::invalid_argument);
}

TEST_CASE("normality") {
  Group c22 = make_group({2, 2});
  CHECK(is_normal(zg(c22)));
  CHECK(is_normal(ring(c22, {{0}, {1, 2, 3}})));  // 24 = 4 * 6
  CHECK(is_normal(ring(c22, {{0}, {1}, {2, 3}})));  // 8 = 4 * 2
}

TEST_CASE("schurity") {
  Group c22 = make_group({2, 2});
  CHECK(is_schurian(zg(c22)));
  CHECK(is_schurian(ring(c22, {{0}, {1, 2, 3}})));
  CHECK(is_schurian(ring(c22, {{0}, {1}, {2, 3}})));
}

TEST_CASE("two-closure is a closure operator") {
  Group c22 = make_group({2, 2});
  PermGroup gr = right_translations(c22);
  PermGroup cl = two_closure(gr, c22);
  CHECK(cl.order() == BigUint(4));  // translations are 2-closed

  std::vector<Perm> gens = gr.generators();
  gens.push_back({0, 1, 3, 2});
  PermGroup k(4, gens);
  CHECK(k.order() == BigUint(8));
  PermGroup k2 = two_closure(k, c22);
  CHECK(k2.order() == BigUint(8));

  // A4 contains the Klein translations; its orbit ring has rank 2
  PermGroup a4(4, {{1, 2, 0, 3}, {0, 2, 3, 1}});
  PermGroup a4cl = two_closure(a4, c22);
  CHECK(a4cl.order() == BigUint(24));

  // extensive + idempotent on these cases
  for (const Perm& p : k.generators()) CHECK(k2.contains(p));
  CHECK(two_closure(k2, c22).order() == k2.order());
}

TEST_CASE("cyclotomicity") {
  Group c22 = make_group({2, 2});
  CHECK(is_cyclotomic(zg(c22)));
  CHECK(is_cyclotomic(ring(c22, {{0}, {1}, {2, 3}})));
  CHECK(is_cyclotomic(ring(c22, {{0}, {1, 2, 3}})));
}

TEST_CASE("cayley minimality") {
  Group c22 = make_group({2, 2});
  CHECK(is_cayley_minimal(zg(c22)));

  Group c23 = make_group({2, 2, 2});
  // iterated wreath chain: classes 1,1,2,4
  SRing chain = ring(c23, {{0}, {1}, {2, 3}, {4, 5, 6, 7}});
  CHECK(is_cyclotomic(chain));
  CHECK_FALSE(is_cayley_minimal(chain));

  SRing fibers = ring(c23, {{0}, {1}, {2, 3}, {4, 5}, {6, 7}});
  CHECK(is_cayley_minimal(fibers));
}

TEST_CASE("orbit ring of the automorphism group refines into the ring") {
  // V(Aut(A),G) >= A as rings: the orbit partition coarsens the classes
  Group c23 = make_group({2, 2, 2});
  for (auto classes : std::vector<std::vector<std::vector<int>>>{
           {{0}, {1}, {2, 3}, {4, 5, 6, 7}},
           {{0}, {1, 2, 4}, {3, 5, 6}, {7}},
           {{0}, {1, 2, 3, 4, 5, 6, 7}},
       }) {
    SRing a = ring(c23, classes);
    SRing v = orbit_sring(sring_automorphisms(a), c23);
    for (const auto& cls : v.classes) {
      int target = a.class_of[cls[0]];
      for (int x : cls) CHECK(a.class_of[x] == target);
    }
  }
}

TEST_CASE("aut_G restricts into the section automorphisms") {
  // for every class representative over C2^4 and every section U/L of
  // A-subgroups, the restriction of a class-fixing group automorphism is a
  // class-fixing automorphism of the section ring
  Group c24 = make_group({2, 2, 2, 2});
  for (auto classes : std::vector<std::vector<std::vector<int>>>{
           {{0}, {1}, {2, 3}, {4, 5}, {6, 7}, {8, 9, 10, 11}, {12, 13, 14, 15}},
           {{0}, {1}, {2, 3}, {4, 5, 6, 7}, {8, 9, 10, 11, 12, 13, 14, 15}},
       }) {
    SRingPartition p;
    p.group = c24;
    p.classes = classes;
    SRing a = validate(p);
    std::vector<Perm> ag = aut_G(a).generators();
    auto subs = a_subgroups(a);
    for (const Subgroup& u : subs)
      for (const Subgroup& l : subs) {
        if (!l.mask.subset_of(u.mask)) continue;
        Section s = make_section(u, l);
        SRing q = quotient_ring(a, s);
        for (const Perm& sigma : ag) {
          // induced map on the section
          Perm bar(s.quotient.size);
          for (int i = 0; i < s.quotient.size; ++i) bar[i] = s.pi(sigma[s.rep[i]]);
          REQUIRE(perm_valid(bar));
          for (int x = 0; x < s.quotient.size; ++x)
            for (int y = 0; y < s.quotient.size; ++y)
              CHECK(bar[s.quotient.mul(x, y)] == s.quotient.mul(bar[x], bar[y]));
          for (int x = 0; x < s.quotient.size; ++x)
            CHECK(q.class_of[bar[x]] == q.class_of[x]);
        }
      }
  }
}
