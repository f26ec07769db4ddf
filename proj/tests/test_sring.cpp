#include <random>
#include <vector>

#include "doctest.h"
#include "srlab/sring.hpp"

using namespace srlab;

namespace {

SRing group_ring(const Group& g) {
  SRingPartition p;
  p.group = g;
  for (int x = 0; x < g.size; ++x) p.classes.push_back({x});
  return validate(p);
}

SRing rank3_c22() {
  SRingPartition p;
  p.group = make_group({2, 2});
  p.classes = {{0}, {1}, {2, 3}};
  return validate(p);
}

SRing rank2(const Group& g) {
  SRingPartition p;
  p.group = g;
  p.classes.push_back({0});
  std::vector<int> rest;
  for (int x = 1; x < g.size; ++x) rest.push_back(x);
  p.classes.push_back(rest);
  return validate(p);
}

}  // namespace

TEST_CASE("validate accepts the group ring and small rings") {
  Group c22 = make_group({2, 2});
  CHECK(group_ring(c22).rank == 4);
  CHECK(group_ring(make_group({5})).rank == 5);
  CHECK(rank3_c22().rank == 3);
  CHECK(rank2(c22).rank == 2);
}

TEST_CASE("validate rejects bad partitions") {
  Group c5 = make_group({5});
  SRingPartition p;
  p.group = c5;
  p.classes = {{0}, {1, 2}, {3, 4}};
  // {g,g^2}*{g,g^2} hits g^3 twice but g^4 once
  try {
    validate(p);
    CHECK(false);
  } catch (const ValidationError& e) {
    CHECK(e.kind == ValidationError::NotConstantOnClass);
  }

  SRingPartition q;
  q.group = c5;
  q.classes = {{0}, {1, 4}, {2, 3}};
  CHECK_NOTHROW(validate(q));  // cyclotomic under inversion

  SRingPartition bad;
  bad.group = c5;
  bad.classes = {{0, 1}, {2, 3, 4}};
  CHECK_THROWS_AS(validate(bad), ValidationError);

  SRingPartition notpart;
  notpart.group = c5;
  notpart.classes = {{0}, {1, 2}, {2, 3, 4}};
  CHECK_THROWS_AS(validate(notpart), ValidationError);
}

TEST_CASE("validate reports non-constant products with witnesses") {
  // over C7: {g^1,g^6} and {g^2,g^5} and {g^3,g^4} is an S-ring, but mixing
  // powers unevenly breaks constancy
  Group c7 = make_group({7});
  SRingPartition ok;
  ok.group = c7;
  ok.classes = {{0}, {1, 6}, {2, 5}, {3, 4}};
  CHECK_NOTHROW(validate(ok));

  SRingPartition bad;
  bad.group = c7;
  bad.classes = {{0}, {1, 6}, {2, 3, 4, 5}};
  try {
    validate(bad);
    CHECK(false);
  } catch (const ValidationError& e) {
    CHECK(e.kind == ValidationError::NotConstantOnClass);
    CHECK(e.witness_z1 != e.witness_z2);
  }
}

TEST_CASE("schur closure basic examples") {
  Group c22 = make_group({2, 2});
  SRing a = schur_closure(c22, {{1}});
  CHECK(a.partition_string() == "[[0],[1],[2,3]]");
  SRing b = schur_closure(c22, {{1, 2}});
  CHECK(b.partition_string() == "[[0],[1,2],[3]]");
  SRing c = schur_closure(c22, {});
  CHECK(c.rank == 2);
  SRing trivial = schur_closure(make_group({}), {});
  CHECK(trivial.rank == 1);
}

TEST_CASE("schur closure is idempotent and refines monotonically") {
  Group c23 = make_group({2, 2, 2});
  std::mt19937 rng(12345);
  for (int trial = 0; trial < 40; ++trial) {
    // random seed: a random subset of 1..7
    std::vector<int> seed;
    for (int x = 1; x < 8; ++x)
      if (rng() & 1) seed.push_back(x);
    SRing a = schur_closure(c23, {seed});
    SRing again = schur_closure(c23, a.classes);
    CHECK(a.same_partition(again));

    // refining the seed refines the closure
    if (seed.size() >= 2) {
      std::vector<int> s1(seed.begin(), seed.begin() + seed.size() / 2);
      std::vector<int> s2(seed.begin() + seed.size() / 2, seed.end());
      SRing finer = schur_closure(c23, {s1, s2});
      for (const auto& cls : finer.classes) {
        int target = a.class_of[cls[0]];
        for (int x : cls) CHECK(a.class_of[x] == target);
      }
    }
  }
}

TEST_CASE("a_subgroups") {
  Group c22 = make_group({2, 2});
  CHECK(a_subgroups(group_ring(c22)).size() == 5);
  CHECK(a_subgroups(rank2(c22)).size() == 2);
  auto subs = a_subgroups(rank3_c22());
  CHECK(subs.size() == 3);
  CHECK(subs[1].members == std::vector<int>{0, 1});
}

TEST_CASE("set invariants: span and radical") {
  SRing a = rank3_c22();
  SetInvariants inv = set_invariants(a, {2, 3});
  CHECK(inv.radical.members == std::vector<int>{0, 1});
  CHECK(inv.span.order() == 4);

  SetInvariants whole = set_invariants(a, {0, 1, 2, 3});
  CHECK(whole.radical.order() == 4);
  CHECK(whole.span.order() == 4);

  SetInvariants single = set_invariants(a, {1});
  CHECK(single.radical.order() == 1);
  CHECK(single.span.members == std::vector<int>{0, 1});

  CHECK_THROWS_AS(set_invariants(a, {}), std::invalid_argument);
}

TEST_CASE("thin radical") {
  Group c22 = make_group({2, 2});
  CHECK(thin_radical(group_ring(c22)).order() == 4);
  CHECK(thin_radical(rank2(c22)).order() == 1);
  CHECK(thin_radical(rank3_c22()).members == std::vector<int>{0, 1});
}

TEST_CASE("intersection numbers") {
  SRing a = rank3_c22();
  Subgroup h = make_subgroup(a.group, {0, 1});
  CHECK(intersection_number(a, 2, h) == 2);  // {2,3} inside one coset of {0,1}
  CHECK(intersection_number(a, 1, h) == 1);

  SRing r2 = rank2(make_group({2, 2}));
  CHECK_THROWS_AS(intersection_number(r2, 1, h), std::invalid_argument);
}

TEST_CASE("quotient rings") {
  SRing a = rank3_c22();
  Section s = full_section(a.group, make_subgroup(a.group, {0, 1}));
  SRing q = quotient_ring(a, s);
  CHECK(q.rank == 2);
  CHECK(q.group.size == 2);  // ZC2

  // ZG quotients to Z(U/L) for any section
  Group c23 = make_group({2, 2, 2});
  SRing zg = group_ring(c23);
  for (const Subgroup& l : subgroups(c23)) {
    Section sec = full_section(c23, l);
    SRing ql = quotient_ring(zg, sec);
    CHECK(ql.rank == ql.group.size);
  }

  // degenerate G/G
  SRing r2 = rank2(a.group);
  Section gg = make_section(make_subgroup(a.group, {0, 1, 2, 3}),
                            make_subgroup(a.group, {0, 1, 2, 3}));
  SRing qq = quotient_ring(r2, gg);
  CHECK(qq.rank == 1);
  CHECK(qq.group.size == 1);

  // endpoints must be A-subgroups
  Section bad = full_section(a.group, make_subgroup(a.group, {0, 2}));
  CHECK_THROWS_AS(quotient_ring(a, bad), std::invalid_argument);
}

TEST_CASE("restriction rings") {
  SRing a = rank3_c22();
  Subgroup u = make_subgroup(a.group, {0, 1});
  RestrictedRing r = restrict_ring(a, u);
  CHECK(r.ring.group.size == 2);
  CHECK(r.ring.rank == 2);  // ZC2 on {e,a}
}

TEST_CASE("p-s-ring check and chain") {
  Group c22 = make_group({2, 2});
  auto zg = p_sring_check(group_ring(c22), 2);
  CHECK(zg.is_p);
  CHECK(zg.chain.size() == 3);

  CHECK_FALSE(p_sring_check(rank2(c22), 2).is_p);  // class of size 3

  auto r3 = p_sring_check(rank3_c22(), 2);
  CHECK(r3.is_p);
  REQUIRE(r3.chain.size() == 3);
  CHECK(r3.chain[1].members == std::vector<int>{0, 1});

  // p-power class sizes over a non-p-group: no chain requested
  Group c6 = make_group({2, 3});
  SRing zc6 = group_ring(c6);
  CHECK(p_sring_check(zc6, 2).is_p);  // all singletons are 2^0
  CHECK(p_sring_check(zc6, 2).chain.empty());
}
