#include <algorithm>

#include "doctest.h"
#include "srlab/perm.hpp"

using namespace srlab;

TEST_CASE("schreier-sims on symmetric and small groups") {
  // S4 from a transposition and a 4-cycle
  PermGroup s4(4, {{1, 0, 2, 3}, {1, 2, 3, 0}});
  CHECK(s4.order() == BigUint(24));
  CHECK(s4.contains({3, 2, 1, 0}));
  CHECK(s4.elements().size() == 24);

  PermGroup klein(4, {{1, 0, 3, 2}, {2, 3, 0, 1}});
  CHECK(klein.order() == BigUint(4));
  CHECK_FALSE(klein.contains({1, 0, 2, 3}));

  PermGroup trivial(5);
  CHECK(trivial.order() == BigUint(1));
  CHECK(trivial.contains(perm_identity(5)));

  PermGroup s8(8, {{1, 0, 2, 3, 4, 5, 6, 7}, {1, 2, 3, 4, 5, 6, 7, 0}});
  CHECK(s8.order() == BigUint(40320));

  // alternating group on 4 points: two 3-cycles
  PermGroup a4(4, {{1, 2, 0, 3}, {0, 2, 3, 1}});
  CHECK(a4.order() == BigUint(12));
  CHECK_FALSE(a4.contains({1, 0, 2, 3}));
}

TEST_CASE("point stabilizers via base hints") {
  PermGroup s4(4, {{1, 0, 2, 3}, {1, 2, 3, 0}}, {0});
  REQUIRE(s4.base_point(0) == 0);
  auto stab = s4.point_stabilizer_generators(0);
  PermGroup s3(4, stab);
  CHECK(s3.order() == BigUint(6));
  for (const auto& p : stab) CHECK(p[0] == 0);

  // orbit-stabilizer: 24 = 4 * 6
  CHECK(s4.orbit_at(0).size() == 4);
}

TEST_CASE("perm utilities") {
  Perm a{1, 2, 0};
  Perm b{0, 2, 1};
  CHECK(perm_compose(a, b) == Perm{2, 1, 0});
  CHECK(perm_compose(a, perm_inverse(a)) == perm_identity(3));
  CHECK(perm_valid(a));
  CHECK_FALSE(perm_valid(Perm{0, 0, 1}));
  CHECK(perm_conjugate(Perm{1, 0, 2}, Perm{0, 2, 1}) == Perm{2, 1, 0});
}

TEST_CASE("orbits_of partitions the domain") {
  auto orb = orbits_of(6, {{1, 0, 2, 3, 4, 5}, {0, 1, 3, 2, 4, 5}});
  CHECK(orb == std::vector<std::vector<int>>{{0, 1}, {2, 3}, {4}, {5}});
}

TEST_CASE("kernel of block action") {
  // D4 = <(0123), (13)> acting on the square, blocks = diagonals
  PermGroup d4(4, {{1, 2, 3, 0}, {0, 3, 2, 1}});
  CHECK(d4.order() == BigUint(8));
  auto kernel_gens = kernel_of_block_action(d4, {{0, 2}, {1, 3}});
  PermGroup kernel(4, kernel_gens);
  CHECK(kernel.order() == BigUint(4));  // <(02),(13)>
  for (const auto& g : kernel.generators()) {
    CHECK((g[0] == 0 || g[0] == 2));
    CHECK((g[1] == 1 || g[1] == 3));
  }

  // blocks must be preserved
  CHECK_THROWS_AS(kernel_of_block_action(d4, {{0, 1}, {2, 3}}),
                  std::invalid_argument);
}

TEST_CASE("factorial orders stay exact") {
  // Sym(16) via cycle + transposition; order is 16!
  int n = 16;
  Perm cyc(n), swp = perm_identity(n);
  for (int i = 0; i < n; ++i) cyc[i] = (i + 1) % n;
  std::swap(swp[0], swp[1]);
  PermGroup s(n, {cyc, swp});
  CHECK(s.order().to_string() == "20922789888000");
}
