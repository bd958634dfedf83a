// Decomposition of locally integral algebras into directed systems of
// integral components, and the structural checks on such systems.

#include <doctest.h>

#include <vector>

#include "core/decompose.hpp"
#include "core/glue.hpp"
#include "fixtures.hpp"

using namespace ipos;
using namespace ipos::fixtures;

TEST_CASE("the diamond decomposes into two points under a two-chain") {
  const DirectedSystem s = decompose(loc_int_diamond4());
  REQUIRE(s.d_size == 3);
  // Nodes p, q are minimal; node 2 (holding bottom and top) is the join.
  CHECK(s.join == std::vector<int>{0, 2, 2, 2, 1, 2, 2, 2, 2});
  CHECK(s.minimum_node() == -1);

  REQUIRE(s.components.size() == 3);
  CHECK(s.components[0].carrier == std::vector<int>{1});
  CHECK(s.components[1].carrier == std::vector<int>{2});
  CHECK(s.components[2].carrier == std::vector<int>{0, 3});
  CHECK(s.components[2].algebra.unit == 1);  // top, locally
  CHECK(s.local_zero(2) == 0);

  // Both maps into the join collapse the point onto the local unit.
  CHECK(s.map(0, 2) == std::vector<int>{1});
  CHECK(s.map(1, 2) == std::vector<int>{1});
  CHECK(s.map(0, 1).empty());  // incomparable nodes carry no map

  // Global ids are the parent's element ids.
  const auto ids = system_global_ids(s);
  CHECK(ids[0] == std::vector<int>{1});
  CHECK(ids[1] == std::vector<int>{2});
  CHECK(ids[2] == std::vector<int>{0, 3});
  CHECK(system_size(s) == 4);
}

TEST_CASE("every component of a decomposition is an integral ipo-monoid") {
  for (const Algebra& a : {two(), l3(), bool4(), loc_int_diamond4()}) {
    const DirectedSystem s = decompose(a);
    for (const IntegralComponent& c : s.components) {
      const ClassReport r = check_ipo(c.algebra);
      CHECK(r.ipo_semigroup);
      CHECK(r.integral);
      REQUIRE(c.algebra.unit.has_value());
      CHECK(r.discovered_unit == c.algebra.unit);
    }
    CHECK_NOTHROW(require_system(s));
  }
}

TEST_CASE("component_of places each element with its local identity") {
  const Algebra a = loc_int_diamond4();
  CHECK(component_of(a, 0) == component_of(a, 3));
  CHECK(component_of(a, 1) != component_of(a, 2));
  CHECK(component_of(a, 1) != component_of(a, 0));
}

TEST_CASE("decompose rejects algebras that are not locally integral") {
  CHECK_THROWS_AS(decompose(two_group_discrete()), NotLocallyIntegral);
  CHECK_THROWS_AS(decompose(commutative_noncyclic5()), NotLocallyIntegral);
  try {
    decompose(two_group_discrete());
  } catch (const NotLocallyIntegral& e) {
    CHECK(std::string(e.what()).find("square_decreasing") != std::string::npos);
  }
}

TEST_CASE("glueing a decomposition restores the original tables") {
  for (const Algebra& a : {one(), two(), l3(), bool4(), loc_int_diamond4()}) {
    const GlueOutcome g = glue(decompose(a));
    CHECK(g.defects.empty());
    CHECK(g.algebra.n == a.n);
    CHECK(g.algebra.leq == a.leq);
    CHECK(g.algebra.mul == a.mul);
    CHECK(g.algebra.tilde == a.tilde);
    CHECK(g.algebra.minus == a.minus);
  }
}

TEST_CASE("require_system rejects inconsistent families") {
  DirectedSystem s = decompose(loc_int_diamond4());

  SUBCASE("a decomposition passes") { CHECK_NOTHROW(require_system(s)); }

  SUBCASE("join table must be a semilattice") {
    s.join[1] = 1;  // 0 v 1 = 1 but 1 v 0 = 2: not commutative
    CHECK_THROWS_AS(require_system(s), StructuralError);
  }
  SUBCASE("maps must exist exactly for comparable pairs") {
    s.phi[0 * 3 + 2].clear();
    CHECK_THROWS_AS(require_system(s), StructuralError);
  }
  SUBCASE("maps must send unit to unit") {
    s.phi[0 * 3 + 2] = {0};  // point onto the local zero instead
    CHECK_THROWS_AS(require_system(s), IncompatibleFamily);
  }
  SUBCASE("components must be integral monoids") {
    s.components[2].algebra.unit = 0;  // bottom is no identity
    CHECK_THROWS_AS(require_system(s), StructuralError);
  }
}

TEST_CASE("require_system rejects a non-composing triangle") {
  // Chain of three copies of l3 where the direct map 0 -> 2 disagrees with
  // the composite through node 1.
  const Algebra m = l3();
  DirectedSystem s;
  s.d_size = 3;
  s.join = {0, 1, 2, 1, 1, 2, 2, 2, 2};
  for (int p = 0; p < 3; ++p) s.components.push_back({{}, m});
  s.phi.assign(9, {});
  for (int p = 0; p < 3; ++p) s.phi[p * 3 + p] = {0, 1, 2};
  s.phi[0 * 3 + 1] = {0, 1, 2};
  s.phi[1 * 3 + 2] = {0, 1, 2};
  s.phi[0 * 3 + 2] = {0, 2, 2};  // a |-> unit: composes to the identity's a |-> a
  CHECK_THROWS_AS(require_system(s), IncompatibleFamily);
  s.phi[0 * 3 + 2] = {0, 1, 2};
  CHECK_NOTHROW(require_system(s));
}

TEST_CASE("morphism components factor maps through the decompositions") {
  const Algebra a = loc_int_diamond4();
  const DirectedSystem s = decompose(a);

  SUBCASE("the identity restricts to identity tau and eta") {
    const MorphismComponents mc = morphism_components(s, s, {0, 1, 2, 3});
    CHECK(mc.ok);
    CHECK(mc.tau == std::vector<int>{0, 1, 2});
    CHECK(mc.eta[0] == std::vector<int>{0});
    CHECK(mc.eta[2] == std::vector<int>{0, 1});
  }
  SUBCASE("the p/q swap automorphism permutes the two point nodes") {
    const MorphismComponents mc = morphism_components(s, s, {0, 2, 1, 3});
    CHECK(mc.ok);
    CHECK(mc.tau == std::vector<int>{1, 0, 2});
  }
  SUBCASE("a map splitting a component is rejected") {
    // Sending bottom into node p but top to itself cannot restrict.
    CHECK_THROWS_AS(morphism_components(s, s, {1, 1, 2, 3}), StructuralError);
  }
}
