// The atoms-side presentation of idempotent locally integral algebras:
// dualize/primalize round trips, validation of dual systems, and the
// equivalence of the five idempotent characterizations.

#include <doctest.h>

#include <random>
#include <set>
#include <string>
#include <vector>

#include "core/canonical.hpp"
#include "core/duality.hpp"
#include "core/enumerate.hpp"
#include "fixtures.hpp"

using namespace ipos;
using namespace ipos::fixtures;

namespace {

/// The seven-element glueing of 1 -> 2 -> 2^2 up a three-node chain.
Algebra seven_chain() {
  const auto shells = enumerate_join_semilattices(3);
  for (const Algebra& s : shells)
    if (cover_pairs(s) == std::vector<std::pair<int, int>>{{1, 0}, {2, 1}}) {
      const auto sys = assemble_system(
          s, {powerset_algebra(2), powerset_algebra(1), powerset_algebra(0)}, {{1, 3}, {1}});
      REQUIRE(sys.has_value());
      return glue(*sys).algebra;
    }
  FAIL("three-node chain shell not found");
  return {};
}

}  // namespace

TEST_CASE("the diamond dualizes to two empty fibers under one atom") {
  const DualSystem d = dualize(loc_int_diamond4());
  CHECK(d.d_size == 3);
  CHECK(d.join == std::vector<int>{0, 2, 2, 2, 1, 2, 2, 2, 2});
  CHECK(d.atoms == std::vector<int>{0, 0, 1});
  CHECK(d.map(0, 2) == std::vector<int>{-1});
  CHECK(d.map(1, 2) == std::vector<int>{-1});
  CHECK(d.map(2, 2) == std::vector<int>{0});
  CHECK(d.map(0, 1).empty());
  CHECK_NOTHROW(require_dual_system(d));
}

TEST_CASE("the seven-element chain glueing has fully partial long maps") {
  const DualSystem d = dualize(seven_chain());
  CHECK(d.d_size == 3);
  CHECK(d.atoms == std::vector<int>{2, 1, 0});
  // Nodes run top-down: 2 <= 1 <= 0 with the powerset of two atoms on top.
  CHECK(d.node_le(2, 1));
  CHECK(d.node_le(1, 0));
  CHECK(d.map(1, 0) == std::vector<int>{-1, 0});
  CHECK(d.map(2, 1) == std::vector<int>{-1});
  CHECK(d.map(2, 0) == std::vector<int>{-1, -1});
  CHECK_NOTHROW(require_dual_system(d));
}

TEST_CASE("a Boolean algebra is its own single-node dual") {
  const DualSystem d = dualize(bool4());
  CHECK(d.d_size == 1);
  CHECK(d.atoms == std::vector<int>{2});
  CHECK(d.map(0, 0) == std::vector<int>{0, 1});
  const Algebra back = primalize(d);
  CHECK(canonical_key(back) == canonical_key(bool4()));
}

TEST_CASE("dualize rejects inputs outside its class with a named reason") {
  CHECK_THROWS_AS(dualize(l3()), NotIdempotentLocIntegral);
  try {
    dualize(l3());
  } catch (const NotIdempotentLocIntegral& e) {
    CHECK(std::string(e.what()).find("not idempotent") != std::string::npos);
  }
  CHECK_THROWS_AS(dualize(two_group_discrete()), NotIdempotentLocIntegral);
  CHECK_THROWS_AS(dualize(commutative_noncyclic5()), NotIdempotentLocIntegral);
}

TEST_CASE("the primal system rebuilds powerset components of the right sizes") {
  const DualSystem d = dualize(seven_chain());
  const DirectedSystem sys = primal_system(d);
  REQUIRE(sys.d_size == 3);
  for (int p = 0; p < 3; ++p) {
    CHECK(sys.components[p].algebra.n == (1 << d.atoms[p]));
    CHECK(is_boolean_algebra(sys.components[p].algebra));
  }
  CHECK(glue(sys).defects.empty());
  CHECK(system_size(sys) == 7);
}

TEST_CASE("primalize then dualize is the identity on every small semilattice") {
  for (int n = 1; n <= 6; ++n) {
    const auto res = enumerate_class(AlgebraClass::ipo_semilattice, n, true);
    for (const Algebra& a : *res.representatives) {
      const Algebra back = primalize(dualize(a));
      CHECK(back.n == a.n);
      CHECK(canonical_key(back) == canonical_key(a));
    }
  }
}

TEST_CASE("dualize then primalize is the identity on generated dual systems") {
  std::mt19937 rng(20260822);
  for (int round = 0; round < 200; ++round) {
    const DualSystem d = random_dual_system(rng);
    CHECK_NOTHROW(require_dual_system(d));
    const DualSystem back = dualize(primalize(d));
    CHECK(dual_systems_isomorphic(d, back));
  }
}

TEST_CASE("generation is deterministic per seed") {
  std::mt19937 a(99), b(99);
  for (int round = 0; round < 20; ++round) CHECK(random_dual_system(a) == random_dual_system(b));
}

TEST_CASE("structural validation of dual systems names each failure") {
  DualSystem d = dualize(seven_chain());

  SUBCASE("intact input passes") { CHECK_NOTHROW(require_dual_system(d)); }

  // A chain with atoms to spare at every level, for targeted corruption.
  DualSystem c;
  c.d_size = 3;
  c.join = {0, 0, 0, 0, 1, 1, 0, 1, 2};  // 2 <= 1 <= 0
  c.atoms = {2, 1, 1};
  c.pmap.assign(9, {});
  c.pmap[0 * 3 + 0] = {0, 1};
  c.pmap[1 * 3 + 1] = {0};
  c.pmap[2 * 3 + 2] = {0};
  c.pmap[1 * 3 + 0] = {-1, 0};
  c.pmap[2 * 3 + 1] = {-1};
  c.pmap[2 * 3 + 0] = {-1, -1};

  SUBCASE("the spare chain passes intact") { CHECK_NOTHROW(require_dual_system(c)); }

  SUBCASE("a total off-diagonal map betrays a hit zero") {
    c.pmap[2 * 3 + 1] = {0};
    c.pmap[2 * 3 + 0] = {-1, 0};  // still the correct composite
    try {
      require_dual_system(c);
      FAIL("expected a structural rejection");
    } catch (const StructuralError& e) {
      CHECK(std::string(e.what()).find("total off the diagonal") != std::string::npos);
    }
  }
  SUBCASE("maps must compose along chains") {
    c.pmap[2 * 3 + 0] = {0, -1};  // disagrees with the composite at atom 0
    try {
      require_dual_system(c);
      FAIL("expected a structural rejection");
    } catch (const StructuralError& e) {
      CHECK(std::string(e.what()).find("compose") != std::string::npos);
    }
  }
  SUBCASE("map lengths follow the target's atom count") {
    d.pmap[1 * 3 + 0] = {-1};
    CHECK_THROWS_AS(require_dual_system(d), StructuralError);
  }
  SUBCASE("map values stay within the source's atoms") {
    d.pmap[1 * 3 + 0] = {1, 0};
    CHECK_THROWS_AS(require_dual_system(d), StructuralError);
  }
  SUBCASE("atom counts cannot be negative") {
    d.atoms[1] = -1;
    CHECK_THROWS_AS(require_dual_system(d), StructuralError);
  }
  SUBCASE("the node table must be a join-semilattice") {
    d.join[1] = 2;
    CHECK_THROWS_AS(require_dual_system(d), StructuralError);
  }
  SUBCASE("diagonal maps are identities") {
    d.pmap[0 * 3 + 0] = {1, 0};
    CHECK_THROWS_AS(require_dual_system(d), StructuralError);
  }
  SUBCASE("maps may only join comparable nodes") {
    d.pmap[0 * 3 + 1] = {-1};  // 0 is above 1, not below
    CHECK_THROWS_AS(require_dual_system(d), StructuralError);
  }
}

TEST_CASE("every structurally valid small dual system primalizes cleanly") {
  // Exhaustive over two-node chains with up to three atoms per node: the
  // structural conditions already characterize the image of dualize, so no
  // defects can appear downstream.
  int checked = 0;
  for (int a0 = 0; a0 <= 3; ++a0)
    for (int a1 = 0; a1 <= 3; ++a1) {
      // node 1 below node 0, matching the shell orientation elsewhere.
      DualSystem d;
      d.d_size = 2;
      d.join = {0, 0, 0, 1};
      d.atoms = {a0, a1};
      d.pmap.assign(4, {});
      d.pmap[0] = std::vector<int>(a0);
      for (int b = 0; b < a0; ++b) d.pmap[0][b] = b;
      d.pmap[3] = std::vector<int>(a1);
      for (int b = 0; b < a1; ++b) d.pmap[3][b] = b;
      // every candidate map from the lower node's fiber into the upper's
      std::vector<int> f(a0, -1);
      while (true) {
        d.pmap[1 * 2 + 0] = f;
        bool valid = true;
        try {
          require_dual_system(d);
        } catch (const StructuralError&) {
          valid = false;
        }
        if (valid) {
          ++checked;
          Algebra alg;
          CHECK_NOTHROW(alg = primalize(d));
          CHECK(alg.n == (1 << a0) + (1 << a1));
          CHECK(check_ipo(alg).locally_integral);
        }
        int i = 0;
        while (i < a0 && f[i] == a1 - 1) f[i++] = -1;
        if (i == a0) break;
        ++f[i];
      }
    }
  CHECK(checked > 20);
}

TEST_CASE("dual system isomorphism sees through relabelling") {
  const DualSystem d = dualize(seven_chain());

  // Relabel nodes (reverse the chain) and the atoms of the top fiber.
  DualSystem r;
  r.d_size = 3;
  r.join = {0, 1, 2, 1, 1, 2, 2, 2, 2};  // now 0 <= 1 <= 2
  r.atoms = {0, 1, 2};
  r.pmap.assign(9, {});
  r.pmap[1 * 3 + 1] = {0};
  r.pmap[2 * 3 + 2] = {0, 1};
  r.pmap[0 * 3 + 1] = {-1};
  r.pmap[0 * 3 + 2] = {-1, -1};
  r.pmap[1 * 3 + 2] = {0, -1};  // atoms of the top swapped relative to d
  CHECK_NOTHROW(require_dual_system(r));
  CHECK(dual_systems_isomorphic(d, r));
  CHECK(dual_systems_isomorphic(r, d));

  CHECK_FALSE(dual_systems_isomorphic(d, dualize(loc_int_diamond4())));
  CHECK_FALSE(dual_systems_isomorphic(d, dualize(bool4())));
  CHECK(dual_systems_isomorphic(d, d));
}

TEST_CASE("the multiplicative order of the diamond") {
  const std::vector<uint8_t> mo = multiplicative_order(loc_int_diamond4());
  CHECK(mo == std::vector<uint8_t>{1, 1, 1, 1, 0, 1, 0, 0, 0, 0, 1, 0, 0, 1, 1, 1});

  // On a Boolean algebra the multiplicative order is the lattice order.
  CHECK(multiplicative_order(bool4()) == bool4().leq);

  CHECK_THROWS_AS(multiplicative_order(l3()), StructuralError);
  try {
    multiplicative_order(l3());
  } catch (const StructuralError& e) {
    CHECK(std::string(e.what()).find("1") != std::string::npos);  // names element a
  }
}

TEST_CASE("the five idempotent characterizations agree on every small algebra") {
  for (int n = 1; n <= 4; ++n) {
    for (const Algebra& a : enumerate_direct(n, DirectOptions{.integral = false,
                                                              .idempotent = true})) {
      const ClassReport r = check_ipo(a);
      REQUIRE(r.idempotent);
      bool balanced = true;
      for (int x = 0; x < a.n && balanced; ++x)
        balanced = a.prod(a.mns(x), x) == a.prod(x, a.tld(x));
      bool boolean_components = r.locally_integral;
      if (boolean_components)
        for (const IntegralComponent& c : decompose(a).components)
          boolean_components = boolean_components && is_boolean_algebra(c.algebra);
      CHECK(balanced == r.commutative);
      CHECK(balanced == r.has_local_identities);
      CHECK(balanced == r.cyclic);
      CHECK(balanced == boolean_components);
    }
  }
}

TEST_CASE("fiber maps of a primal system are sup-preserving algebra maps") {
  for (int n = 1; n <= 5; ++n) {
    const auto res = enumerate_class(AlgebraClass::ipo_semilattice, n, true);
    for (const Algebra& alg : *res.representatives) {
      const DirectedSystem sys = primal_system(dualize(alg));
      for (int p = 0; p < sys.d_size; ++p)
        for (int q = 0; q < sys.d_size; ++q) {
          if (p == q || !sys.node_le(p, q)) continue;
          const Algebra& ap = sys.components[p].algebra;
          const Algebra& aq = sys.components[q].algebra;
          const std::vector<int>& f = sys.map(p, q);
          CHECK(f[sys.local_unit(p)] == sys.local_unit(q));
          for (int x = 0; x < ap.n; ++x)
            for (int y = 0; y < ap.n; ++y) {
              CHECK(f[ap.prod(x, y)] == aq.prod(f[x], f[y]));          // meet
              CHECK(f[plus_op(ap, x, y)] == plus_op(aq, f[x], f[y]));  // join
              CHECK(f[residual_right(ap, x, y)] ==
                    residual_right(aq, f[x], f[y]));  // relative complement
            }
        }
    }
  }
}
