// Axioms, derived operations, and classification on the hand-built examples.

#include <doctest.h>

#include <algorithm>
#include <vector>

#include "core/algebra.hpp"
#include "fixtures.hpp"

using namespace ipos;
using namespace ipos::fixtures;

namespace {

/// Checks every flag of a report against an expected word, in declaration
/// order, and that exactly the false flags carry witnesses.
void expect_flags(const ClassReport& r, const std::vector<std::pair<const char*, bool>>& want) {
  for (const auto& [name, value] : want) {
    CAPTURE(name);
    CHECK(r.flag(name) == value);
    CHECK(r.witnesses.count(name) == size_t(!value));
  }
}

}  // namespace

TEST_CASE("structure validation names the offending table") {
  Algebra a = two();
  CHECK(validate_structure(a) == std::nullopt);

  SUBCASE("empty carrier") {
    a.n = 0;
    a.leq.clear(), a.mul.clear(), a.tilde.clear(), a.minus.clear();
    REQUIRE(validate_structure(a).has_value());
    CHECK(validate_structure(a)->find("nonempty") != std::string::npos);
  }
  SUBCASE("wrong leq shape") {
    a.leq.pop_back();
    REQUIRE(validate_structure(a).has_value());
    CHECK(validate_structure(a)->find("leq") != std::string::npos);
  }
  SUBCASE("mul out of range") {
    a.mul[3] = 2;
    REQUIRE(validate_structure(a).has_value());
    CHECK(validate_structure(a)->find("mul") != std::string::npos);
    CHECK_THROWS_AS(require_structure(a), StructuralError);
  }
  SUBCASE("negation out of range") {
    a.tilde[0] = -1;
    REQUIRE(validate_structure(a).has_value());
    CHECK(validate_structure(a)->find("tilde") != std::string::npos);
  }
  SUBCASE("declared unit out of range") {
    a.unit = 5;
    REQUIRE(validate_structure(a).has_value());
    CHECK(validate_structure(a)->find("unit") != std::string::npos);
  }
  SUBCASE("check throws on malformed tables") {
    a.minus.push_back(0);
    CHECK_THROWS_AS(check_ipo(a), StructuralError);
  }
}

TEST_CASE("the one-element algebra satisfies everything") {
  const ClassReport r = check_ipo(one());
  expect_flags(r, {{"poset", true},
                   {"semigroup", true},
                   {"dn", true},
                   {"antitone", true},
                   {"rotation", true},
                   {"ipo_semigroup", true},
                   {"cyclic", true},
                   {"commutative", true},
                   {"idempotent", true},
                   {"has_local_identities", true},
                   {"locally_integral", true},
                   {"integral", true},
                   {"has_global_identity", true},
                   {"lattice_ordered", true}});
  CHECK(r.discovered_unit == 0);
  CHECK(r.witnesses.empty());
}

TEST_CASE("two and bool4 are integral Boolean algebras") {
  for (const Algebra& a : {two(), bool4()}) {
    const ClassReport r = check_ipo(a);
    CHECK(r.ipo_semigroup);
    CHECK(r.cyclic);
    CHECK(r.commutative);
    CHECK(r.idempotent);
    CHECK(r.locally_integral);
    CHECK(r.integral);
    CHECK(r.lattice_ordered);
    CHECK(r.discovered_unit == a.n - 1);  // the top element
    CHECK(r.declared_unit_valid);
  }
}

TEST_CASE("the three-chain is integral but not idempotent") {
  const ClassReport r = check_ipo(l3());
  CHECK(r.integral);
  CHECK(r.discovered_unit == 2);
  CHECK_FALSE(r.idempotent);
  CHECK(r.witnesses.at("idempotent") == std::vector<int>{1});  // a.a = 0
}

TEST_CASE("commutative_noncyclic5 separates commutative from cyclic") {
  const ClassReport r = check_ipo(commutative_noncyclic5());
  expect_flags(r, {{"ipo_semigroup", true},
                   {"commutative", true},
                   {"lattice_ordered", true},
                   {"cyclic", false},
                   {"idempotent", false},
                   {"has_local_identities", false},
                   {"locally_integral", false},
                   {"integral", false},
                   {"has_global_identity", false}});
  CHECK(r.witnesses.at("cyclic") == std::vector<int>{1});  // ~a = b but -a = c
  CHECK(r.discovered_unit == std::nullopt);
}

TEST_CASE("the diamond is locally integral without a global identity") {
  const ClassReport r = check_ipo(loc_int_diamond4());
  CHECK(r.ipo_semigroup);
  CHECK(r.idempotent);
  CHECK(r.has_local_identities);
  CHECK(r.locally_integral);
  CHECK_FALSE(r.integral);
  CHECK(r.witnesses.at("integral") == std::vector<int>{1, 2});  // p.q = top > q
  CHECK_FALSE(r.has_global_identity);
  CHECK(r.discovered_unit == std::nullopt);
}

TEST_CASE("the discrete two-group has local identities but is not locally integral") {
  const ClassReport r = check_ipo(two_group_discrete());
  CHECK(r.ipo_semigroup);
  CHECK(r.has_local_identities);
  CHECK(r.has_global_identity);
  CHECK(r.discovered_unit == 0);
  CHECK_FALSE(r.locally_integral);
  const CheckResult c = check_locally_integral(two_group_discrete());
  CHECK(c.condition == "square_decreasing");
  CHECK(c.witness == std::vector<int>{1});  // a.a = e but e is not below a
  CHECK_FALSE(r.lattice_ordered);
}

TEST_CASE("an invalid declared unit is reported without polluting the flags") {
  Algebra a = two();
  a.unit = 0;  // bottom is not an identity
  const ClassReport r = check_ipo(a);
  CHECK_FALSE(r.declared_unit_valid);
  CHECK(r.has_global_identity);  // the algebra itself still has one
  CHECK(r.discovered_unit == 1);
}

TEST_CASE("residuals satisfy the adjunction on the integral examples") {
  for (const Algebra& a : {two(), l3(), bool4()}) {
    for (int x = 0; x < a.n; ++x)
      for (int y = 0; y < a.n; ++y)
        for (int z = 0; z < a.n; ++z) {
          const bool below = a.le(a.prod(x, y), z);
          CHECK(below == a.le(x, residual_left(a, z, y)));
          CHECK(below == a.le(y, residual_right(a, x, z)));
        }
  }
}

TEST_CASE("local identities and zeros mirror each other through the negations") {
  for (const Algebra& a :
       {two(), l3(), bool4(), loc_int_diamond4(), commutative_noncyclic5()}) {
    for (int x = 0; x < a.n; ++x) {
      // 1_x = x\x = x/x and 1_x = -0_x = ~0_x whenever the pieces exist.
      const int left = residual_left(a, x, x);
      const int right = residual_right(a, x, x);
      if (left != right) continue;
      if (auto z = local_zero(a, x)) {
        CHECK(a.tld(*z) == left);
        CHECK(a.mns(*z) == left);
      }
    }
  }
}

TEST_CASE("collapse maps are balanced even without local integrality") {
  // ~1_p = -1_p = 0_p holds at every positive element of any ipo-semigroup.
  for (const Algebra& a : {commutative_noncyclic5(), two_group_discrete(), loc_int_diamond4()}) {
    for (int p : positives(a)) {
      const int e = residual_left(a, p, p);
      if (residual_right(a, p, p) != e) continue;
      CHECK(a.tld(e) == a.mns(e));
      CHECK(local_zero(a, p) == a.tld(e));
    }
  }
}

TEST_CASE("join is expressible from product and the negations on bool4") {
  const Algebra a = bool4();
  // x + y = ~(-x . -y); on a Boolean algebra this is the lattice join.
  for (int x = 0; x < a.n; ++x)
    for (int y = 0; y < a.n; ++y) {
      const int j = plus_op(a, x, y);
      CHECK(a.le(x, j));
      CHECK(a.le(y, j));
      for (int u = 0; u < a.n; ++u)
        if (a.le(x, u) && a.le(y, u)) CHECK(a.le(j, u));
    }
}

TEST_CASE("positives and the negative cone bound each other") {
  const Algebra a = loc_int_diamond4();
  CHECK(positives(a) == std::vector<int>{1, 2, 3});   // exactly the local identities
  CHECK(negative_cone(a) == std::vector<int>{0, 1, 2});  // their ~ images
  CHECK(positives(two()) == std::vector<int>{1});
  CHECK(negative_cone(two()) == std::vector<int>{0});
}

TEST_CASE("integrality check finds the identity or a witness") {
  const IntegralResult ok = check_integral(l3());
  CHECK(ok.ok);
  CHECK(ok.identity == 2);

  const IntegralResult bad = check_integral(loc_int_diamond4());
  CHECK_FALSE(bad.ok);
  CHECK(bad.witness == std::vector<int>{1, 2});
  CHECK(bad.identity == std::nullopt);
}

TEST_CASE("generated subalgebras close under every operation") {
  const Algebra a = bool4();
  // One atom generates everything: ~p = q, p.q = bottom, p+q = top.
  CHECK(subalgebra_generated(a, {1}) == std::vector<int>{0, 1, 2, 3});
  CHECK(subalgebra_generated(a, {0}) == std::vector<int>{0, 3});
  CHECK(subalgebra_generated(a, {}) == std::vector<int>{});
}

TEST_CASE("morphism checking accepts embeddings and rejects near-misses") {
  const Algebra b = bool4();
  std::vector<int> ident = {0, 1, 2, 3};
  CHECK(check_morphism(b, b, ident, true).ok);

  // two() embeds into bool4 as {bottom, top}.
  CHECK(check_morphism(two(), b, {0, 3}, true).ok);

  // "Is top" from bool4 to two() preserves the product (meet) but breaks the
  // negations: ~p maps to bottom while ~(image of p) is top.
  std::vector<int> collapse = {0, 0, 0, 1};
  CHECK_FALSE(check_morphism(b, two(), collapse).ok);

  // Everything-to-the-point is a morphism but never an embedding: the
  // comparison 1 <= 0 is created, so order-reflection fails.
  CHECK(check_morphism(two(), one(), {0, 0}).ok);
  CHECK_FALSE(check_morphism(two(), one(), {0, 0}, true).ok);

  // Swapping the atoms of the target breaks the negations.
  std::vector<int> wrong = {0, 1, 1, 3};
  CHECK_FALSE(check_morphism(b, b, wrong).ok);

  // Maps must be total and in range.
  CHECK_THROWS_AS(check_morphism(b, b, {0, 1, 2}), StructuralError);
  CHECK_THROWS_AS(check_morphism(b, b, {0, 1, 2, 4}), StructuralError);
}

TEST_CASE("component_index groups elements by their local identity") {
  const Algebra a = loc_int_diamond4();
  CHECK(component_index(a, 0) == component_index(a, 3));  // 0_top and top share 1_x = top
  CHECK(component_index(a, 1) != component_index(a, 2));
  CHECK(component_index(a, 1) != component_index(a, 3));
}
