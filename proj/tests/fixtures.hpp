// Hand-built example structures shared by the test suites: the classic small
// ipo-semigroups exercising each axiom class, plus helpers for building
// algebras from readable cover lists.

#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "core/algebra.hpp"
#include "core/decompose.hpp"

namespace ipos::fixtures {

/// Builds an Algebra from strict-order generators (reflexive-transitive
/// closure is taken), a full multiplication table in row-major rows, and the
/// two negation maps.
Algebra from_tables(int n, const std::vector<std::pair<int, int>>& less_pairs,
                    const std::vector<std::vector<int>>& mul_rows,
                    const std::vector<int>& tilde, const std::vector<int>& minus,
                    std::optional<int> unit = std::nullopt);

/// The one-element algebra (every flag true).
Algebra one();

/// The two-element Boolean algebra 0 < 1 (integral, declared unit 1).
Algebra two();

/// The three-element chain 0 < a < 1 with a.a = 0 (integral, unit 1).
Algebra l3();

/// The four-element Boolean algebra (integral, unit = top, product = meet).
Algebra bool4();

/// Five elements bot < a,b,c < top with x.y = bot; ~ cycles (a b c) and
/// - cycles (a c b), both swapping top and bot. A commutative but noncyclic
/// ipo-semigroup without local identities. Indices: 0=bot, 1=a, 2=b, 3=c, 4=top.
Algebra commutative_noncyclic5();

/// The diamond bot < p,q < top with bot absorbing, pq = p.top = q.top = top,
/// idempotent elements, negations fixing p,q and swapping top/bot. Locally
/// integral with local identities p, q, top but no global identity.
/// Indices: 0=bot, 1=p, 2=q, 3=top.
Algebra loc_int_diamond4();

/// The two-element group {e,a} with a.a = e, discrete order, identity
/// negations: an ipo-semigroup with local identities that is not locally
/// integral (not square decreasing). Indices: 0=e, 1=a.
Algebra two_group_discrete();

/// The diamond-indexed directed system p < q,r < s over four copies of two()
/// whose non-identity homomorphisms all collapse to the unit. Zero avoidance
/// and balance hold, but the glueing's order is not transitive.
DirectedSystem diamond_collapse_system();

}  // namespace ipos::fixtures
