// Canonical labelling of finite ipo-semigroup-shaped structures. The key is
// the lexicographically least byte serialization of (leq, mul, tilde, minus)
// over all relabellings, found by partition refinement with
// individualization. Equal keys characterize isomorphism (the declared unit
// is deliberately excluded: isomorphisms are required to preserve structure,
// and a global identity is definable from mul alone).

#pragma once

#include <string>
#include <vector>

#include "core/algebra.hpp"

namespace ipos {

/// The algebra relabelled by perm: element x becomes perm[x].
Algebra apply_permutation(const Algebra& a, const std::vector<int>& perm);

/// Canonical key bytes. Two structurally valid algebras have equal keys iff
/// they are isomorphic.
std::string canonical_key(const Algebra& a);

/// A relabelling of `a` whose identity permutation serialization equals
/// canonical_key(a); isomorphic algebras map to the identical canonical form
/// (up to the declared unit, which is carried along through the relabelling).
Algebra canonical_form(const Algebra& a);

/// Hex rendering of the key, for reports and the command line.
std::string canonical_key_hex(const Algebra& a);

/// Oracle: is there a bijection preserving leq, mul, tilde and minus?
/// Exhaustive over all n! permutations; for tests only.
bool brute_force_isomorphic(const Algebra& a, const Algebra& b);

}  // namespace ipos
