// The glueing of a directed system of integral ipo-monoids along its family
// of homomorphisms, the four family conditions (za)/(bal)/(mon)/(lax), the
// linear-chain glueing, and the subreduct condition with its bottom-node
// monoid extension.

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "core/algebra.hpp"
#include "core/decompose.hpp"

namespace ipos {

/// One violated glueing condition with its lexicographically first witness.
/// `condition` is "za" or "bal" (witnesses are node tuples (p,q) resp.
/// (p,q,a) with a local to node p), or "transitivity"/"antisymmetry"
/// (witnesses are glued-element ids, (a,b,c) resp. (a,b)).
struct Defect {
  std::string condition;
  std::vector<int> witness;

  bool operator==(const Defect&) const = default;
};

/// A glueing, always materialized even when its relation fails to be a
/// partial order, with every failed condition recorded. `defects` is empty
/// iff `algebra` is a locally integral ipo-semigroup (the main equivalence
/// theorem; asserted over the enumerated system space in tests).
struct GlueOutcome {
  Algebra algebra;
  std::vector<Defect> defects;
};

/// Builds the glueing of `sys`: carrier = disjoint union of the components
/// (global ids from system_global_ids), product x.y = phi_pr(x) ._r phi_qr(y)
/// with r = p v q, negations componentwise, and order a <= b iff
/// a.~b = 0_{p v q}. Scans the conditions za and bal on the family and
/// transitivity and antisymmetry on the materialized relation, in that fixed
/// order, recording each failure once with its lex-first witness. The
/// conditions (mon) and (lax) are deliberately not re-reported here: under
/// za + bal they are jointly equivalent to transitivity of the relation
/// (checked by verify_mon/verify_lax instead), so reporting both vocabularies
/// would describe one phenomenon twice. The unit is declared exactly when the
/// node semilattice has a minimum and a full scan confirms its local identity
/// is a global one.
/// Throws StructuralError / IncompatibleFamily on malformed input; condition
/// failures are never errors.
GlueOutcome glue(const DirectedSystem& sys);

/// Zero avoidance: phi_pq(0_p) = 0_q only for p = q. Witness (p,q).
CheckResult verify_za(const DirectedSystem& sys);

/// Balance: ~phi_pq(-a) = -phi_pq(~a) for all p <= q, a in A_p.
/// Witness (p,q,a).
CheckResult verify_bal(const DirectedSystem& sys);

/// Monotonicity: a <=_p b implies phi_pq(a) <=_q phi_pq(b) for all p <= q.
/// Witness (p,q,a,b).
CheckResult verify_mon(const DirectedSystem& sys);

/// Laxness: ~phi_pq(a) <= phi_pr(~a) for all p <= q, p <= r, a in A_p, where
/// <= compares across components via the glueing criterion x.~y = 0_{q v r}.
/// Witness (p,q,r,a).
CheckResult verify_lax(const DirectedSystem& sys);

/// Glues nontrivial integral ipo-monoids along a chain, first entry at the
/// bottom, with phi_pq collapsing everything to the target unit for p < q.
/// The result is always defect-free and has a global identity (the bottom
/// component's unit). Throws StructuralError when an input is trivial
/// (one-element) or not an integral ipo-monoid.
GlueOutcome glue_linear(const std::vector<IntegralComponent>& monoids);
GlueOutcome glue_linear(const std::vector<Algebra>& monoids);

/// The subreduct condition on a locally integral ipo-semigroup: 0_p <= 1_q
/// for all positive p, q (equivalent to being a subreduct of a locally
/// integral ipo-monoid). On failure, condition is "zeros_below_units" and the
/// witness is the first offending positive pair (p,q).
/// Throws NotLocallyIntegral when the precondition fails.
CheckResult subreduct_check(const Algebra& alg);

/// Thrown by extend_to_monoid when the subreduct condition fails; carries the
/// positive pair (p,q) with 0_p not below 1_q.
struct SubreductConditionFails : std::runtime_error {
  std::vector<int> witness;

  explicit SubreductConditionFails(std::vector<int> w)
      : std::runtime_error("subreduct condition fails: local zero of " +
                           std::to_string(w.at(0)) + " is not below " +
                           std::to_string(w.at(1))),
        witness(std::move(w)) {}
};

/// Embeds a locally integral ipo-semigroup satisfying the subreduct condition
/// into a locally integral ipo-monoid. When some component is trivial the
/// input already has a global identity and is returned with it declared;
/// otherwise a new bottom node carrying `bottom` (any integral ipo-monoid,
/// default the two-element Boolean algebra) is adjoined with
/// phi_bottom,p = const 1_p, and the extended system is glued. The original
/// elements keep their ids 0..n-1, so the inclusion is the identity map.
/// Throws SubreductConditionFails / NotLocallyIntegral.
Algebra extend_to_monoid(const Algebra& alg, const Algebra& bottom);
Algebra extend_to_monoid(const Algebra& alg);

}  // namespace ipos
