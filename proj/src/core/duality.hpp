// Finite duality for idempotent locally integral ipo-semilattices. Each
// Boolean component is replaced by its set of atoms, and each connecting
// homomorphism phi_pq by the partial map it induces on atoms in the opposite
// direction; primalize rebuilds the algebra as a glued system of powerset
// components and verifies the result rather than assuming it.

#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "core/algebra.hpp"
#include "core/decompose.hpp"
#include "core/glue.hpp"

namespace ipos {

/// The dual of a directed system of Boolean algebras: the node semilattice,
/// the atom count of each node, and for every p <= q the partial map
/// pmap_pq : atoms(q) -> atoms(p). pmap[p*d_size + q] has atoms[q] entries,
/// each an atom index of node p or -1 for "undefined"; it is empty for
/// incomparable node pairs. Atom labels 0..atoms[p]-1 follow ascending
/// element order of the component they came from.
struct DualSystem {
  int d_size = 0;
  std::vector<int> join;   ///< d_size*d_size row-major join table
  std::vector<int> atoms;  ///< atoms per node, >= 0 (a node may be trivial)
  std::vector<std::vector<int>> pmap;

  int join_of(int p, int q) const { return join[size_t(p) * d_size + q]; }
  bool node_le(int p, int q) const { return join_of(p, q) == q; }
  const std::vector<int>& map(int p, int q) const;

  bool operator==(const DualSystem&) const = default;
};

/// Raised by dualize when the input is not an idempotent locally integral
/// ipo-semilattice; the message names the first violated precondition.
struct NotIdempotentLocIntegral : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Raised by primalize when the reconstructed system glues with defects,
/// i.e. the dual system is structurally well formed but does not describe a
/// locally integral algebra. Carries the first defect.
struct InvalidDualSystem : std::runtime_error {
  Defect defect;
  explicit InvalidDualSystem(Defect d);
};

/// Structural invariants of a dual system: the join table is a semilattice,
/// maps are present exactly for p <= q with entries in -1..atoms[p]-1,
/// pmap_pp is the total identity, the family composes contravariantly with
/// undefined propagating (pmap_pr(b) = pmap_pq(pmap_qr(b))), and a map is
/// total only on the diagonal (the dual of zero avoidance). Throws
/// StructuralError.
void require_dual_system(const DualSystem& dual);

/// The dual of an idempotent locally integral ipo-semilattice. Nodes follow
/// the decomposition's node order, atoms of each component are numbered by
/// ascending element index, and pmap_pq(b) is the unique atom a of A_p with
/// b <= phi_pq(a), undefined exactly when b <= phi_pq(0_p). Throws
/// NotIdempotentLocIntegral when the precondition fails; a non-Boolean
/// component in an algebra that passed it is an internal error (logic_error).
DualSystem dualize(const Algebra& a);

/// The directed system primalize glues: node p carries the powerset algebra
/// on atoms[p], and phi_pq sends a set S to { b : pmap_pq(b) undefined or in
/// S } (the partial inverse image). Throws StructuralError via
/// require_dual_system.
DirectedSystem primal_system(const DualSystem& dual);

/// Rebuilds the algebra of a dual system by glueing primal_system(dual) and
/// verifying the outcome is defect-free. Throws StructuralError or
/// InvalidDualSystem. The result has sum_p 2^atoms[p] elements.
Algebra primalize(const DualSystem& dual);

/// The multiplicative order x [= y iff xy = x of an idempotent commutative
/// algebra, as an n*n row-major 0/1 matrix (for such algebras it is always a
/// partial order with meets). Throws StructuralError when the product is not
/// idempotent and commutative.
std::vector<uint8_t> multiplicative_order(const Algebra& a);

/// Exact isomorphism of dual systems: a join-preserving node bijection
/// together with per-node atom bijections commuting with every pmap.
/// Exhaustive search, intended for the small systems the generator yields.
bool dual_systems_isomorphic(const DualSystem& x, const DualSystem& y);

/// A pseudorandom valid dual system with up to max_nodes nodes and up to
/// max_atoms atoms per node: cover maps are sampled and composed, and the
/// candidate is kept only when require_dual_system and primalize accept it.
/// Deterministic for a given rng state.
DualSystem random_dual_system(std::mt19937& rng, int max_nodes = 3, int max_atoms = 3);

}  // namespace ipos
