// Decomposition of a locally integral ipo-semigroup into its semilattice of
// positive elements, integral components A_p = {y : 1_y = p}, and the
// compatible family of monoid homomorphisms phi_pq(x) = q.x for p <= q.

#pragma once

#include <string>
#include <vector>

#include "core/algebra.hpp"

namespace ipos {

/// One integral component A_p of a decomposition, restricted to its own
/// tables. `carrier` lists the parent indices in ascending order (position =
/// local index); it is empty for synthetic components that were never part of
/// a larger algebra. `algebra.unit` is always set (the local index of 1_p).
struct IntegralComponent {
  std::vector<int> carrier;
  Algebra algebra;

  /// Local index of a parent element, or -1 when absent.
  int local_of_parent(int parent) const;

  bool operator==(const IntegralComponent&) const = default;
};

/// A semilattice directed system: join-semilattice D, one integral
/// ipo-monoid per node, and maps phi_pq : A_p -> A_q (on local indices) for
/// every p <= q, where p <= q iff p v q = q.
struct DirectedSystem {
  int d_size = 0;
  std::vector<int> join;  ///< d_size*d_size row-major join table
  std::vector<IntegralComponent> components;
  /// phi[p*d_size + q] holds the map for p <= q and is empty otherwise.
  std::vector<std::vector<int>> phi;

  int join_of(int p, int q) const { return join[size_t(p) * d_size + q]; }
  bool node_le(int p, int q) const { return join_of(p, q) == q; }
  const std::vector<int>& map(int p, int q) const;
  /// Local index of the component's unit 1_p / zero 0_p = ~1_p.
  int local_unit(int p) const;
  int local_zero(int p) const;
  /// Index of the minimum node, or -1 when D has none.
  int minimum_node() const;

  bool operator==(const DirectedSystem&) const = default;
};

/// Raised when a system's homomorphism family is inconsistent (phi_pp is not
/// the identity, or phi_qr . phi_pq != phi_pr). Distinct from glue defects,
/// which are legal outputs.
struct IncompatibleFamily : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised by decompose when the input fails local integrality; carries the
/// failed condition and its witness.
struct NotLocallyIntegral : std::runtime_error {
  CheckResult detail;
  explicit NotLocallyIntegral(CheckResult d)
      : std::runtime_error("algebra is not locally integral: " + d.condition), detail(std::move(d)) {}
};

/// Checks the structural invariants of a directed system: join table is a
/// semilattice, components are integral ipo-monoids of matching size, phi
/// maps are present exactly for p <= q with in-range entries, phi_pp = id and
/// the family composes. Throws StructuralError or IncompatibleFamily.
void require_system(const DirectedSystem& sys);

/// Decomposes a locally integral ipo-semigroup. Node order follows ascending
/// parent index of the positive elements. Throws NotLocallyIntegral.
DirectedSystem decompose(const Algebra& a);

/// Node index (into decompose(a)'s system) of the component containing x.
int component_of(const Algebra& a, int x);

/// Result of factoring a carrier map through two decompositions: the
/// semilattice map tau and per-node component maps eta. When the naturality
/// square eta_q . phi^A_pq = phi^B_tau(p)tau(q) . eta_p fails, `ok` is false
/// and `failed_square` holds (p, q, a) for the first violation in node-major
/// order.
struct MorphismComponents {
  bool ok = true;
  std::vector<int> tau;               ///< src node -> dst node
  std::vector<std::vector<int>> eta;  ///< per src node, local -> local map
  std::vector<int> failed_square;     ///< (p, q, a) when !ok
};

/// Restricts a map h between the glueings of two systems to (tau, eta) and
/// verifies the naturality squares. h is indexed by the global element ids of
/// `src` (see system_global_ids) with values in the global ids of `dst`.
/// Throws StructuralError when h is not component-compatible (so no
/// restriction exists).
MorphismComponents morphism_components(const DirectedSystem& src,
                                       const DirectedSystem& dst,
                                       const std::vector<int>& h);

/// The global element ids the glueing assigns to each node's elements: parent
/// indices when every component carries them consistently, otherwise
/// sequential ids in node order. ids[p][a] is the global id of local a.
std::vector<std::vector<int>> system_global_ids(const DirectedSystem& sys);

/// Total carrier size of the glueing.
int system_size(const DirectedSystem& sys);

}  // namespace ipos
