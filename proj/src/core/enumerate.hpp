// Exhaustive enumeration of finite ipo-semigroups and their subclasses up to
// isomorphism, together with the canonical-form machinery consumers need to
// compare results. Two independent strategies back the counts:
//   - direct: posets up to iso -> antitone bijections up to conjugacy by
//     order automorphisms -> multiplication tables by constraint propagation;
//   - composite: join-semilattices of nodes, integral components per node,
//     and compatible condition-satisfying homomorphism families, glued
//     (complete for locally integral classes by the main glueing theorem).
// Both run where feasible and must agree; published table values are the
// external oracle.

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "core/algebra.hpp"
#include "core/decompose.hpp"

namespace ipos {

enum class AlgebraClass {
  ipo_semigroup,
  ipo_monoid,
  loc_int_ipo_semigroup,
  loc_int_ipo_monoid,
  integral_ipo_monoid,
  ipo_semilattice,
  il_semilattice,
  comm_idem_ipo_monoid,
  comm_idem_il_monoid,
  boolean_algebra,
};

/// All classes in declaration order, paired with their command-line names.
const std::vector<std::pair<AlgebraClass, std::string>>& algebra_classes();
const std::string& algebra_class_name(AlgebraClass c);
std::optional<AlgebraClass> algebra_class_from_name(const std::string& name);

struct EnumerationResult {
  AlgebraClass algebra_class;
  int size = 0;
  long long count = 0;
  /// Canonical forms, ascending by canonical key; present only when retained.
  std::optional<std::vector<Algebra>> representatives;
};

/// Requesting a size past the class budget raises this instead of ever
/// producing a partial count.
struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Largest size enumerate_class accepts for the class (the published table
/// extent, bounded by what the strategies finish in reasonable time).
int class_budget(AlgebraClass c);

/// Counts (and optionally retains) all algebras of the class with exactly n
/// elements, up to isomorphism. Deterministic for any worker count. Results
/// are cached per (class, n) unless use_cache is false.
EnumerationResult enumerate_class(AlgebraClass c, int n, bool retain = false,
                                  int workers = 1, bool use_cache = true);

/// Every class the algebra belongs to, in declaration order.
std::vector<AlgebraClass> classify(const Algebra& a);

/// Is the algebra a Boolean algebra presented as an ipo-monoid: mul = meet of
/// a distributive complemented lattice order, both negations = complement?
bool is_boolean_algebra(const Algebra& a);

/// The powerset Boolean algebra on `atoms` atoms; elements are bitmasks,
/// order is inclusion, product is intersection, negations are complement,
/// unit is the full set.
Algebra powerset_algebra(int atoms);

// --- building blocks, exposed for tests and the duality generator ---

/// All posets on n elements up to isomorphism, as algebras with the order in
/// leq and inert operations (mul = 0, negations = identity). Ascending by
/// canonical key.
std::vector<Algebra> enumerate_posets(int n);

/// All join-semilattice orders on d elements up to isomorphism, same shell
/// representation as enumerate_posets.
std::vector<Algebra> enumerate_join_semilattices(int d);

/// All bijections s with x <= y iff s(y) <= s(x) (resp. order automorphisms),
/// in lexicographic order.
std::vector<std::vector<int>> antitone_bijections(const Algebra& poset);
std::vector<std::vector<int>> order_automorphisms(const Algebra& poset);

/// The join table of a join-semilattice shell. Throws StructuralError if some
/// pair has no least upper bound.
std::vector<int> join_table(const Algebra& shell);

struct DirectOptions {
  bool integral = false;    ///< unit = top preassigned, products below both arguments
  bool idempotent = false;  ///< diagonal mul[x][x] = x preassigned

  bool operator==(const DirectOptions&) const = default;
};

/// Direct search: every ipo-semigroup on n elements (restricted per options)
/// up to isomorphism, as canonical forms ascending by key.
std::vector<Algebra> enumerate_direct(int n, const DirectOptions& opt, int workers = 1);

struct CompositeOptions {
  bool boolean_components = false;  ///< powerset components only (idempotent classes)
  bool require_minimum = false;     ///< only node semilattices with a minimum (monoid classes)

  bool operator==(const CompositeOptions&) const = default;
};

/// Composite route: every locally integral ipo-semigroup on n elements up to
/// isomorphism (with Boolean components only, when requested), via directed
/// systems and glueing. Canonical forms ascending by key.
std::vector<Algebra> enumerate_composite(int n, const CompositeOptions& opt, int workers = 1);

/// All monoid homomorphisms from src to dst (unit-preserving, product-
/// preserving), optionally restricted to monotone and balanced ones, in
/// lexicographic order of their tables.
std::vector<std::vector<int>> monoid_homomorphisms(const Algebra& src, const Algebra& dst,
                                                   bool monotone_balanced_only);

/// Cover pairs (p, q) of the order shell (q covers p), lexicographic.
std::vector<std::pair<int, int>> cover_pairs(const Algebra& shell);

/// Builds the directed system over the join-semilattice `shell` with the
/// given components (one per node) and one homomorphism per cover edge, in
/// cover_pairs order. The remaining maps are composed along cover chains;
/// returns nullopt when two cover paths disagree, i.e. no compatible family
/// extends the chosen edges. Throws StructuralError when the shell is not a
/// join-semilattice and std::invalid_argument on shape mismatches.
std::optional<DirectedSystem> assemble_system(const Algebra& shell,
                                              const std::vector<Algebra>& components,
                                              const std::vector<std::vector<int>>& cover_maps);

}  // namespace ipos
