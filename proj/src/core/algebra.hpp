// Finite involutive partially ordered semigroups (ipo-semigroups) as explicit
// tables, together with all axiom checks, residuals, and derived subsets.
//
// An ipo-semigroup is a structure (A, <=, ., ~, -) where (A, <=) is a poset,
// (A, .) a semigroup, and ~, - are antitone negations satisfying double
// negation   ~-x = x = -~x                                             (dn)
// and rotation
//   x.y <= z  <=>  y.~z <= ~x  <=>  -z.x <= -y                        (rot)
// Elements are represented by indices 0..n-1 and every operation is a pure
// function over immutable tables; all checks are exhaustive scans (n <= ~16).

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ipos {

/// One finite ipo-semigroup candidate. The tables are not assumed to satisfy
/// any axiom; `validate_structure` checks well-formedness (shapes and index
/// ranges) and `check_ipo` decides the axioms.
struct Algebra {
  int n = 0;                  ///< carrier size; elements are 0..n-1
  std::vector<uint8_t> leq;   ///< n*n row-major; leq[i*n+j] != 0 iff i <= j
  std::vector<int> mul;       ///< n*n row-major product table
  std::vector<int> tilde;     ///< the negation ~ (appears in "y.~z <= ~x")
  std::vector<int> minus;     ///< the negation - (appears in "-z.x <= -y")
  std::optional<int> unit;    ///< declared global identity, if any

  bool le(int i, int j) const { return leq[size_t(i) * n + j] != 0; }
  int prod(int i, int j) const { return mul[size_t(i) * n + j]; }
  int tld(int i) const { return tilde[i]; }
  int mns(int i) const { return minus[i]; }

  bool operator==(const Algebra&) const = default;
};

/// Thrown when a table is structurally malformed (wrong shape or an index out
/// of range). The message names the offending table and cell.
struct StructuralError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Verifies shapes and index ranges (not axioms). Returns the error message,
/// or nullopt when well-formed. n must be positive: the structures modeled
/// here are nonempty.
std::optional<std::string> validate_structure(const Algebra& a);

/// validate_structure, throwing StructuralError on failure.
void require_structure(const Algebra& a);

/// Which axiom classes an algebra belongs to, with counterexample witnesses.
/// Every false flag has a witness tuple; true flags have none. Witnesses are
/// the lexicographically first violating tuple, where multi-condition flags
/// scan condition-major (all tuples for the first condition, then the next).
struct ClassReport {
  bool poset = false;
  bool semigroup = false;
  bool dn = false;
  bool antitone = false;
  bool rotation = false;
  bool ipo_semigroup = false;  ///< conjunction of the five above
  bool cyclic = false;
  bool commutative = false;
  bool idempotent = false;
  bool has_local_identities = false;
  bool locally_integral = false;
  bool integral = false;
  bool has_global_identity = false;
  bool lattice_ordered = false;

  std::map<std::string, std::vector<int>> witnesses;

  /// The global identity element when one exists (independent of whether the
  /// input declared one).
  std::optional<int> discovered_unit;
  /// False when the input declared a `unit` that fails the identity law. The
  /// flags above describe the algebra itself, never the declaration.
  bool declared_unit_valid = true;

  bool flag(const std::string& name) const;
};

/// Exhaustively decides every axiom class for `a`.
/// Throws StructuralError on malformed tables.
ClassReport check_ipo(const Algebra& a);

// Derived operations (correct under dn; see module tests for the residuation
// law "x.y <= z <=> x <= z/y <=> y <= x\z").

/// z/y = -(y.~z)
int residual_left(const Algebra& a, int z, int y);
/// x\z = ~(-z.x)
int residual_right(const Algebra& a, int x, int z);
/// x+y = ~(-x.-y); equals -(~x.~y) whenever contraposition holds.
int plus_op(const Algebra& a, int x, int y);

/// A+ = {p : for all x, x <= p.x}, ascending.
std::vector<int> positives(const Algebra& a);

/// A~ = {~p : p in A+}, ascending.
std::vector<int> negative_cone(const Algebra& a);

/// 1_x = x\x when x\x = x/x, else nullopt.
std::optional<int> local_identity(const Algebra& a, int x);
/// 0_x = -x.x when -x.x = x.~x, else nullopt.
std::optional<int> local_zero(const Algebra& a, int x);

/// Verdict of a single universally quantified check, with the first
/// counterexample when it fails.
struct CheckResult {
  bool ok = true;
  std::string condition;       ///< name of the first violated condition
  std::vector<int> witness;    ///< lexicographically first violating tuple
};

/// The four-condition characterization of local integrality:
///   (1) -x.x = x.~x            (balance)
///   (2) x/x is positive        (y <= (x/x).y for all y)
///   (3) xx <= x                (square decreasing)
///   (4) 0_x.0_x = 0_x          (idempotent local zeros)
/// Pre: `a` is an ipo-semigroup.
CheckResult check_locally_integral(const Algebra& a);

/// Integrality via the two inequations x <= (x/x).x and y.x <= x. When they
/// hold, `identity` is the global identity (= the top element).
struct IntegralResult {
  bool ok = true;
  std::vector<int> witness;
  std::optional<int> identity;
};
IntegralResult check_integral(const Algebra& a);

/// True iff every pair of elements has a least upper bound and a greatest
/// lower bound in <=. Pre: poset.
CheckResult check_lattice_ordered(const Algebra& a);

/// Least superset of X closed under mul, tilde and minus (<= is inherited,
/// not generated). Returns ascending indices.
std::vector<int> subalgebra_generated(const Algebra& a, const std::vector<int>& X);

/// Does h : src -> dst preserve <=, ., ~, - (and the units when both are
/// declared)? The embedding variant additionally requires order reflection
/// (h(x) <= h(y) implies x <= y), which forces injectivity.
CheckResult check_morphism(const Algebra& src, const Algebra& dst,
                           const std::vector<int>& h, bool embedding = false);

/// The element of A+ indexing the component of x, i.e. 1_x.
/// Pre: locally integral (every x then has a local identity).
int component_index(const Algebra& a, int x);

}  // namespace ipos
