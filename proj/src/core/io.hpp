// On-disk document format (one JSON container for algebras, directed
// systems, and dual systems) and DOT diagram export. Parsing validates
// shapes and index ranges and reports positions; the algebraic axioms are
// left to the check operations.

#pragma once

#include <stdexcept>
#include <string>
#include <variant>

#include <json.hpp>

#include "core/algebra.hpp"
#include "core/decompose.hpp"
#include "core/duality.hpp"

namespace ipos {

enum class DocKind { algebra, system, dual };

/// A parsed document: a format version, one payload, and free-form metadata
/// (an object; empty when absent). The kind tag follows the payload.
struct AlgebraDocument {
  int format_version = 1;
  std::variant<Algebra, DirectedSystem, DualSystem> payload;
  nlohmann::ordered_json metadata = nlohmann::ordered_json::object();

  DocKind kind() const { return DocKind(payload.index()); }
  const Algebra& algebra() const;
  const DirectedSystem& system() const;
  const DualSystem& dual() const;

  bool operator==(const AlgebraDocument&) const = default;
};

/// Raised on malformed input text: JSON syntax errors (position annotated),
/// missing or mistyped fields, shape mismatches, and out-of-range table
/// entries (named by row and column). Under strict mode, also unknown keys.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parses a document. Shape and range validation happens here; axiom-level
/// validation is the check operations' job. With strict = true, unknown keys
/// outside `metadata` are rejected.
AlgebraDocument parse(const std::string& text, bool strict = false);

/// Deterministic serialization: fixed key order, two-space indent, trailing
/// newline. parse(serialize(doc)) == doc for every valid document.
std::string serialize(const AlgebraDocument& doc);

AlgebraDocument make_document(Algebra a);
AlgebraDocument make_document(DirectedSystem sys);
AlgebraDocument make_document(DualSystem dual);

enum class DiagramMode { order, mult_order, dual };

/// Name used on the command line: "order", "mult_order", "dual".
std::optional<DiagramMode> diagram_mode_from_name(const std::string& name);

/// Renders a document as a DOT graph: Hasse covers of the order (mode
/// `order`, algebra documents) or of the multiplicative order (mode
/// `mult_order`, idempotent commutative algebra documents); for dual
/// documents (mode `dual`), one cluster of atom nodes per node of the
/// semilattice (a single "∅" node when the atom set is empty), solid
/// atom-to-atom edges along cover maps, and a dotted cluster-to-cluster edge
/// where a cover map is the empty partial map. Throws StructuralError on a
/// mode/kind mismatch or an unmet mode precondition.
std::string export_diagram(const AlgebraDocument& doc, DiagramMode mode);

}  // namespace ipos
