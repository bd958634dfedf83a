/* C interface to the ipos library: involutive partially ordered semigroups,
 * their decompositions into directed systems of integral components, glueing,
 * finite duality, and exhaustive enumeration up to isomorphism.
 *
 * Conventions:
 *   - Every fallible function returns an ipos_status; out-parameters are
 *     written only on IPOS_OK (except where noted) and are never touched on
 *     failure.
 *   - ipos_last_error() describes the most recent failure of the calling
 *     thread; the pointer stays valid until that thread's next library call.
 *   - Strings returned through char** are heap-allocated; release them with
 *     ipos_string_free. Documents are released with ipos_doc_free.
 *   - Reports and witness lists are JSON text, so callers can present them
 *     without linking any C++ symbols.
 */

#ifndef IPOS_H
#define IPOS_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ipos_status {
  IPOS_OK = 0,
  IPOS_ERR_PARSE = 1,        /* malformed document text (syntax, shapes, ranges) */
  IPOS_ERR_STRUCTURE = 2,    /* malformed tables handed to an operation */
  IPOS_ERR_INCOMPATIBLE = 3, /* homomorphism family fails to compose */
  IPOS_ERR_PRECONDITION = 4, /* operation precondition not met by the input */
  IPOS_ERR_CONDITION = 5,    /* a checked condition fails (negative verdict) */
  IPOS_ERR_BUDGET = 6,       /* enumeration size beyond the class budget */
  IPOS_ERR_KIND = 7,         /* wrong document kind for the operation */
  IPOS_ERR_ARGUMENT = 8,     /* null pointer or unknown name */
  IPOS_ERR_INTERNAL = 9      /* library invariant failure */
} ipos_status;

/* An opaque parsed document: an algebra, a directed system, or a dual
 * system. */
typedef struct ipos_doc ipos_doc;

const char* ipos_last_error(void);
void ipos_string_free(char* s);
void ipos_doc_free(ipos_doc* doc);

/* --- documents ------------------------------------------------------- */

/* Parse a document from JSON text. strict != 0 rejects unknown keys. */
ipos_status ipos_parse(const char* text, int strict, ipos_doc** out);

/* Serialize a document to its canonical JSON text (deterministic; parsing
 * it back yields an equal document). */
ipos_status ipos_serialize(const ipos_doc* doc, char** out);

/* "algebra", "system", or "dual" (static string, never freed). */
const char* ipos_doc_kind(const ipos_doc* doc);

/* --- verification ----------------------------------------------------- */

/* Full verification report as JSON; *verdict gets 1 (affirmative) or 0.
 *   - algebra documents: every axiom-class flag with the first
 *     counterexample witness for each failed one; verdict = is it an
 *     ipo-semigroup.
 *   - system documents: the four family conditions, the glueing defects,
 *     and whether the family composes; verdict = glueing is defect-free.
 *   - dual documents: structural validity plus the rebuilt algebra's size;
 *     verdict = valid.
 * The report always parses as a JSON object, also when *verdict is 0. */
ipos_status ipos_check(const ipos_doc* doc, char** report_json, int* verdict);

/* Canonical form key of an algebra document, as a hex string. Two algebras
 * are isomorphic iff their keys are equal. */
ipos_status ipos_canonical_key(const ipos_doc* doc, char** key_hex);

/* *isomorphic gets 1 or 0. Both documents must hold algebras. */
ipos_status ipos_iso(const ipos_doc* a, const ipos_doc* b, int* isomorphic);

/* --- structure theory -------------------------------------------------- */

/* Decompose a locally integral algebra document into its directed system of
 * integral components. */
ipos_status ipos_decompose(const ipos_doc* doc, ipos_doc** system_out);

/* Glue a system document. *algebra_out is produced even when the glueing
 * has defects (the relation is then not a partial order); *defects_json is
 * a JSON array, empty exactly when the result is locally integral. */
ipos_status ipos_glue(const ipos_doc* doc, ipos_doc** algebra_out, char** defects_json);

/* Glue integral ipo-monoids along a chain, first document at the bottom. */
ipos_status ipos_glue_linear(const ipos_doc* const* docs, size_t count, ipos_doc** algebra_out);

/* Subreduct condition (every local zero below every local identity) on a
 * locally integral algebra document. *verdict gets 1/0; on 0, *witness_json
 * holds the first offending positive pair [p, q]. */
ipos_status ipos_subreduct(const ipos_doc* doc, char** witness_json, int* verdict);

/* Extend a locally integral algebra satisfying the subreduct condition to a
 * locally integral ipo-monoid; elements keep their ids. `bottom` (optional;
 * NULL for the two-element Boolean algebra) is the integral ipo-monoid the
 * adjoined minimum node carries. Fails with IPOS_ERR_CONDITION when the
 * subreduct condition does not hold. */
ipos_status ipos_extend(const ipos_doc* doc, const ipos_doc* bottom, ipos_doc** algebra_out);

/* --- duality ----------------------------------------------------------- */

/* The dual system of an idempotent locally integral ipo-semilattice. */
ipos_status ipos_dualize(const ipos_doc* doc, ipos_doc** dual_out);

/* Rebuild the algebra of a dual system document; the glueing is verified
 * defect-free (IPOS_ERR_CONDITION otherwise). */
ipos_status ipos_primalize(const ipos_doc* doc, ipos_doc** algebra_out);

/* --- enumeration ------------------------------------------------------- */

/* Count the named class at the given size, up to isomorphism. The report is
 * JSON {"class", "size", "count"} plus, when retain != 0,
 * "representatives": an array of algebra payloads in canonical form,
 * ascending by canonical key. Identical output for every worker count.
 * Class names: ipo_semigroup, ipo_monoid, loc_int_ipo_semigroup,
 * loc_int_ipo_monoid, integral_ipo_monoid, ipo_semilattice, il_semilattice,
 * comm_idem_ipo_monoid, comm_idem_il_monoid, boolean_algebra. */
ipos_status ipos_enumerate(const char* class_name, int size, int retain, int workers,
                           char** report_json);

/* --- diagrams ---------------------------------------------------------- */

/* DOT rendering. mode: "order" (Hasse diagram of an algebra document),
 * "mult_order" (Hasse diagram of the multiplicative order x.y = x of an
 * idempotent commutative algebra), or "dual" (atom clusters of a dual
 * document with its cover maps; empty atom sets and empty partial maps
 * follow the usual drawing conventions). */
ipos_status ipos_export(const ipos_doc* doc, const char* mode, char** dot_out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* IPOS_H */
