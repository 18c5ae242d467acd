#ifndef VERTEXLIE_H
#define VERTEXLIE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum VlStatus {
  VL_STATUS_OK = 0,
  VL_STATUS_NULL_POINTER = 1,
  VL_STATUS_INVALID_UTF8 = 2,
  VL_STATUS_PARSE = 3,
  VL_STATUS_UNKNOWN_BASIS = 4,
  VL_STATUS_UNKNOWN_PRESET = 5,
  VL_STATUS_NOT_INJECTIVE = 6,
  VL_STATUS_CUTOFF_EXCEEDED = 7,
  VL_STATUS_BUFFER_TOO_SMALL = 8,
  VL_STATUS_INVALID = 9,
} VlStatus;

typedef enum VlVerdict {
  VL_VERDICT_INJECTIVE_ZERO_IDEAL = 0,
  VL_VERDICT_INJECTIVE_CENTRAL_IDEAL = 1,
  VL_VERDICT_PURE_LIE = 2,
  VL_VERDICT_NOT_INJECTIVE_CANDIDATE = 3,
  VL_VERDICT_UNDETERMINED = 4,
} VlVerdict;

/*
 Opaque formula handle.
 */
typedef struct VlFormula VlFormula;

/*
 Message for the last failing call on this thread, or NULL. The pointer
 stays valid until the next failing call on the same thread.
 */
const char *vl_last_error(void);

/*
 Builds a preset (`virasoro`, `heisenberg`, ...) with default parameters.

 # Safety
 `name` must be a NUL-terminated string and `out` a valid pointer.
 */
enum VlStatus vl_formula_from_preset(const char *name, struct VlFormula **out);

/*
 Parses a TOML formula file held in memory.

 # Safety
 `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum VlStatus vl_formula_from_toml(const char *text, struct VlFormula **out);

/*
 # Safety
 `f` must come from a `vl_formula_from_*` call and not be used afterwards.
 */
void vl_formula_free(struct VlFormula *f);

/*
 Number of basis vectors, 0 for a NULL handle.

 # Safety
 `f` must be NULL or a live handle.
 */
size_t vl_formula_dim(const struct VlFormula *f);

/*
 Injectivity verdict using the formula's designated central vector.

 # Safety
 `f` must be a live handle and `out` a valid pointer.
 */
enum VlStatus vl_formula_verdict(const struct VlFormula *f, enum VlVerdict *out);

/*
 `[u_n, v_p]` in `L(U)`, printed like `4*ω_1 + 1/2*c_-1`.

 # Safety
 `f` must be a live handle, `u`/`v` NUL-terminated, `out` valid; free the
 result with `vl_string_free`.
 */
enum VlStatus vl_bracket(const struct VlFormula *f,
                         const char *u,
                         int64_t n,
                         const char *v,
                         int64_t p,
                         char **out);

/*
 Graded dimensions of `V(U)` for weights `0 ≤ w ≤ cutoff_num/cutoff_den`,
 in increasing weight. Writes at most `cap` entries and always sets
 `*len` to the full count; returns `BufferTooSmall` if `cap < *len`.

 # Safety
 `f` must be a live handle, `dims` valid for `cap` writes, `len` valid.
 */
enum VlStatus vl_verma_dims(const struct VlFormula *f,
                            int64_t cutoff_num,
                            int64_t cutoff_den,
                            uint64_t *dims,
                            size_t cap,
                            size_t *len);

/*
 Canonical TOML export of the formula.

 # Safety
 `f` must be a live handle and `out` valid; free with `vl_string_free`.
 */
enum VlStatus vl_formula_export(const struct VlFormula *f, char **out);

/*
 # Safety
 `s` must be NULL or a string returned by this library, freed once.
 */
void vl_string_free(char *s);

#endif  /* VERTEXLIE_H */
