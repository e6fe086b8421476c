#ifndef EULER_REFINE_H
#define EULER_REFINE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ErAltKind {
  ER_ALT_KIND_UP_DOWN = 0,
  ER_ALT_KIND_DOWN_UP = 1,
} ErAltKind;

typedef enum ErMinMax {
  ER_MIN_MAX_MIN_MAX = 0,
  ER_MIN_MAX_MAX_MIN = 1,
} ErMinMax;

typedef enum ErSecondMax {
  ER_SECOND_MAX_UPPER = 0,
  ER_SECOND_MAX_LOWER = 1,
} ErSecondMax;

typedef enum ErStatus {
  ER_STATUS_OK = 0,
  ER_STATUS_NULL_POINTER = 1,
  ER_STATUS_INVALID_ARGUMENT = 2,
  ER_STATUS_NOT_ALTERNATING = 3,
  ER_STATUS_OUTSIDE_DOMAIN = 4,
  ER_STATUS_ORDER_MISMATCH = 5,
  ER_STATUS_NOT_INVERTIBLE = 6,
  ER_STATUS_NON_INTEGRAL = 7,
  ER_STATUS_EXHAUSTED = 8,
  ER_STATUS_BUFFER_TOO_SMALL = 9,
  ER_STATUS_PANIC = 10,
} ErStatus;

// Truncated exponential generating function.
typedef struct ErEgf ErEgf;

// Lexicographic stream of alternating permutations.
typedef struct ErEnumerator ErEnumerator;

typedef struct ErPermutation ErPermutation;

typedef struct ErClassification {
  enum ErAltKind kind;
  enum ErMinMax minmax;
  enum ErSecondMax secondmax;
} ErClassification;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failure on this thread; empty after a
// success. Valid until the next call into this library on the same thread.
const char *er_last_error(void);

void er_string_free(char *s);

enum ErStatus er_egf_sec(size_t order, struct ErEgf **out);

enum ErStatus er_egf_tan(size_t order, struct ErEgf **out);

enum ErStatus er_egf_sin(size_t order, struct ErEgf **out);

enum ErStatus er_egf_cos(size_t order, struct ErEgf **out);

// The constant series `c`.
enum ErStatus er_egf_constant(size_t order, int64_t c, struct ErEgf **out);

// Parses `{"order": N, "a": ["a_0", ..., "a_N"]}`.
enum ErStatus er_egf_from_json(const char *json, struct ErEgf **out);

enum ErStatus er_egf_add(const struct ErEgf *a, const struct ErEgf *b, struct ErEgf **out);

enum ErStatus er_egf_mul(const struct ErEgf *a, const struct ErEgf *b, struct ErEgf **out);

enum ErStatus er_egf_scale(const struct ErEgf *a, int64_t c, struct ErEgf **out);

enum ErStatus er_egf_reciprocal(const struct ErEgf *a, struct ErEgf **out);

// Truncation order, or 0 for a null handle.
size_t er_egf_order(const struct ErEgf *a);

// Writes the wire form with `a_n = n! [x^n]` as decimal strings. Fails
// with `NON_INTEGRAL` when some `a_n` is not an integer.
enum ErStatus er_egf_to_json(const struct ErEgf *a, char **out);

void er_egf_free(struct ErEgf *a);

// Parses one-line notation: bare digits (`"3412"`) or comma-separated.
enum ErStatus er_perm_parse(const char *text, struct ErPermutation **out);

enum ErStatus er_perm_from_values(const uint32_t *values, size_t len, struct ErPermutation **out);

size_t er_perm_degree(const struct ErPermutation *p);

// Copies the one-line values into `buf`, which must hold the degree.
enum ErStatus er_perm_values(const struct ErPermutation *p, uint32_t *buf, size_t len);

enum ErStatus er_perm_to_string(const struct ErPermutation *p, char **out);

bool er_perm_is_up_down(const struct ErPermutation *p);

bool er_perm_is_down_up(const struct ErPermutation *p);

enum ErStatus er_perm_complement(const struct ErPermutation *p, struct ErPermutation **out);

enum ErStatus er_perm_classify(const struct ErPermutation *p, struct ErClassification *out);

void er_perm_free(struct ErPermutation *p);

enum ErStatus er_swap_top_two(const struct ErPermutation *p, struct ErPermutation **out);

enum ErStatus er_maxmin_to_smu(const struct ErPermutation *p,
                               bool side,
                               struct ErPermutation **out);

enum ErStatus er_smu_to_maxmin(const struct ErPermutation *p,
                               struct ErPermutation **out,
                               bool *side);

enum ErStatus er_enum_new(size_t n, enum ErAltKind kind, struct ErEnumerator **out);

// Writes the next permutation into `buf` (length at least `n`). Returns
// `EXHAUSTED` once the stream is finished.
enum ErStatus er_enum_next(struct ErEnumerator *e, uint32_t *buf, size_t len);

void er_enum_free(struct ErEnumerator *e);

// `E_n` as a decimal string.
enum ErStatus er_euler_number(size_t n, char **out);

enum ErStatus er_e_up(size_t n, char **out);

enum ErStatus er_e_down(size_t n, char **out);

// `E↖_n` for even `n`.
enum ErStatus er_e_nw(size_t n, char **out);

enum ErStatus er_e_ne_nw(size_t n, char **ne, char **nw);

// Brute-force counts for degree `n` as a JSON object with decimal
// strings: `{"n":..,"E":..,"Ene":..,"Enw":..,"Eup":..,"Edown":..,"Dup":..,"Ddown":..}`.
enum ErStatus er_count_refinements(size_t n, char **out);

// Formula-only even-degree identity checks up to `n_max`. `passed`
// receives the overall verdict; `report_json` (optional, may be null)
// receives the full report.
enum ErStatus er_theorem_check(size_t n_max, bool *passed, char **report_json);

// Three-way verification (enumeration, formula, EGF); see `euler-refine verify`.
enum ErStatus er_verify(size_t max_n, size_t egf_order, bool *passed, char **report_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EULER_REFINE_H */
