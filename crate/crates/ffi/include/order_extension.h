#ifndef ORDER_EXTENSION_H
#define ORDER_EXTENSION_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum OeStatus {
  OE_STATUS_OK = 0,
  OE_STATUS_NULL_POINTER = 1,
  OE_STATUS_INVALID_INPUT = 2,
  OE_STATUS_NO_EXTENSION = 3,
  OE_STATUS_PRECONDITION = 4,
  OE_STATUS_CAPACITY = 5,
  OE_STATUS_BUFFER_TOO_SMALL = 6,
  OE_STATUS_PANIC = 7,
} OeStatus;

/**
 * Opaque parsed problem.
 */
typedef struct OeProblem OeProblem;

typedef struct OeCheckReport {
  bool exists;
  bool in_sigma;
  bool in_sigma_star;
  bool maximal_in_sigma;
  bool maximal_in_sigma_star;
  bool unique;
  /**
   * Length of the cycle certificate; zero when an extension exists.
   */
  size_t certificate_len;
} OeCheckReport;

/**
 * Library version as a static NUL-terminated string.
 */
const char *oe_version(void);

/**
 * Copies the calling thread's last error message, NUL-terminated, into
 * `buf`. Returns the buffer size needed including the terminator; the copy
 * is truncated when `cap` is smaller.
 *
 * # Safety
 * `buf` must be null or valid for `cap` bytes.
 */
size_t oe_last_error_message(char *buf, size_t cap);

/**
 * Parses a problem file held in a NUL-terminated UTF-8 string.
 *
 * # Safety
 * `text` must be null or a valid C string; `out` must be null or valid for
 * one pointer write.
 */
enum OeStatus oe_problem_parse(const char *text, struct OeProblem **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `p` must be null or a handle from `oe_problem_parse` not yet freed.
 */
void oe_problem_free(struct OeProblem *p);

/**
 * Number of elements in the universe; 0 for a null handle.
 *
 * # Safety
 * `p` must be null or a live handle.
 */
size_t oe_problem_size(const struct OeProblem *p);

/**
 * Copies the label of element `index` as a NUL-terminated string.
 * `needed` receives the size including the terminator.
 *
 * # Safety
 * `p` must be a live handle, `buf` valid for `cap` bytes, `needed` null or
 * writable.
 */
enum OeStatus oe_problem_label(const struct OeProblem *p,
                               size_t index,
                               char *buf,
                               size_t cap,
                               size_t *needed);

/**
 * Membership, maximality, existence and uniqueness for a problem with a
 * partition. When no extension exists the cycle certificate is written to
 * `certificate` as element indices.
 *
 * # Safety
 * `p` must be a live handle, `report` writable, `certificate` null or
 * valid for `cap` elements.
 */
enum OeStatus oe_check(const struct OeProblem *p,
                       struct OeCheckReport *report,
                       size_t *certificate,
                       size_t cap);

/**
 * Writes one extension as a rank per element, 0 for the lowest block.
 * Without a partition the extension is linear; the forced pair, if any,
 * is honoured.
 *
 * # Safety
 * `p` must be a live handle and `ranks` valid for `cap` elements.
 */
enum OeStatus oe_extend(const struct OeProblem *p, size_t *ranks, size_t cap);

/**
 * Writes the intersection of all extensions as an `n*n` row-major 0/1
 * matrix.
 *
 * # Safety
 * `p` must be a live handle and `matrix` valid for `cap` bytes.
 */
enum OeStatus oe_intersection(const struct OeProblem *p, uint8_t *matrix, size_t cap);

/**
 * Counts the extensions by enumeration; subject to the enumeration cap.
 *
 * # Safety
 * `p` must be a live handle and `count` writable.
 */
enum OeStatus oe_count_extensions(const struct OeProblem *p, size_t *count);

#endif  /* ORDER_EXTENSION_H */
