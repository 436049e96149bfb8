#ifndef QHALL_H
#define QHALL_H

/* Generated by cbindgen from crates/qhall-ffi; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible function.
 */
typedef enum QhallStatus {
  QHALL_STATUS_OK = 0,
  QHALL_STATUS_NULL_POINTER = 1,
  QHALL_STATUS_INVALID_UTF8 = 2,
  QHALL_STATUS_INVALID_ARGUMENT = 3,
  QHALL_STATUS_CONFIG = 4,
  QHALL_STATUS_COMPUTE = 5,
  /**
   * The computation ran but a requested check failed; the JSON result is still set.
   */
  QHALL_STATUS_CHECK_FAILED = 6,
  QHALL_STATUS_PANIC = 7,
} QhallStatus;

/**
 * Opaque session handle.
 */
typedef struct QhallSession QhallSession;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread. Valid until the next call.
 */
const char *qhall_last_error(void);

/**
 * Session for a built-in preset (`A2`, `A2-rev`, `A3`, `A1xA1`, `B2`, `G2`).
 * `field == 0` and `cap == 0` select the defaults.
 *
 * # Safety
 * `name` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum QhallStatus qhall_session_new_preset(const char *name,
                                          uint64_t field,
                                          size_t cap,
                                          struct QhallSession **out);

/**
 * Session from a JSON config document (same format as the command-line `--config` file).
 *
 * # Safety
 * `json` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum QhallStatus qhall_session_new_config(const char *json,
                                          uint64_t field,
                                          size_t cap,
                                          struct QhallSession **out);

/**
 * # Safety
 * `session` must come from a `qhall_session_new_*` call and not be used afterwards.
 */
void qhall_session_free(struct QhallSession *session);

/**
 * # Safety
 * `s` must come from this library, or be null.
 */
void qhall_string_free(char *s);

/**
 * Euler form `⟨a, b⟩` of two dimension vectors of length `len`.
 *
 * # Safety
 * `a` and `b` must point to `len` integers; `out` must be valid.
 */
enum QhallStatus qhall_euler(const struct QhallSession *session,
                             const int64_t *a,
                             const int64_t *b,
                             size_t len,
                             int64_t *out);

/**
 * Hall number `g^l_{mn}` for class keys such as `"1.1#0"`.
 *
 * # Safety
 * String arguments must be valid NUL-terminated strings; `out` must be valid.
 */
enum QhallStatus qhall_hall_number(const struct QhallSession *session,
                                   const char *l,
                                   const char *m,
                                   const char *n,
                                   uint64_t *out);

/**
 * Runs one command of the `qhall` command line against the session's configuration.
 * `args_json` is a JSON array of strings, e.g. `["hall-mul", "--a", "1.0#0", "--b", "0.1#0"]`;
 * the session's field and cap apply unless the arguments override them.
 * On `QHALL_STATUS_OK` or `QHALL_STATUS_CHECK_FAILED`, `*out_json` receives the JSON result.
 *
 * # Safety
 * `args_json` must be a valid NUL-terminated string; `out_json` must be valid.
 */
enum QhallStatus qhall_run(const struct QhallSession *session,
                           const char *args_json,
                           char **out_json);

/**
 * Runs acceptance criteria (`"all"` or a comma-separated list of numbers) and returns
 * the JSON reports.
 *
 * # Safety
 * `suite` must be a valid NUL-terminated string; `out_json` must be valid.
 */
enum QhallStatus qhall_verify(const char *suite, bool include_g2, char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QHALL_H */
