#ifndef FREUDENTHAL_H
#define FREUDENTHAL_H

#include <stdbool.h>
#include <stdint.h>

/**
 * Result codes shared by every entry point.
 */
typedef enum FdStatus {
  FD_STATUS_OK = 0,
  FD_STATUS_NULL_POINTER = 1,
  FD_STATUS_INVALID_UTF8 = 2,
  FD_STATUS_PARSE = 3,
  FD_STATUS_DOMAIN = 4,
  FD_STATUS_PANIC = 5,
} FdStatus;

/**
 * An Albert-algebra element.
 */
typedef struct FdJordan FdJordan;

/**
 * A Freudenthal-space element.
 */
typedef struct FdW FdW;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Human-readable message for the last failed call on this thread, or NULL.
 * The pointer stays valid until the next failing call on the same thread.
 */
const char *fd_last_error(void);

/**
 * # Safety
 * `s` is NULL or a string returned by this library and not yet freed.
 */
void fd_string_free(char *s);

/**
 * Parses `{"a", "b", "c", "d"}`; `algebra` may be NULL for `theta0`.
 *
 * # Safety
 * String arguments are NULL or NUL-terminated; `out` is valid for a write.
 */
enum FdStatus fd_w_from_json(const char *json, const char *algebra, struct FdW **out);

/**
 * # Safety
 * `w` is NULL or a handle from [`fd_w_from_json`] not yet freed.
 */
void fd_w_free(struct FdW *w);

/**
 * # Safety
 * `w` is a live handle; `out` is valid for a write.
 */
enum FdStatus fd_w_to_json(const struct FdW *w, char **out);

/**
 * # Safety
 * `w` is a live handle; `out` is valid for a write.
 */
enum FdStatus fd_w_rank(const struct FdW *w, uint8_t *out);

/**
 * The quartic form as a rational string such as `"-4"` or `"3/2"`.
 *
 * # Safety
 * `w` is a live handle; `out` is valid for a write.
 */
enum FdStatus fd_w_quartic(const struct FdW *w, char **out);

/**
 * # Safety
 * `x`, `y` are live handles; `out` is valid for a write.
 */
enum FdStatus fd_w_symp(const struct FdW *x, const struct FdW *y, char **out);

/**
 * # Safety
 * `w` is a live handle; `out` is valid for a write.
 */
enum FdStatus fd_w_content(const struct FdW *w, uint64_t *out);

/**
 * `a_θ(ω)` for an integral element over the octonion order.
 *
 * # Safety
 * `w` is a live handle; `out` is valid for a write.
 */
enum FdStatus fd_a_theta(const struct FdW *w, uint64_t *out);

/**
 * E₇ pullback coefficient of an element over `hurwitz`; `complete` may be NULL.
 *
 * # Safety
 * `w` is a live handle; `value` is valid for a write; `complete` is NULL or valid.
 */
enum FdStatus fd_e7_pullback(const struct FdW *w, uint64_t height, uint64_t *value, bool *complete);

/**
 * E₆ pullback coefficient of an element over `gauss`; `complete` may be NULL.
 *
 * # Safety
 * `w` is a live handle; `value` is valid for a write; `complete` is NULL or valid.
 */
enum FdStatus fd_e6_pullback(const struct FdW *w, uint64_t height, uint64_t *value, bool *complete);

/**
 * Parses `{"algebra", "diag", "off"}` or a bare rational; `algebra` may be NULL.
 *
 * # Safety
 * String arguments are NULL or NUL-terminated; `out` is valid for a write.
 */
enum FdStatus fd_jordan_from_json(const char *json, const char *algebra, struct FdJordan **out);

/**
 * # Safety
 * `x` is NULL or a handle from [`fd_jordan_from_json`] not yet freed.
 */
void fd_jordan_free(struct FdJordan *x);

/**
 * # Safety
 * `x` is a live handle; `out` is valid for a write.
 */
enum FdStatus fd_jordan_norm(const struct FdJordan *x, char **out);

/**
 * # Safety
 * `x` is a live handle; `out` is valid for a write.
 */
enum FdStatus fd_jordan_adjoint(const struct FdJordan *x, char **out);

/**
 * # Safety
 * `x` is a live handle; `out` is valid for a write.
 */
enum FdStatus fd_jordan_rank(const struct FdJordan *x, uint8_t *out);

/**
 * `K_v(y)` for `y > 0`.
 *
 * # Safety
 * `out` is valid for a write.
 */
enum FdStatus fd_kbessel(double v, double y, double *out);

/**
 * Runs the command-line front end on `argv[0..argc]` (without the program name).
 * `stdout_json` receives the output text; `exit_code` the process status it would exit with.
 *
 * # Safety
 * `argv` holds `argc` NUL-terminated strings; the outputs are valid for writes.
 */
enum FdStatus fd_cli_run(const char *const *argv, int argc, char **stdout_json, int *exit_code);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FREUDENTHAL_H */
