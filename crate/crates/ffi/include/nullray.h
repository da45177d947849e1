#ifndef NULLRAY_H
#define NULLRAY_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every entry point.
 */
typedef enum NrStatus {
  NR_OK = 0,
  NR_NULL_POINTER = 1,
  NR_INVALID_ARGUMENT = 2,
  NR_UNSUPPORTED_ORDER = 3,
  NR_DOMAIN_ERROR = 4,
  NR_AXIS_SINGULARITY = 5,
  NR_QUADRATURE_FAILURE = 6,
  NR_CONFIG_ERROR = 7,
  NR_IO_ERROR = 8,
  NR_PANIC = 9,
} NrStatus;

/**
 * A wave mode u_{s,k}.
 */
typedef struct NrMode NrMode;

/**
 * A finished check report with its JSON rendering.
 */
typedef struct NrReport NrReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread; empty after a success.
 * The pointer stays valid until the next call on the same thread.
 */
const char *nr_last_error_message(void);

/**
 * J_ν(x) with ν = two_nu / 2.
 *
 * # Safety
 * `out` must be a valid pointer to a double.
 */
enum NrStatus nr_bessel_j(int64_t two_nu, double x, double *out);

/**
 * Creates the mode with helicity two_s / 2 and wave vector (kx, ky, kz).
 *
 * # Safety
 * `out` must be a valid pointer; the handle it receives is freed with [`nr_mode_free`].
 */
enum NrStatus nr_mode_new(int64_t two_s, double kx, double ky, double kz, struct NrMode **out);

/**
 * Releases a mode; null is ignored.
 *
 * # Safety
 * `mode` must come from [`nr_mode_new`] and not be used afterwards.
 */
void nr_mode_free(struct NrMode *mode);

/**
 * u_{s,k}(x, y, z).
 *
 * # Safety
 * `mode` must be a live handle and `re`, `im` valid pointers.
 */
enum NrStatus nr_mode_eval_u(const struct NrMode *mode,
                             double x,
                             double y,
                             double z,
                             double *re,
                             double *im);

/**
 * (V u_{s,k})(x, y, z) by ray quadrature.
 *
 * # Safety
 * `mode` must be a live handle and `re`, `im` valid pointers.
 */
enum NrStatus nr_mode_apply_v(const struct NrMode *mode,
                              double x,
                              double y,
                              double z,
                              double *re,
                              double *im);

/**
 * w_{s,(0,0,k)}(x, y, z) in closed form.
 *
 * # Safety
 * `re` and `im` must be valid pointers.
 */
enum NrStatus nr_eval_w(int64_t two_s,
                        double k,
                        double x,
                        double y,
                        double z,
                        double *re,
                        double *im);

/**
 * Writes a CSV grid; `plane` is "xz" or "xy", `quantity` one of "re", "im", "abs", "phase".
 *
 * # Safety
 * The string arguments must be valid NUL-terminated strings.
 */
enum NrStatus nr_grid_write(int64_t two_s,
                            double k,
                            const char *plane,
                            double extent,
                            size_t n,
                            const char *quantity,
                            const char *path);

/**
 * Runs the comma-separated `suites` ("all" for every suite) under `profile`.
 *
 * # Safety
 * String arguments must be valid NUL-terminated strings and `out` a valid
 * pointer; the report is freed with [`nr_report_free`].
 */
enum NrStatus nr_report_run(const char *suites,
                            const char *profile,
                            uint64_t seed,
                            struct NrReport **out);

/**
 * Number of passed checks; 0 for a null handle.
 *
 * # Safety
 * `report` must be null or a live handle.
 */
size_t nr_report_passed(const struct NrReport *report);

/**
 * Number of failed checks; 0 for a null handle.
 *
 * # Safety
 * `report` must be null or a live handle.
 */
size_t nr_report_failed(const struct NrReport *report);

/**
 * JSON text of the report, owned by the handle; null for a null handle.
 *
 * # Safety
 * `report` must be null or a live handle.
 */
const char *nr_report_json(const struct NrReport *report);

/**
 * Releases a report; null is ignored.
 *
 * # Safety
 * `report` must come from [`nr_report_run`] and not be used afterwards.
 */
void nr_report_free(struct NrReport *report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NULLRAY_H */
