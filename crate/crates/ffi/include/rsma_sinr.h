#ifndef RSMA_SINR_H
#define RSMA_SINR_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define RSMA_APPROX_LEMMA1 0

#define RSMA_APPROX_BASELINE 1

typedef enum RsmaStatus {
  RSMA_STATUS_OK = 0,
  RSMA_STATUS_NULL_POINTER = 1,
  RSMA_STATUS_INVALID_ARGUMENT = 2,
  RSMA_STATUS_DIMENSION_MISMATCH = 3,
  RSMA_STATUS_SINGULAR_GRAM = 4,
  RSMA_STATUS_DEGENERATE_Z = 5,
  RSMA_STATUS_NUMERICAL = 6,
  RSMA_STATUS_OUT_OF_RANGE = 7,
  RSMA_STATUS_PANIC = 99,
} RsmaStatus;

/**
 * Opaque scenario handle.
 */
typedef struct RsmaConfig RsmaConfig;

/**
 * Opaque rate report handle.
 */
typedef struct RsmaRateReport RsmaRateReport;

/**
 * Shape `D` and scale `Theta` of a Gamma law.
 */
typedef struct RsmaGammaParams {
  double shape;
  double scale;
} RsmaGammaParams;

/**
 * Closed-form moments of `X` and its second-moment terms.
 */
typedef struct RsmaMoments {
  double mean;
  double variance;
  double mu;
  double zeta1;
  double zeta2;
  double zeta3;
  double zeta4;
  double phi;
} RsmaMoments;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer is
 * valid until the next failing call on the same thread.
 */
const char *rsma_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *rsma_version(void);

/**
 * Uniform-SNR scenario. `snr_db = -INFINITY` gives zero transmit power.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
enum RsmaStatus rsma_config_new(size_t nt,
                                size_t k,
                                double epsilon,
                                double tau,
                                double snr_db,
                                struct RsmaConfig **out);

/**
 * Scenario whose correlation follows from user speed (m/s), carrier
 * frequency (Hz) and CSI delay (s) through the Jakes model.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
enum RsmaStatus rsma_config_from_mobility(size_t nt,
                                          size_t k,
                                          double velocity,
                                          double carrier_hz,
                                          double interval_s,
                                          double tau,
                                          double snr_db,
                                          struct RsmaConfig **out);

/**
 * Replaces the per-user SNRs; `snr_db` holds `len == K` values in dB.
 *
 * # Safety
 * `cfg` must be a live handle; `snr_db` must point to `len` readable doubles.
 */
enum RsmaStatus rsma_config_set_user_snr_db(struct RsmaConfig *cfg,
                                            const double *snr_db,
                                            size_t len);

/**
 * # Safety
 * `cfg` must be a live handle.
 */
enum RsmaStatus rsma_config_set_seed(struct RsmaConfig *cfg, uint64_t seed);

/**
 * # Safety
 * `cfg` must be a live handle.
 */
enum RsmaStatus rsma_config_set_trials(struct RsmaConfig *cfg, uint64_t trials);

/**
 * # Safety
 * `cfg` must be a live handle and `out` writable.
 */
enum RsmaStatus rsma_config_epsilon(const struct RsmaConfig *cfg, double *out);

/**
 * Set when the Jakes coefficient behind a mobility config was negative.
 *
 * # Safety
 * `cfg` must be a live handle and `out` writable.
 */
enum RsmaStatus rsma_config_epsilon_negative(const struct RsmaConfig *cfg, bool *out);

/**
 * Releases a configuration. Null is ignored.
 *
 * # Safety
 * `cfg` must be null or a handle not yet freed.
 */
void rsma_config_free(struct RsmaConfig *cfg);

/**
 * Monte Carlo sum rate over exact SINRs.
 *
 * # Safety
 * `cfg` must be a live handle and `out` writable.
 */
enum RsmaStatus rsma_mc_sum_rate(const struct RsmaConfig *cfg, struct RsmaRateReport **out);

/**
 * Gamma-surrogate private rates plus the Monte Carlo common rate.
 * `which` is `RSMA_APPROX_LEMMA1` or `RSMA_APPROX_BASELINE`.
 *
 * # Safety
 * `cfg` must be a live handle and `out` writable.
 */
enum RsmaStatus rsma_approx_sum_rate(const struct RsmaConfig *cfg,
                                     int32_t which,
                                     struct RsmaRateReport **out);

/**
 * Private rate of user `k` (zero-based) for `X ~ Gamma(x)`.
 *
 * # Safety
 * `cfg` must be a live handle and `out` writable.
 */
enum RsmaStatus rsma_approx_private_rate(const struct RsmaConfig *cfg,
                                         size_t k,
                                         struct RsmaGammaParams x,
                                         double *out);

/**
 * # Safety
 * `report` must be a live handle and `out` writable.
 */
enum RsmaStatus rsma_rate_report_sum_rate(const struct RsmaRateReport *report, double *out);

/**
 * # Safety
 * `report` must be a live handle and `out` writable.
 */
enum RsmaStatus rsma_rate_report_common_rate(const struct RsmaRateReport *report, double *out);

/**
 * Standard error of the sum rate (of the common rate for approximations).
 *
 * # Safety
 * `report` must be a live handle and `out` writable.
 */
enum RsmaStatus rsma_rate_report_sum_se(const struct RsmaRateReport *report, double *out);

/**
 * # Safety
 * `report` must be a live handle and `out` writable.
 */
enum RsmaStatus rsma_rate_report_num_users(const struct RsmaRateReport *report, size_t *out);

/**
 * # Safety
 * `report` must be a live handle and `out` writable.
 */
enum RsmaStatus rsma_rate_report_private_rate(const struct RsmaRateReport *report,
                                              size_t k,
                                              double *out);

/**
 * Releases a rate report. Null is ignored.
 *
 * # Safety
 * `report` must be null or a handle not yet freed.
 */
void rsma_rate_report_free(struct RsmaRateReport *report);

/**
 * Gamma surrogate for `X` including the cross-term variance.
 *
 * # Safety
 * `out` must be writable.
 */
enum RsmaStatus rsma_lemma1_params(size_t nt,
                                   size_t k,
                                   double epsilon,
                                   struct RsmaGammaParams *out);

/**
 * Gamma surrogate for `X` without the cross-term variance.
 *
 * # Safety
 * `out` must be writable.
 */
enum RsmaStatus rsma_baseline_params(size_t nt,
                                     size_t k,
                                     double epsilon,
                                     struct RsmaGammaParams *out);

/**
 * Gamma law of `Z`; `RSMA_STATUS_DEGENERATE_Z` when `K = 1` or `epsilon = 1`.
 *
 * # Safety
 * `out` must be writable.
 */
enum RsmaStatus rsma_z_params(size_t k, double epsilon, struct RsmaGammaParams *out);

/**
 * # Safety
 * `out` must be writable.
 */
enum RsmaStatus rsma_moment_report(size_t nt, size_t k, double epsilon, struct RsmaMoments *out);

/**
 * `E[log2(1 + s X)]` for `X ~ Gamma(params)`.
 *
 * # Safety
 * `out` must be writable.
 */
enum RsmaStatus rsma_gamma_log_expectation(struct RsmaGammaParams params, double s, double *out);

/**
 * # Safety
 * `out` must be writable.
 */
enum RsmaStatus rsma_bessel_j0(double x, double *out);

/**
 * Signed Jakes correlation `J0(2 pi f_D T)`.
 *
 * # Safety
 * `out` must be writable.
 */
enum RsmaStatus rsma_jakes_epsilon(double velocity,
                                   double carrier_hz,
                                   double interval_s,
                                   double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RSMA_SINR_H */
