#ifndef FRECHET_STEIN_H
#define FRECHET_STEIN_H

/* Generated by cbindgen from frechet-stein-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every call across the boundary.
 */
typedef enum FsStatus {
  FS_STATUS_OK = 0,
  FS_STATUS_NULL_POINTER = 1,
  FS_STATUS_INVALID_ARGUMENT = 2,
  FS_STATUS_NO_BRACKET = 3,
  FS_STATUS_NON_CONVERGENCE = 4,
  FS_STATUS_PANIC = 5,
} FsStatus;

/**
 * Norming rule selector.
 */
typedef enum FsNorming {
  /**
   * Canonical closed-form scale (`n^{1/alpha}` where available).
   */
  FS_NORMING_PAPER = 0,
  /**
   * Solve `-log F(a_n) = 1/n`.
   */
  FS_NORMING_QUANTILE = 1,
} FsNorming;

/**
 * Opaque parent-law handle (Pareto, Burr, or Fréchet parent).
 */
typedef struct FsLaw FsLaw;

/**
 * Opaque handle for the law of the renormalized maximum `W_n`.
 */
typedef struct FsNormedMax FsNormedMax;

/**
 * Opaque reproducible uniform random stream.
 */
typedef struct FsRng FsRng;

/**
 * Flat mirror of the per-n convergence record. Fields that do not apply
 * (or whose computation failed) are NaN.
 */
typedef struct FsRateReport {
  double alpha;
  uint64_t n;
  double a_n;
  double delta_quad;
  double delta_mc;
  double delta_mc_stderr;
  double kolmogorov;
  double ks_argmax;
  double paper_bound;
  double density_sup;
  double r_n;
} FsRateReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Pareto parent `F(x) = 1 - x^{-alpha}` on `x >= 1`.
 */
enum FsStatus fs_law_pareto(double alpha, struct FsLaw **out);

/**
 * Burr parent `F(x) = 1 - (1 + x^c)^{-k}`; tail index `c * k`.
 */
enum FsStatus fs_law_burr(double c, double k, struct FsLaw **out);

/**
 * The Fréchet law as its own parent (max-stable control case).
 */
enum FsStatus fs_law_frechet(double alpha, struct FsLaw **out);

/**
 * Release a law handle. A null pointer is a no-op.
 */
void fs_law_free(struct FsLaw *law);

/**
 * Tail index of the attracting Fréchet law.
 */
enum FsStatus fs_law_alpha(const struct FsLaw *law, double *out);

enum FsStatus fs_law_cdf(const struct FsLaw *law, double x, double *out);

enum FsStatus fs_law_pdf(const struct FsLaw *law, double x, double *out);

enum FsStatus fs_law_quantile(const struct FsLaw *law, double p, double *out);

/**
 * Gnedenko's tail function `L(t) = -t^alpha log F(t)`.
 */
enum FsStatus fs_law_slow_variation(const struct FsLaw *law, double t, double *out);

/**
 * Build the law of `W_n = M_n / a_n` for the given parent and sample size.
 */
enum FsStatus fs_normed_new(const struct FsLaw *law,
                            uint64_t n,
                            enum FsNorming mode,
                            struct FsNormedMax **out);

/**
 * Release a renormalized-maximum handle. A null pointer is a no-op.
 */
void fs_normed_free(struct FsNormedMax *nm);

/**
 * The scale constant `a_n`.
 */
enum FsStatus fs_normed_scale(const struct FsNormedMax *nm, double *out);

enum FsStatus fs_normed_cdf(const struct FsNormedMax *nm, double x, double *out);

enum FsStatus fs_normed_pdf(const struct FsNormedMax *nm, double x, double *out);

/**
 * Score function `(log f_n)'` on the open support.
 */
enum FsStatus fs_normed_score(const struct FsNormedMax *nm, double x, double *out);

enum FsStatus fs_normed_quantile(const struct FsNormedMax *nm, double p, double *out);

/**
 * One draw of `W_n` from the supplied stream.
 */
enum FsStatus fs_normed_sample(const struct FsNormedMax *nm, struct FsRng *rng, double *out);

/**
 * A reproducible uniform stream keyed by `(seed, stream_id)`.
 */
enum FsStatus fs_rng_new(uint64_t seed, uint64_t stream_id, struct FsRng **out);

/**
 * Release a stream handle. A null pointer is a no-op.
 */
void fs_rng_free(struct FsRng *rng);

/**
 * Uniform draw on the open interval (0, 1).
 */
enum FsStatus fs_rng_uniform(struct FsRng *rng, double *out);

/**
 * Fréchet target cdf `exp(-x^{-alpha})`.
 */
enum FsStatus fs_frechet_cdf(double alpha, double x, double *out);

/**
 * Fréchet target density.
 */
enum FsStatus fs_frechet_pdf(double alpha, double x, double *out);

/**
 * Fréchet target quantile `(-ln p)^{-1/alpha}`.
 */
enum FsStatus fs_frechet_quantile(double alpha, double p, double *out);

/**
 * Value at `x` of the Stein-equation solution for the indicator of
 * `(-inf, t]`; bounded by `1/alpha` in absolute value.
 */
enum FsStatus fs_stein_indicator_value(double alpha, double t, double x, double *out);

/**
 * The Stein bound `E|1 - W^alpha((alpha+1)/alpha + W rho_n(W)/alpha)|`
 * by adaptive quadrature at oracle tolerances.
 */
enum FsStatus fs_delta_quadrature(const struct FsNormedMax *nm, double *out);

/**
 * Closed form `2/(n-1) (1-1/n)^n` of the Stein bound for Pareto parents.
 */
enum FsStatus fs_delta_pareto_exact(uint64_t n, double *out);

/**
 * Monte Carlo estimate of the Stein bound with standard error; bitwise
 * reproducible for any worker count.
 */
enum FsStatus fs_delta_monte_carlo(const struct FsNormedMax *nm,
                                   uint64_t samples,
                                   uint64_t seed,
                                   uint32_t workers,
                                   double *out_estimate,
                                   double *out_stderr);

/**
 * Kolmogorov distance between `W_n` and its Fréchet target, with argmax.
 */
enum FsStatus fs_kolmogorov_distance(const struct FsNormedMax *nm,
                                     size_t grid,
                                     double *out_distance,
                                     double *out_argmax);

/**
 * Sup distance between the density of `W_n` and the Fréchet density.
 */
enum FsStatus fs_density_sup_distance(const struct FsNormedMax *nm,
                                      size_t grid,
                                      double *out_distance,
                                      double *out_argmax);

/**
 * The local-limit functional `E[phi_u(W_n)]` controlling density
 * convergence.
 */
enum FsStatus fs_local_limit_functional(const struct FsNormedMax *nm, double u, double *out);

/**
 * Slow-variation remainder surrogate at scale `a_n` with the default
 * probe multipliers.
 */
enum FsStatus fs_remainder_estimate(const struct FsLaw *law, double scale, double *out);

/**
 * Run every rate quantity for one `(law, n)` and fill the flat report.
 * Failed sub-computations leave NaN in their fields; the call still
 * returns `FS_STATUS_OK` as long as the norming constant exists.
 */
enum FsStatus fs_rate_report(const struct FsLaw *law,
                             uint64_t n,
                             enum FsNorming mode,
                             uint64_t mc_samples,
                             uint64_t mc_seed,
                             uint32_t mc_workers,
                             struct FsRateReport *out);

/**
 * Static name for a status code, for error messages on the C side.
 */
const char *fs_status_name(enum FsStatus status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FRECHET_STEIN_H */
