/* Copyright (c) the eipe authors.
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to the exact integrated positional encoding library.  All
 * functions return a status code; outputs are written through caller-owned
 * pointers.  Frustum regions are held behind an opaque handle.  Encoding
 * buffers use the documented layout: the sin block (octave-major, axis-minor)
 * followed by the cos block, 6L doubles for L octaves.
 */

#ifndef EIPE_EIPE_H
#define EIPE_EIPE_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum eipe_status {
    EIPE_OK = 0,
    EIPE_ERR_INVALID_ARGUMENT = 1, /* non-finite or malformed input */
    EIPE_ERR_DOMAIN = 2,           /* parameter outside its documented range */
    EIPE_ERR_ORIENTATION = 3,      /* surface wound inward / non-positive volume */
    EIPE_ERR_NONCONVEX = 4,        /* sampling oracle requires a convex region */
    EIPE_ERR_COVARIANCE = 5,       /* covariance not symmetric PSD within tolerance */
    EIPE_ERR_INTERNAL = 6          /* guarded computation left its proven bounds */
} eipe_status;

/* Stable name for a status code, e.g. "EIPE_ERR_DOMAIN". */
const char* eipe_status_name(eipe_status s);

/* Library version as "major.minor.patch". */
const char* eipe_version(void);

/* ---- regions ---------------------------------------------------------- */

typedef struct eipe_frustum eipe_frustum;

/* 24 doubles: vertices 0-3 near face then 4-7 far face, each x y z, corner
 * order (+,+), (+,-), (-,-), (-,+) seen from the camera. */
eipe_status eipe_frustum_from_vertices(const double vertices[24], eipe_frustum** out);

/* Pixel frustum from a pose: R row-major, dir_cam a camera-space direction
 * with z component 1, pixel side omega, ray extent [t_near, t_far). */
eipe_status eipe_frustum_from_pose(const double R[9], const double o[3], double omega,
                                   const double dir_cam[3], double t_near, double t_far,
                                   eipe_frustum** out);

void eipe_frustum_free(eipe_frustum* f);

eipe_status eipe_frustum_vertices(const eipe_frustum* f, double out[24]);
eipe_status eipe_frustum_volume(const eipe_frustum* f, double* out);
eipe_status eipe_frustum_centroid(const eipe_frustum* f, double out[3]);

/* Scene-contracted copy (vertices mapped through eipe_contract_point). */
eipe_status eipe_frustum_contract(const eipe_frustum* f, eipe_frustum** out);

void eipe_contract_point(const double x[3], double out[3]);

/* ---- encoders --------------------------------------------------------- */

typedef struct eipe_guard_stats {
    /* Per axis: distinct coordinate values merged by the 1e-6 guard, and
     * triangle/axis pairs dispatched to a coincident-node branch. */
    uint32_t snapped[3];
    uint32_t dispatched[3];
} eipe_guard_stats;

/* Exact mean encoding of the frustum over `octaves` octaves into out[6L].
 * guard_on != 0 enables the degeneracy guard (snap + clamp); stats may be
 * NULL. */
eipe_status eipe_encode_exact(const eipe_frustum* f, int octaves, int guard_on, double* out,
                              eipe_guard_stats* stats);

/* Pointwise positional encoding of x. */
eipe_status eipe_encode_point(const double x[3], int octaves, double* out);

/* Gaussian moments of the cone frustum around o + t d with perpendicular
 * radius r_dot * t, t in [t0, t1]. sigma is row-major. */
eipe_status eipe_cone_gaussian(const double d[3], const double o[3], double r_dot, double t0,
                               double t1, double mu[3], double sigma[9]);

/* Linearized contraction of a Gaussian (mean through the contraction,
 * covariance through its Jacobian). */
eipe_status eipe_contract_gaussian(const double mu[3], const double sigma[9], double mu_out[3],
                                   double sigma_out[9]);

/* Expected encoding under a Gaussian (mean encoding damped by the covariance
 * diagonal per octave). */
eipe_status eipe_encode_gaussian(const double mu[3], const double sigma[9], int octaves,
                                 double* out);

/* Closed-form exact encoding of the on-axis square pyramidal frustum of a
 * pose; axis_fell_back (may be NULL) reports axes that hit a small
 * denominator and were computed by the general path. */
eipe_status eipe_encode_square_pyramid(const double R[9], const double o[3], double omega,
                                       double t0, double t1, int octaves, double* out,
                                       int axis_fell_back[3]);

/* float32 narrowing of an encoding buffer. */
void eipe_narrow_f32(const double* in, size_t n, float* out);

/* ---- Monte-Carlo reference ------------------------------------------- */

/* Mean encoding by uniform sampling; writes mean[6L] and the per-component
 * standard error to std_error[6L] (std_error may be NULL).  Byte-identical
 * for any jobs count. */
eipe_status eipe_mc_encoding(const eipe_frustum* f, int octaves, uint64_t n, uint64_t seed,
                             int jobs, double* mean, double* std_error);

/* Monte-Carlo cone moments; mu_se/sigma_se (may be NULL) receive batch-means
 * standard errors. */
eipe_status eipe_mc_moments(const double d[3], const double o[3], double r_dot, double t0,
                            double t1, uint64_t n, uint64_t seed, double mu[3], double sigma[9],
                            double mu_se[3], double sigma_se[9]);

/* ---- rendering -------------------------------------------------------- */

/* Writes n_intervals + 1 strictly increasing stratified distances to ts. */
eipe_status eipe_stratified_ts(double t_near, double t_far, int n_intervals, uint64_t seed,
                               double* ts);

/* Front-to-back compositing of n intervals: colors is n RGB triples in
 * [0,1], densities n non-negative values, ts the n+1 interval bounds. */
eipe_status eipe_composite(const double* colors, const double* densities, const double* ts,
                           int n, double rgb[3], double* transmittance);

/* ---- study corpora ---------------------------------------------------- */

/* Random convex pixel frustum (pure function of seed and index). */
eipe_status eipe_random_frustum(uint64_t seed, uint64_t index, double out_vertices[24]);

/* Contracted near-degenerate frustum that breaks the unguarded coefficient
 * formula (pure function of seed and index). */
eipe_status eipe_degenerate_frustum(uint64_t seed, uint64_t index, double out_vertices[24]);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* EIPE_EIPE_H */
