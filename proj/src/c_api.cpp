// Copyright (c) the eipe authors.
// SPDX-License-Identifier: Apache-2.0

#include "eipe/eipe.h"

#include <cmath>
#include <cstring>
#include <exception>
#include <new>
#include <span>
#include <stdexcept>
#include <vector>

#include "eipe/baseline.hpp"
#include "eipe/corpus.hpp"
#include "eipe/errors.hpp"
#include "eipe/exact.hpp"
#include "eipe/geometry.hpp"
#include "eipe/oracle.hpp"
#include "eipe/render.hpp"

struct eipe_frustum {
    eipe::Frustum f;
};

namespace {

// Every entry point funnels through here so C callers always get a status
// code instead of an exception crossing the boundary.
template <class Fn>
eipe_status wrap(Fn&& fn) {
    try {
        fn();
        return EIPE_OK;
    } catch (const eipe::OrientationError&) {
        return EIPE_ERR_ORIENTATION;
    } catch (const eipe::NonConvexError&) {
        return EIPE_ERR_NONCONVEX;
    } catch (const eipe::CovarianceError&) {
        return EIPE_ERR_COVARIANCE;
    } catch (const eipe::ConsistencyError&) {
        return EIPE_ERR_INTERNAL;
    } catch (const std::invalid_argument&) {
        return EIPE_ERR_INVALID_ARGUMENT;
    } catch (const std::domain_error&) {
        return EIPE_ERR_DOMAIN;
    } catch (const std::bad_alloc&) {
        return EIPE_ERR_INTERNAL;
    } catch (...) {
        return EIPE_ERR_INTERNAL;
    }
}

eipe::Mat3 mat_from(const double m[9]) {
    eipe::Mat3 r;
    for (int i = 0; i < 9; ++i) r.m[i] = m[i];
    return r;
}

eipe::Vec3 vec_from(const double v[3]) { return {v[0], v[1], v[2]}; }

void mat_to(const eipe::Mat3& m, double out[9]) {
    for (int i = 0; i < 9; ++i) out[i] = m.m[i];
}

void vec_to(const eipe::Vec3& v, double out[3]) {
    out[0] = v.x;
    out[1] = v.y;
    out[2] = v.z;
}

void vertices_to(const eipe::Frustum& f, double out[24]) {
    for (int i = 0; i < 8; ++i) vec_to(f.vertex(i), out + 3 * i);
}

}  // namespace

extern "C" {

const char* eipe_status_name(eipe_status s) {
    switch (s) {
        case EIPE_OK: return "EIPE_OK";
        case EIPE_ERR_INVALID_ARGUMENT: return "EIPE_ERR_INVALID_ARGUMENT";
        case EIPE_ERR_DOMAIN: return "EIPE_ERR_DOMAIN";
        case EIPE_ERR_ORIENTATION: return "EIPE_ERR_ORIENTATION";
        case EIPE_ERR_NONCONVEX: return "EIPE_ERR_NONCONVEX";
        case EIPE_ERR_COVARIANCE: return "EIPE_ERR_COVARIANCE";
        case EIPE_ERR_INTERNAL: return "EIPE_ERR_INTERNAL";
    }
    return "EIPE_ERR_UNKNOWN";
}

const char* eipe_version(void) { return "0.1.0"; }

eipe_status eipe_frustum_from_vertices(const double vertices[24], eipe_frustum** out) {
    if (!vertices || !out) return EIPE_ERR_INVALID_ARGUMENT;
    return wrap([&] {
        *out = new eipe_frustum{eipe::Frustum::from_vertices(std::span<const double, 24>(vertices, 24))};
    });
}

eipe_status eipe_frustum_from_pose(const double R[9], const double o[3], double omega,
                                   const double dir_cam[3], double t_near, double t_far,
                                   eipe_frustum** out) {
    if (!R || !o || !dir_cam || !out) return EIPE_ERR_INVALID_ARGUMENT;
    return wrap([&] {
        eipe::CameraPose pose(mat_from(R), vec_from(o), omega);
        *out = new eipe_frustum{eipe::frustum_from_pixel(pose, vec_from(dir_cam), t_near, t_far)};
    });
}

void eipe_frustum_free(eipe_frustum* f) { delete f; }

eipe_status eipe_frustum_vertices(const eipe_frustum* f, double out[24]) {
    if (!f || !out) return EIPE_ERR_INVALID_ARGUMENT;
    return wrap([&] { vertices_to(f->f, out); });
}

eipe_status eipe_frustum_volume(const eipe_frustum* f, double* out) {
    if (!f || !out) return EIPE_ERR_INVALID_ARGUMENT;
    return wrap([&] {
        auto tris = eipe::triangulate(f->f);
        *out = eipe::volume(tris);
    });
}

eipe_status eipe_frustum_centroid(const eipe_frustum* f, double out[3]) {
    if (!f || !out) return EIPE_ERR_INVALID_ARGUMENT;
    return wrap([&] {
        auto tris = eipe::triangulate(f->f);
        vec_to(eipe::centroid(tris), out);
    });
}

eipe_status eipe_frustum_contract(const eipe_frustum* f, eipe_frustum** out) {
    if (!f || !out) return EIPE_ERR_INVALID_ARGUMENT;
    return wrap([&] { *out = new eipe_frustum{eipe::contract_frustum(f->f)}; });
}

void eipe_contract_point(const double x[3], double out[3]) {
    if (!x || !out) return;
    try {
        vec_to(eipe::contract_point(vec_from(x)), out);
    } catch (...) {
        out[0] = out[1] = out[2] = std::nan("");
    }
}

eipe_status eipe_encode_exact(const eipe_frustum* f, int octaves, int guard_on, double* out,
                              eipe_guard_stats* stats) {
    if (!f || !out) return EIPE_ERR_INVALID_ARGUMENT;
    return wrap([&] {
        auto tris = eipe::triangulate(f->f);
        eipe::GuardStats gs;
        eipe::Encoding enc =
            eipe::eipe(tris, octaves, eipe::EipeOptions{guard_on != 0}, stats ? &gs : nullptr);
        std::memcpy(out, enc.values().data(), enc.values().size() * sizeof(double));
        if (stats)
            for (int k = 0; k < 3; ++k) {
                stats->snapped[k] = gs.snapped[k];
                stats->dispatched[k] = gs.dispatched[k];
            }
    });
}

eipe_status eipe_encode_point(const double x[3], int octaves, double* out) {
    if (!x || !out) return EIPE_ERR_INVALID_ARGUMENT;
    return wrap([&] {
        eipe::Encoding enc = eipe::pe(vec_from(x), octaves);
        std::memcpy(out, enc.values().data(), enc.values().size() * sizeof(double));
    });
}

eipe_status eipe_cone_gaussian(const double d[3], const double o[3], double r_dot, double t0,
                               double t1, double mu[3], double sigma[9]) {
    if (!d || !o || !mu || !sigma) return EIPE_ERR_INVALID_ARGUMENT;
    return wrap([&] {
        eipe::GaussianRegion g = eipe::cone_moments(vec_from(d), vec_from(o), r_dot, t0, t1);
        vec_to(g.mu(), mu);
        mat_to(g.sigma(), sigma);
    });
}

eipe_status eipe_contract_gaussian(const double mu[3], const double sigma[9], double mu_out[3],
                                   double sigma_out[9]) {
    if (!mu || !sigma || !mu_out || !sigma_out) return EIPE_ERR_INVALID_ARGUMENT;
    return wrap([&] {
        eipe::GaussianRegion g = eipe::contract_gaussian({vec_from(mu), mat_from(sigma)});
        vec_to(g.mu(), mu_out);
        mat_to(g.sigma(), sigma_out);
    });
}

eipe_status eipe_encode_gaussian(const double mu[3], const double sigma[9], int octaves,
                                 double* out) {
    if (!mu || !sigma || !out) return EIPE_ERR_INVALID_ARGUMENT;
    return wrap([&] {
        eipe::Encoding enc = eipe::gaussian_ipe({vec_from(mu), mat_from(sigma)}, octaves);
        std::memcpy(out, enc.values().data(), enc.values().size() * sizeof(double));
    });
}

eipe_status eipe_encode_square_pyramid(const double R[9], const double o[3], double omega,
                                       double t0, double t1, int octaves, double* out,
                                       int axis_fell_back[3]) {
    if (!R || !o || !out) return EIPE_ERR_INVALID_ARGUMENT;
    return wrap([&] {
        eipe::CameraPose pose(mat_from(R), vec_from(o), omega);
        eipe::SquarePyramidEncoding r = eipe::square_pyramid_eipe(pose, t0, t1, octaves);
        std::memcpy(out, r.enc.values().data(), r.enc.values().size() * sizeof(double));
        if (axis_fell_back)
            for (int k = 0; k < 3; ++k) axis_fell_back[k] = r.fell_back[k] ? 1 : 0;
    });
}

void eipe_narrow_f32(const double* in, size_t n, float* out) {
    if (!in || !out) return;
    for (size_t i = 0; i < n; ++i) out[i] = static_cast<float>(in[i]);
}

eipe_status eipe_mc_encoding(const eipe_frustum* f, int octaves, uint64_t n, uint64_t seed,
                             int jobs, double* mean, double* std_error) {
    if (!f || !mean) return EIPE_ERR_INVALID_ARGUMENT;
    return wrap([&] {
        eipe::OracleEstimate est = eipe::mc_encoding(f->f, octaves, n, seed, jobs);
        std::memcpy(mean, est.mean.data(), est.mean.size() * sizeof(double));
        if (std_error)
            std::memcpy(std_error, est.std_error.data(), est.std_error.size() * sizeof(double));
    });
}

eipe_status eipe_mc_moments(const double d[3], const double o[3], double r_dot, double t0,
                            double t1, uint64_t n, uint64_t seed, double mu[3], double sigma[9],
                            double mu_se[3], double sigma_se[9]) {
    if (!d || !o || !mu || !sigma) return EIPE_ERR_INVALID_ARGUMENT;
    return wrap([&] {
        eipe::MomentEstimate est = eipe::mc_moments(vec_from(d), vec_from(o), r_dot, t0, t1, n, seed);
        vec_to(est.mean, mu);
        mat_to(est.cov, sigma);
        if (mu_se) vec_to(est.mean_se, mu_se);
        if (sigma_se) mat_to(est.cov_se, sigma_se);
    });
}

eipe_status eipe_stratified_ts(double t_near, double t_far, int n_intervals, uint64_t seed,
                               double* ts) {
    if (!ts) return EIPE_ERR_INVALID_ARGUMENT;
    return wrap([&] {
        eipe::RaySamples s = eipe::stratified_ts(t_near, t_far, n_intervals, seed);
        std::memcpy(ts, s.ts.data(), s.ts.size() * sizeof(double));
    });
}

eipe_status eipe_composite(const double* colors, const double* densities, const double* ts,
                           int n, double rgb[3], double* transmittance) {
    if (!colors || !densities || !ts || !rgb || !transmittance) return EIPE_ERR_INVALID_ARGUMENT;
    return wrap([&] {
        if (n < 1) throw std::invalid_argument("composite: need at least one interval");
        eipe::RaySamples ray;
        ray.ts.assign(ts, ts + n + 1);
        ray.t_near = ray.ts.front();
        ray.t_far = ray.ts.back();
        std::vector<eipe::IntervalRadiance> samples(n);
        for (int i = 0; i < n; ++i) {
            samples[i].color = vec_from(colors + 3 * i);
            samples[i].density = densities[i];
        }
        eipe::CompositeResult r = eipe::composite(samples, ray);
        vec_to(r.color, rgb);
        *transmittance = r.transmittance;
    });
}

eipe_status eipe_random_frustum(uint64_t seed, uint64_t index, double out_vertices[24]) {
    if (!out_vertices) return EIPE_ERR_INVALID_ARGUMENT;
    return wrap([&] { vertices_to(eipe::random_convex_frustum(seed, index), out_vertices); });
}

eipe_status eipe_degenerate_frustum(uint64_t seed, uint64_t index, double out_vertices[24]) {
    if (!out_vertices) return EIPE_ERR_INVALID_ARGUMENT;
    return wrap([&] { vertices_to(eipe::degenerate_contracted_frustum(seed, index), out_vertices); });
}

}  // extern "C"
