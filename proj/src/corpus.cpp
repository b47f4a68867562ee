// Copyright (c) the eipe authors.
// SPDX-License-Identifier: Apache-2.0

#include "eipe/corpus.hpp"

#include <cmath>
#include <numbers>

#include "eipe/rng.hpp"

namespace eipe {

namespace {

// Counter budget per region so the generators stay pure in (seed, index).
constexpr std::uint64_t kStride = 32;

Mat3 rotation_from_uniforms(double u1, double u2, double u3) {
    // Shoemake's map from the unit cube to uniform unit quaternions.
    const double two_pi = 2.0 * std::numbers::pi;
    double a = std::sqrt(1.0 - u1), b = std::sqrt(u1);
    double qx = a * std::sin(two_pi * u2);
    double qy = a * std::cos(two_pi * u2);
    double qz = b * std::sin(two_pi * u3);
    double qw = b * std::cos(two_pi * u3);
    double nrm = std::sqrt(qx * qx + qy * qy + qz * qz + qw * qw);
    qx /= nrm, qy /= nrm, qz /= nrm, qw /= nrm;
    return {{1 - 2 * (qy * qy + qz * qz), 2 * (qx * qy - qz * qw), 2 * (qx * qz + qy * qw),
             2 * (qx * qy + qz * qw), 1 - 2 * (qx * qx + qz * qz), 2 * (qy * qz - qx * qw),
             2 * (qx * qz - qy * qw), 2 * (qy * qz + qx * qw), 1 - 2 * (qx * qx + qy * qy)}};
}

double log_uniform(const CounterRng& rng, std::uint64_t c, double lo, double hi) {
    return std::exp(rng.uniform(c, std::log(lo), std::log(hi)));
}

}  // namespace

Mat3 random_rotation(std::uint64_t seed, std::uint64_t index) {
    CounterRng rng(seed, kStreamCorpus);
    std::uint64_t c = kStride * index;
    return rotation_from_uniforms(rng.u01(c), rng.u01(c + 1), rng.u01(c + 2));
}

Frustum random_convex_frustum(std::uint64_t seed, std::uint64_t index) {
    CounterRng rng(seed, kStreamCorpus);
    const std::uint64_t c = kStride * index;
    Mat3 R = rotation_from_uniforms(rng.u01(c), rng.u01(c + 1), rng.u01(c + 2));

    // Origin uniform in the ball of radius 2 (the contraction's codomain).
    double cos_th = rng.uniform(c + 3, -1.0, 1.0);
    double sin_th = std::sqrt(std::max(0.0, 1.0 - cos_th * cos_th));
    double phi = rng.uniform(c + 4, 0.0, 2.0 * std::numbers::pi);
    double rad = 2.0 * std::cbrt(rng.u01(c + 5));
    Vec3 o = {rad * sin_th * std::cos(phi), rad * sin_th * std::sin(phi), rad * cos_th};

    double mu_t = rng.uniform(c + 6, 0.5, 8.0);
    // Clip the length so t_near keeps a safe positive margin.
    double delta = std::min(log_uniform(rng, c + 7, 1e-3, 2.0), 1.8 * mu_t);
    double omega = log_uniform(rng, c + 8, 3e-3, 0.3);
    Vec3 dir = {rng.uniform(c + 9, -0.4, 0.4), rng.uniform(c + 10, -0.4, 0.4), 1.0};

    CameraPose pose(R, o, omega);
    return frustum_from_pixel(pose, dir, mu_t - delta / 2.0, mu_t + delta / 2.0);
}

Frustum degenerate_contracted_frustum(std::uint64_t seed, std::uint64_t index) {
    CounterRng rng(seed, kStreamDegenerateCorpus);
    const std::uint64_t c = kStride * index;

    // Thin axis-aligned frustum far along +z: after contraction its side and
    // cap faces carry coordinate triples that agree to ~omega*delta, i.e.
    // naturally near-degenerate.  Ranges keep the contracted extents (about
    // omega across, delta/mu_t^2 deep) above the guard threshold so snapping
    // thins but never flattens the region.
    double mu_t = rng.uniform(c, 3.0, 6.0);
    double delta = log_uniform(rng, c + 1, 2e-4, 1e-2);
    double omega = log_uniform(rng, c + 2, 1e-4, 1e-2);
    double jitter = log_uniform(rng, c + 3, 1e-11, 1e-8);

    CameraPose pose(Mat3::identity(), {0, 0, 0}, omega);
    Frustum f = contract_frustum(
        frustum_from_pixel(pose, {0, 0, 1}, mu_t - delta / 2.0, mu_t + delta / 2.0));

    // Inject sub-guard jitter on every coordinate: the degenerate triples now
    // differ by a nonzero amount far below the guard threshold, the shape is
    // otherwise unchanged.
    std::array<Vec3, 8> v = f.vertices();
    for (int i = 0; i < 8; ++i)
        for (int k = 0; k < 3; ++k)
            v[i][k] += jitter * rng.uniform(c + 4 + 3 * static_cast<std::uint64_t>(i) + k, -1.0, 1.0);
    return Frustum::from_vertices(v);
}

}  // namespace eipe
